//! `key = value` experiment specs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Frs,
    Derivative,
    Multiplicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Decoder {
    Linear,
    Hensel,
    Oracle,
    /// Random-lines local correction.
    Local,
    /// Two-line local correction, `m = s = 2` only.
    Bivariate,
}

fn parse_enum<T: clap::ValueEnum>(key: &str, v: &str) -> CliResult<T> {
    T::from_str(v, true).map_err(|_| CliError::Usage(format!("unknown {key} '{v}'")))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(clap::ValueEnum::to_possible_value(self).unwrap().get_name())
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(clap::ValueEnum::to_possible_value(self).unwrap().get_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentSpec {
    pub family: Family,
    pub decoder: Decoder,
    pub q: u64,
    pub m: usize,
    /// `N` for FRS, `n` for derivative codes; unused for multiplicity codes.
    pub block_length: Option<usize>,
    pub k: Option<usize>,
    pub s: usize,
    pub d: Option<usize>,
    /// Corrupted columns, or points for multiplicity codes.
    pub errors: usize,
    pub trials: u64,
    pub seed: u64,
    pub budget: Option<u64>,
    pub threshold: Option<usize>,
    /// Local correction attempts per call.
    pub attempts: u32,
    /// Record wall time per trial; off keeps reports byte-stable.
    pub timing: bool,
}

const KEYS: &[&str] = &[
    "family", "decoder", "q", "m", "N", "n", "k", "s", "d", "errors", "trials", "seed", "budget", "threshold",
    "attempts", "timing",
];

fn num<T: FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| CliError::Usage(format!("bad value for {key}: '{v}'")))
}

impl FromStr for ExperimentSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(CliError::Usage(format!("line {}: unknown key '{k}'", lineno + 1)));
            }
            if kv.insert(k, v).is_some() {
                return Err(CliError::Usage(format!("line {}: duplicate key '{k}'", lineno + 1)));
            }
        }
        let need = |k: &str| kv.get(k).copied().ok_or_else(|| CliError::Usage(format!("missing key '{k}'")));
        let opt = |k: &str| kv.get(k).copied();
        if kv.contains_key("N") && kv.contains_key("n") {
            return Err(CliError::Usage("give only one of N and n".into()));
        }
        let spec = ExperimentSpec {
            family: parse_enum("family", need("family")?)?,
            decoder: parse_enum("decoder", need("decoder")?)?,
            q: num("q", need("q")?)?,
            m: num("m", need("m")?)?,
            block_length: opt("N").or(opt("n")).map(|v| num("N", v)).transpose()?,
            k: opt("k").map(|v| num("k", v)).transpose()?,
            s: num("s", need("s")?)?,
            d: opt("d").map(|v| num("d", v)).transpose()?,
            errors: opt("errors").map(|v| num("errors", v)).transpose()?.unwrap_or(0),
            trials: opt("trials").map(|v| num("trials", v)).transpose()?.unwrap_or(1),
            seed: opt("seed").map(|v| num("seed", v)).transpose()?.unwrap_or(0),
            budget: opt("budget").map(|v| num("budget", v)).transpose()?,
            threshold: opt("threshold").map(|v| num("threshold", v)).transpose()?,
            attempts: opt("attempts").map(|v| num("attempts", v)).transpose()?.unwrap_or(10),
            timing: opt("timing").map(|v| num("timing", v)).transpose()?.unwrap_or(false),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        let ok = match self.family {
            Family::Frs => matches!(self.decoder, Decoder::Linear | Decoder::Hensel | Decoder::Oracle),
            Family::Derivative => matches!(self.decoder, Decoder::Linear | Decoder::Oracle),
            Family::Multiplicity => matches!(self.decoder, Decoder::Local | Decoder::Bivariate),
        };
        if !ok {
            return Err(CliError::Usage(format!("decoder {} does not apply to {} codes", self.decoder, self.family)));
        }
        match self.family {
            Family::Frs | Family::Derivative if self.k.is_none() => Err(CliError::Usage("missing key 'k'".into())),
            Family::Derivative if self.block_length.is_none() => Err(CliError::Usage("missing key 'n'".into())),
            Family::Multiplicity if self.d.is_none() => Err(CliError::Usage("missing key 'd'".into())),
            _ => Ok(()),
        }
    }

    /// Canonical `key = value` text; parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = format!("family = {}\ndecoder = {}\nq = {}\nm = {}\n", self.family, self.decoder, self.q, self.m);
        if let Some(n) = self.block_length {
            let key = if self.family == Family::Frs { "N" } else { "n" };
            out += &format!("{key} = {n}\n");
        }
        if let Some(k) = self.k {
            out += &format!("k = {k}\n");
        }
        out += &format!("s = {}\n", self.s);
        if let Some(d) = self.d {
            out += &format!("d = {d}\n");
        }
        out += &format!("errors = {}\ntrials = {}\nseed = {}\n", self.errors, self.trials, self.seed);
        if let Some(b) = self.budget {
            out += &format!("budget = {b}\n");
        }
        if let Some(t) = self.threshold {
            out += &format!("threshold = {t}\n");
        }
        out += &format!("attempts = {}\ntiming = {}\n", self.attempts, self.timing);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRS: &str = "family = frs\ndecoder = linear\nq = 13\nm = 4\nN = 3\nk = 2\ns = 2\nerrors = 1\ntrials = 5\nseed = 9\n";

    #[test]
    fn parses_and_round_trips() {
        let s: ExperimentSpec = FRS.parse().unwrap();
        assert_eq!(s.block_length, Some(3));
        assert_eq!(s.attempts, 10);
        assert!(!s.timing);
        assert_eq!(s.to_text().parse::<ExperimentSpec>().unwrap(), s);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            format!("{FRS}bogus = 1\n"),
            format!("{FRS}q = 5\n"),
            FRS.replace("decoder = linear", "decoder = local"),
            FRS.replace("trials = 5", "trials = 0"),
            FRS.replace("k = 2\n", ""),
            FRS.replace("q = 13", "q = thirteen"),
            format!("{FRS}n = 3\n"),
        ] {
            assert!(matches!(bad.parse::<ExperimentSpec>(), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let s: ExperimentSpec = format!("# local run\n\n{FRS}timing = true # wall clock\n").parse().unwrap();
        assert!(s.timing);
    }
}
