//! Seeded Monte Carlo trials and their TSV/JSON reports.

use std::time::Instant;

use algcodes::channel::{corrupt_columns, random_mpoly, random_poly, trial_rng};
use algcodes::derivative::{der_encode, der_list_decode, der_threshold, DerParams};
use algcodes::error::Error;
use algcodes::frs::{frs_encode, FrsParams};
use algcodes::frs_decode::{frs_interp_degree, frs_threshold, list_decode, DecodeConfig, DecodeResult};
use algcodes::hensel::hensel_list_decode;
use algcodes::multiplicity::{
    bivariate_correct, local_correct, mult_encode, order_s_eval, CountingOracle, LocalConfig, MultParams,
};
use algcodes::oracle::{oracle_list_decode, EnumBudget};
use algcodes::par::{self, Exec};
use algcodes::poly::Poly;
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::spec::{Decoder, ExperimentSpec, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub success: bool,
    pub list_size: usize,
    pub queries: u64,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub spec: ExperimentSpec,
    /// `ok` or `budget_exceeded`.
    pub status: String,
    pub trials_requested: u64,
    pub trials_completed: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub mean_list_size: f64,
    pub max_list_size: usize,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub threshold: Option<usize>,
    pub interp_degree: Option<usize>,
    pub alphabet_width: Option<usize>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub rows: Vec<TrialRow>,
    pub summary: Summary,
}

enum Setup {
    Frs { params: FrsParams, t: usize, d: usize },
    Der { params: DerParams, t: usize, d: usize },
    Mult { params: MultParams },
}

fn decode_cfg(spec: &ExperimentSpec) -> DecodeConfig {
    let mut cfg = DecodeConfig { exec: Exec::Sequential, ..Default::default() };
    if let Some(b) = spec.budget {
        cfg.prune_budget = b;
        cfg.node_budget = b;
    }
    cfg
}

fn enum_budget(spec: &ExperimentSpec) -> EnumBudget {
    let mut b = EnumBudget { exec: Exec::Sequential, ..Default::default() };
    if let Some(v) = spec.budget {
        b.max_messages = v;
    }
    b
}

fn setup(spec: &ExperimentSpec) -> CliResult<Setup> {
    spec.validate()?;
    let k = spec.k.unwrap_or(0);
    Ok(match spec.family {
        Family::Frs => {
            let params = match spec.block_length {
                Some(n) => FrsParams::with_block_length(spec.q, spec.m, n, k)?,
                None => FrsParams::new(spec.q, spec.m, k)?,
            };
            let d = frs_interp_degree(&params, spec.s)?;
            let t = spec.threshold.unwrap_or(frs_threshold(&params, spec.s)?);
            if spec.errors > params.block_length() {
                return Err(CliError::Usage(format!("{} errors exceed block length", spec.errors)));
            }
            Setup::Frs { params, t, d }
        }
        Family::Derivative => {
            let params = DerParams::new(spec.q, spec.block_length.unwrap(), spec.m, k)?;
            let d = algcodes::derivative::der_interp_degree(&params, spec.s)?;
            let t = spec.threshold.unwrap_or(der_threshold(&params, spec.s)?);
            if spec.errors > params.n() {
                return Err(CliError::Usage(format!("{} errors exceed block length", spec.errors)));
            }
            Setup::Der { params, t, d }
        }
        Family::Multiplicity => {
            let params = MultParams::new(spec.q, spec.m, spec.s, spec.d.unwrap())?;
            if spec.errors > params.n() {
                return Err(CliError::Usage(format!("{} errors exceed block length", spec.errors)));
            }
            if spec.decoder == Decoder::Bivariate && (spec.m != 2 || spec.s != 2) {
                return Err(CliError::Usage("bivariate decoder needs m = s = 2".into()));
            }
            Setup::Mult { params }
        }
    })
}

fn list_outcome(res: DecodeResult, msg: &Poly, t: usize) -> (bool, usize) {
    let kept: Vec<&Poly> = res.candidates.iter().filter(|c| c.agreement >= t).map(|c| &c.message).collect();
    (kept.contains(&msg), kept.len())
}

fn run_trial(spec: &ExperimentSpec, setup: &Setup, trial: u64) -> Result<TrialRow, Error> {
    let mut rng = trial_rng(spec.seed, trial);
    let start = Instant::now();
    let (success, list_size, queries) = match setup {
        Setup::Frs { params, t, .. } => {
            let msg = random_poly(params.k(), params.field(), &mut rng);
            let (y, _) = corrupt_columns(&frs_encode(params, &msg)?, spec.errors, params.field(), &mut rng)?;
            let (ok, size) = match spec.decoder {
                Decoder::Oracle => {
                    let list = oracle_list_decode(params, &y, *t, &enum_budget(spec))?;
                    (list.contains(&msg), list.len())
                }
                Decoder::Hensel => list_outcome(hensel_list_decode(params, &y, spec.s, &decode_cfg(spec))?, &msg, *t),
                _ => list_outcome(list_decode(params, &y, spec.s, &decode_cfg(spec))?, &msg, *t),
            };
            (ok, size, 0)
        }
        Setup::Der { params, t, .. } => {
            let msg = random_poly(params.k(), params.field(), &mut rng);
            let (y, _) = corrupt_columns(&der_encode(params, &msg)?, spec.errors, params.field(), &mut rng)?;
            let (ok, size) = match spec.decoder {
                Decoder::Oracle => {
                    let list = oracle_list_decode(params, &y, *t, &enum_budget(spec))?;
                    (list.contains(&msg), list.len())
                }
                _ => match der_list_decode(params, &y, spec.s, &decode_cfg(spec)) {
                    Ok(res) => list_outcome(res, &msg, *t),
                    Err(Error::ShiftRequired) => (false, 0),
                    Err(e) => return Err(e),
                },
            };
            (ok, size, 0)
        }
        Setup::Mult { params } => {
            let poly = random_mpoly(params, &mut rng);
            let (word, _) = corrupt_columns(&mult_encode(params, &poly)?, spec.errors, params.field(), &mut rng)?;
            let a = params.point_of(rng.gen_range(0..params.n()));
            let oracle = CountingOracle::new(params, &word)?;
            let cfg = LocalConfig { attempts: spec.attempts, ..Default::default() };
            let out = match spec.decoder {
                Decoder::Bivariate => bivariate_correct(params, &oracle, &a, &mut rng, &cfg)?,
                _ => local_correct(params, &oracle, &a, &mut rng, &cfg)?,
            };
            let want = order_s_eval(&poly, &a, params.s(), params.field())?;
            let produced = out.symbol.is_ok() as usize;
            (out.symbol.as_ref().is_ok_and(|s| *s == want), produced, oracle.queries())
        }
    };
    let micros = if spec.timing { start.elapsed().as_micros() as u64 } else { 0 };
    Ok(TrialRow { trial, success, list_size, queries, micros })
}

/// Runs every trial. A budget overrun stops the report at the failing trial
/// and marks it; any other error is returned.
pub fn run_experiment(spec: &ExperimentSpec, exec: Exec) -> CliResult<Report> {
    let setup = setup(spec)?;
    let results = par::map_range(exec, spec.trials, |i| run_trial(spec, &setup, i));
    let mut rows = Vec::with_capacity(results.len());
    let mut failure = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(row) => rows.push(row),
            Err(e @ Error::BudgetExceeded { .. }) => {
                failure = Some(format!("trial {i}: {e}"));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let n = rows.len() as u64;
    let successes = rows.iter().filter(|r| r.success).count() as u64;
    let mean = |v: u64| if n == 0 { 0.0 } else { v as f64 / n as f64 };
    let (threshold, interp_degree, alphabet_width) = match &setup {
        Setup::Frs { t, d, .. } | Setup::Der { t, d, .. } => (Some(*t), Some(*d), None),
        Setup::Mult { params } => (None, None, Some(params.w())),
    };
    let summary = Summary {
        spec: spec.clone(),
        status: if failure.is_some() { "budget_exceeded" } else { "ok" }.into(),
        trials_requested: spec.trials,
        trials_completed: n,
        successes,
        success_rate: mean(successes),
        mean_list_size: mean(rows.iter().map(|r| r.list_size as u64).sum()),
        max_list_size: rows.iter().map(|r| r.list_size).max().unwrap_or(0),
        mean_queries: mean(rows.iter().map(|r| r.queries).sum()),
        max_queries: rows.iter().map(|r| r.queries).max().unwrap_or(0),
        threshold,
        interp_degree,
        alphabet_width,
        failure,
    };
    Ok(Report { rows, summary })
}

impl Report {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("trial\tsuccess\tlist_size\tqueries\tmicros\n");
        for r in &self.rows {
            out += &format!("{}\t{}\t{}\t{}\t{}\n", r.trial, r.success as u8, r.list_size, r.queries, r.micros);
        }
        if let Some(f) = &self.summary.failure {
            out += &format!("# budget_exceeded: {f}\n");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn is_complete(&self) -> bool {
        self.summary.failure.is_none()
    }
}
