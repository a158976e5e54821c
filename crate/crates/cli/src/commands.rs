//! File-to-file subcommands.

use algcodes::channel::{corrupt_columns, trial_rng};
use algcodes::derivative::{der_encode, der_list_decode, der_threshold, DerParams};
use algcodes::frs::{frs_encode, FrsParams};
use algcodes::frs_decode::{frs_threshold, list_decode, DecodeConfig, DecodeResult, Diagnostics};
use algcodes::hensel::hensel_list_decode;
use algcodes::io;
use algcodes::multiplicity::{mult_encode, MultParams};
use algcodes::oracle::{oracle_list_decode, EnumBudget};
use algcodes::poly::Poly;

use crate::error::{CliError, CliResult};
use crate::spec::{Decoder, Family};

/// Code parameters as given on the command line.
#[derive(Clone, Debug, Default)]
pub struct CodeArgs {
    pub q: Option<u64>,
    pub m: Option<usize>,
    pub block_length: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub d: Option<usize>,
}

fn need<T: Copy>(v: Option<T>, name: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

impl CodeArgs {
    fn frs(&self) -> CliResult<FrsParams> {
        let (q, m, k) = (need(self.q, "q")?, need(self.m, "m")?, need(self.k, "k")?);
        Ok(match self.block_length {
            Some(n) => FrsParams::with_block_length(q, m, n, k)?,
            None => FrsParams::new(q, m, k)?,
        })
    }

    fn der(&self) -> CliResult<DerParams> {
        Ok(DerParams::new(need(self.q, "q")?, need(self.block_length, "n")?, need(self.m, "m")?, need(self.k, "k")?)?)
    }

    fn mult(&self) -> CliResult<MultParams> {
        Ok(MultParams::new(need(self.q, "q")?, need(self.m, "m")?, need(self.s, "s")?, need(self.d, "d")?)?)
    }
}

/// Message text to codeword text.
pub fn encode(family: Family, args: &CodeArgs, message: &str) -> CliResult<String> {
    Ok(match family {
        Family::Frs => {
            let p = args.frs()?;
            let msg = io::read_message(message, p.field())?;
            io::write_frs(&p, &frs_encode(&p, &msg)?)
        }
        Family::Derivative => {
            let p = args.der()?;
            let msg = io::read_message(message, p.field())?;
            io::write_der(&p, &der_encode(&p, &msg)?)
        }
        Family::Multiplicity => {
            let p = args.mult()?;
            let msg = io::read_mult_message(message, &p)?;
            io::write_mult(&p, &mult_encode(&p, &msg)?)
        }
    })
}

/// Replaces `errors` random columns (points) of a word file.
pub fn corrupt(family: Family, word: &str, errors: usize, seed: u64) -> CliResult<String> {
    let mut rng = trial_rng(seed, 0);
    Ok(match family {
        Family::Frs => {
            let (p, w) = io::read_frs(word)?;
            io::write_frs(&p, &corrupt_columns(&w, errors, p.field(), &mut rng)?.0)
        }
        Family::Derivative => {
            let (p, w) = io::read_der(word)?;
            io::write_der(&p, &corrupt_columns(&w, errors, p.field(), &mut rng)?.0)
        }
        Family::Multiplicity => {
            let (p, w) = io::read_mult(word)?;
            io::write_mult(&p, &corrupt_columns(&w, errors, p.field(), &mut rng)?.0)
        }
    })
}

#[derive(Clone, Debug)]
pub struct DecodeArgs {
    pub decoder: Decoder,
    pub s: usize,
    pub threshold: Option<usize>,
    pub budget: Option<u64>,
}

fn list_text(msgs: &[Poly], f: &algcodes::field::FieldCtx, diag: Option<&Diagnostics>, t: usize) -> String {
    let mut out = String::new();
    for m in msgs {
        out += &io::write_message(m, f);
    }
    out += &format!("# candidates = {}\n# threshold = {t}\n", msgs.len());
    if let Some(d) = diag {
        out += &format!(
            "# d = {}\n# constraint_rows = {}\n# unknowns = {}\n# dim = {}\n# free_coords = {}\n# enumerated = {}\n# nodes = {}\n# s_used = {}\n",
            d.d, d.constraint_rows, d.unknowns, d.dim, d.free_coords, d.enumerated, d.nodes, d.s_used
        );
        if let Some(b) = d.shift {
            out += &format!("# shift = {}\n", f.format_elem(b));
        }
    }
    out
}

fn kept(res: &DecodeResult, t: usize) -> Vec<Poly> {
    res.candidates.iter().filter(|c| c.agreement >= t).map(|c| c.message.clone()).collect()
}

/// Received-word text to list text.
pub fn decode(family: Family, word: &str, args: &DecodeArgs) -> CliResult<String> {
    let mut cfg = DecodeConfig::default();
    let mut budget = EnumBudget::default();
    if let Some(b) = args.budget {
        cfg.prune_budget = b;
        cfg.node_budget = b;
        budget.max_messages = b;
    }
    match family {
        Family::Frs => {
            let (p, y) = io::read_frs(word)?;
            let t = args.threshold.unwrap_or(frs_threshold(&p, args.s)?);
            let (msgs, diag) = match args.decoder {
                Decoder::Oracle => (oracle_list_decode(&p, &y, t, &budget)?, None),
                Decoder::Linear => {
                    let r = list_decode(&p, &y, args.s, &cfg)?;
                    (kept(&r, t), Some(r.diagnostics))
                }
                Decoder::Hensel => {
                    let r = hensel_list_decode(&p, &y, args.s, &cfg)?;
                    (kept(&r, t), Some(r.diagnostics))
                }
                other => return Err(CliError::Usage(format!("decoder {other} does not apply to frs codes"))),
            };
            Ok(list_text(&msgs, p.field(), diag.as_ref(), t))
        }
        Family::Derivative => {
            let (p, y) = io::read_der(word)?;
            let t = args.threshold.unwrap_or(der_threshold(&p, args.s)?);
            let (msgs, diag) = match args.decoder {
                Decoder::Oracle => (oracle_list_decode(&p, &y, t, &budget)?, None),
                Decoder::Linear => {
                    let r = der_list_decode(&p, &y, args.s, &cfg)?;
                    (kept(&r, t), Some(r.diagnostics))
                }
                other => return Err(CliError::Usage(format!("decoder {other} does not apply to derivative codes"))),
            };
            Ok(list_text(&msgs, p.field(), diag.as_ref(), t))
        }
        Family::Multiplicity => {
            let (p, y) = io::read_mult(word)?;
            if args.decoder != Decoder::Oracle {
                return Err(CliError::Usage("multiplicity words decode only with the oracle; use localsim".into()));
            }
            let t = need(args.threshold, "threshold")?;
            let msgs = oracle_list_decode(&p, &y, t, &budget)?;
            let mut out: String = msgs.iter().map(|m| io::write_mult_message(&p, m)).collect();
            out += &format!("# candidates = {}\n# threshold = {t}\n", msgs.len());
            Ok(out)
        }
    }
}
