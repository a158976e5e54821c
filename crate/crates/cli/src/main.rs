use std::path::PathBuf;
use std::process::ExitCode;

use algcodes::par::Exec;
use algcodes_cli::commands::{self, CodeArgs, DecodeArgs};
use algcodes_cli::error::{read_file, write_file};
use algcodes_cli::{run_experiment, write_report, CliError, CliResult, Decoder, ExperimentSpec, Family};
use clap::{Args, Parser, Subcommand};

/// Encode, corrupt and decode folded Reed-Solomon, derivative and
/// multiplicity codes, and run seeded decoding experiments.
#[derive(Parser)]
#[command(name = "algcodes", version)]
struct Cli {
    /// Run trials on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Params {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    m: Option<usize>,
    /// Block length (`N` for FRS, `n` for derivative codes).
    #[arg(long = "N", alias = "n", short = 'N')]
    block_length: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

impl From<&Params> for CodeArgs {
    fn from(p: &Params) -> Self {
        CodeArgs { q: p.q, m: p.m, block_length: p.block_length, k: p.k, s: p.s, d: p.d }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode a message file.
    Encode {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        params: Params,
        /// Message coefficients, lowest degree first.
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace random columns of a word file.
    Corrupt {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List-decode a received word file.
    Decode {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Decoder::Linear)]
        decoder: Decoder,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Minimum agreement of reported messages.
        #[arg(long)]
        threshold: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run trials described by a `key = value` spec file.
    Experiment {
        spec: PathBuf,
        /// Writes `<out>.tsv` and `<out>.json`; prints the summary otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local self-correction trials on a multiplicity code.
    Localsim {
        #[arg(long, value_enum, default_value_t = Decoder::Local)]
        decoder: Decoder,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        errors: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        attempts: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: algcodes_cli::Report, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => write_report(&report, p)?,
        None => print!("{}", report.to_json()),
    }
    match &report.summary.failure {
        Some(f) => Err(CliError::Budget(f.clone())),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.cmd {
        Cmd::Encode { family, params, message, out } => {
            let text = commands::encode(family, &CodeArgs::from(&params), &read_file(&message)?)?;
            emit(out.as_ref(), &text)
        }
        Cmd::Corrupt { family, input, errors, seed, out } => {
            emit(out.as_ref(), &commands::corrupt(family, &read_file(&input)?, errors, seed)?)
        }
        Cmd::Decode { family, decoder, input, s, threshold, budget, out } => {
            let args = DecodeArgs { decoder, s, threshold, budget };
            emit(out.as_ref(), &commands::decode(family, &read_file(&input)?, &args)?)
        }
        Cmd::Experiment { spec, out } => {
            let spec: ExperimentSpec = read_file(&spec)?.parse()?;
            finish(run_experiment(&spec, exec)?, out.as_ref())
        }
        Cmd::Localsim { decoder, q, m, s, d, errors, trials, seed, attempts, out } => {
            let spec = ExperimentSpec {
                family: Family::Multiplicity,
                decoder,
                q,
                m,
                block_length: None,
                k: None,
                s,
                d: Some(d),
                errors,
                trials,
                seed,
                budget: None,
                threshold: None,
                attempts,
                timing: false,
            };
            finish(run_experiment(&spec, exec)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
