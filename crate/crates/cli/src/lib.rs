//! Channel simulation and experiment runner behind the `algcodes` binary.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod spec;

pub use error::{CliError, CliResult};
pub use experiment::{run_experiment, Report};
pub use spec::{Decoder, ExperimentSpec, Family};

/// Writes `<prefix>.tsv` and `<prefix>.json`.
pub fn write_report(report: &Report, prefix: &std::path::Path) -> CliResult<()> {
    let with = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        std::path::PathBuf::from(p)
    };
    error::write_file(&with(".tsv"), &report.to_tsv())?;
    error::write_file(&with(".json"), &report.to_json())
}
