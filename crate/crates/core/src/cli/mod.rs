//! Command-line front end.

mod config;
mod report;
mod spec;

use std::ffi::OsString;

use clap::Parser;

pub use config::{load_config, parse_config, ConfigValues};
pub use report::{render, run_command, EveSummary, FinalKeySummary, ReportDocument, SweepTable};
pub use spec::{Cli, CliCommand, Command, CommandSpec, CommonArgs, OutputFormat, SweepParam, SweepSpec};

/// Exit status for argument and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a reproduced claim fails.
pub const EXIT_CLAIM_FAILURE: i32 = 1;

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = cli.into_spec().and_then(|spec| {
        let (code, doc) = run_command(&spec)?;
        let text = render(&doc, spec.format())?;
        match &spec.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| crate::Error::InvalidParameter(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
