//! `hermlab`: run verification suites, curvature reports, optimization and
//! sectional scans for the `g(a,c)` family from the command line.

pub mod cli;
pub mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};

use clap::Parser;

use cli::{Cli, Command, Common};

/// Name of the variable that overrides `--seed`.
pub const SEED_VAR: &str = "HERMLAB_SEED";

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum Failure {
    /// Invalid flags or parameters.
    Usage(String),
    /// A mathematical negative result.
    Negative(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn seed(common: &Common, env_seed: Option<&str>) -> Result<u64, Failure> {
    match env_seed {
        Some(raw) => raw
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_VAR} must be an unsigned integer, got {raw:?}"))),
        None => Ok(common.seed),
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Verify(a) => &a.common,
        Command::Report(a) => &a.common,
        Command::Optimize(a) => &a.common,
        Command::Sectional(a) => &a.common,
        Command::Scan(a) => &a.common,
    }
}

/// Parses `args`, runs the command and writes its output to `--out` or
/// `stdout`; diagnostics go to `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, env_seed, stdout) {
        Ok(None) => EXIT_OK,
        Ok(Some(message)) | Err(Failure::Negative(message)) => {
            let _ = writeln!(stderr, "hermlab: {message}");
            EXIT_NEGATIVE
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "hermlab: {message}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "hermlab: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, env_seed: Option<&str>, stdout: &mut dyn Write) -> Result<Option<String>, Failure> {
    let common = common(&cli.command);
    let seed = seed(common, env_seed)?;
    let rendered = match &cli.command {
        Command::Verify(a) => commands::verify(a, seed)?,
        Command::Report(a) => commands::report(a)?,
        Command::Optimize(a) => commands::optimize(a)?,
        Command::Sectional(a) => commands::sectional(a, seed)?,
        Command::Scan(a) => commands::scan(a)?,
    };
    match &common.out {
        Some(path) => {
            let mut file =
                File::create(path).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            commands::emit(&rendered.bytes, &mut file)?;
        }
        None => commands::emit(&rendered.bytes, stdout)?,
    }
    Ok(rendered.negative)
}
