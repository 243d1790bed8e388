//! `ellw`: evaluate structure functions, run identity suites and emit mode
//! coefficient tables.
//!
//! Exit status: 0 pass, 1 verification failure, 2 usage error, 3 numeric or
//! domain error.

mod commands;
mod format;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use params::Params;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(ellw_core::Error),
    Io(String),
}

impl From<ellw_core::Error> for CliError {
    fn from(e: ellw_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(name = "ellw", version, about = "Elliptic R-matrix and deformed W_N structure-function harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function and print its value.
    Eval {
        function: String,
        /// Parameters as key=value.
        pairs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an identity suite and write a report.
    Verify {
        suite: String,
        pairs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a mode coefficient table.
    Table {
        table: String,
        pairs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Default)]
struct Common {
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "M", allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<i64>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    trunc_theta: Option<usize>,
    #[arg(long)]
    trunc_prod: Option<usize>,
    #[arg(long)]
    trunc_series: Option<usize>,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn params(&self, pairs: &[String]) -> Result<Params, CliError> {
        let mut p = Params::default();
        p.set_opt("N", &self.n)?;
        p.set_opt("M", &self.m)?;
        p.set_opt("h", &self.h)?;
        p.set_opt("i", &self.i)?;
        p.set_opt("j", &self.j)?;
        p.set_opt("k", &self.k)?;
        p.set_opt("q", &self.q)?;
        p.set_opt("p", &self.p)?;
        p.set_opt("x", &self.x)?;
        p.set_opt("c", &self.c)?;
        p.set_opt("tol", &self.tol)?;
        p.set_opt("trunc_theta", &self.trunc_theta)?;
        p.set_opt("trunc_prod", &self.trunc_prod)?;
        p.set_opt("trunc_series", &self.trunc_series)?;
        p.set_opt("r_max", &self.r_max)?;
        p.set_opt("samples", &self.samples)?;
        p.set_opt("seed", &self.seed)?;
        p.extend_pairs(pairs)?;
        Ok(p)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Eval { function, pairs, common } => {
            let p = common.params(&pairs)?;
            let v = commands::eval(&function, &p)?;
            common.emit(&commands::render_value(&function, v, common.format.unwrap_or(Format::Text)))?;
            Ok(true)
        }
        Command::Verify { suite, pairs, common } => {
            let p = common.params(&pairs)?;
            let report = commands::verify(&suite, &p)?;
            common.emit(&commands::render_report(&report, common.format.unwrap_or(Format::Json)))?;
            Ok(report.overall_pass)
        }
        Command::Table { table, pairs, common } => {
            let p = common.params(&pairs)?;
            let t = commands::build_table(&table, &p, p.get("r_max", 5)?)?;
            common.emit(&commands::render_table(&t, common.format.unwrap_or(Format::Csv)))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ellw: {e}");
            ExitCode::from(e.code())
        }
    }
}
