use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use profree_cli::error::{CliError, Result};
use profree_cli::eval::eval_text;
use profree_cli::suites::{self, Suite, SUITES};
use profree_cli::witness::{self, WitnessKind};
use profree_core::Params;

/// Truncated completed group algebras and free centre-by-metabelian pro-p groups.
#[derive(Parser)]
#[command(name = "profree", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Odd prime p.
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,
    /// Coefficients are computed mod p^precision.
    #[arg(long, global = true, default_value_t = 4)]
    precision: u32,
    /// Series are truncated below this total degree.
    #[arg(long, global = true, default_value_t = 6)]
    maxdeg: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Record wall-clock elapsed_ms; otherwise it is 0 and reruns are byte-identical.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite, or `all`, printing one JSON report per line.
    Verify { suite: String },
    /// List suite ids.
    Suites,
    /// Solve a witness instance, or re-check a witness file with --check.
    Witness {
        kind: Kind,
        input: PathBuf,
        /// Where to write the witness [default: INPUT.witness].
        #[arg(short, long, conflicts_with = "check")]
        output: Option<PathBuf>,
        /// Existing witness file to verify instead of solving.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Evaluate an expression file, one operation per line.
    Eval { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Szeta,
    Sdelta,
    Cross,
}

impl From<Kind> for WitnessKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Szeta => WitnessKind::Szeta,
            Kind::Sdelta => WitnessKind::Sdelta,
            Kind::Cross => WitnessKind::Cross,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn verify(common: &Common, params: Params, id: &str) -> Result<bool> {
    let selected: Vec<&Suite> = if id == "all" {
        SUITES.iter().collect()
    } else {
        vec![suites::find(id).ok_or_else(|| CliError::UnknownSuite(id.to_string()))?]
    };
    let reports: Vec<_> = selected
        .par_iter()
        .map(|s| s.run(params, common.seed, common.trials, common.timing))
        .collect();
    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", r.to_json_line()).expect("stdout");
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn run_witness(
    params: Params,
    kind: WitnessKind,
    input: &Path,
    output: Option<PathBuf>,
    check: Option<PathBuf>,
) -> Result<bool> {
    let instance = read(input)?;
    let (w, written) = match check {
        Some(path) => (witness::check(kind, &instance, &read(&path)?, params)?, None),
        None => {
            let w = witness::solve(kind, &instance, params)?;
            let path = output.unwrap_or_else(|| {
                let mut p = input.as_os_str().to_owned();
                p.push(".witness");
                PathBuf::from(p)
            });
            fs::write(&path, w.render()).map_err(|source| CliError::Io { path: path.clone(), source })?;
            (w, Some(path.display().to_string()))
        }
    };
    let line = serde_json::to_string(&w.summary(written.as_deref())).expect("plain data");
    println!("{line}");
    Ok(w.is_exact())
}

fn run_eval(params: Params, file: &Path) -> Result<bool> {
    let text = read(file)?;
    let mut ok = true;
    let mut out = io::stdout().lock();
    for result in eval_text(&text, params) {
        match result {
            Ok(Some(value)) => writeln!(out, "{value}").expect("stdout"),
            Ok(None) => {}
            Err(e) => {
                ok = false;
                eprintln!("error: {e}");
            }
        }
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let c = &cli.common;
    let params = Params::new(c.p, c.precision, c.maxdeg)?;
    match cli.command {
        Command::Verify { suite } => verify(c, params, &suite),
        Command::Suites => {
            for s in SUITES {
                println!("{:<22} {}", s.id, s.summary);
            }
            Ok(true)
        }
        Command::Witness { kind, input, output, check } => {
            run_witness(params, kind.into(), &input, output, check)
        }
        Command::Eval { file } => run_eval(params, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
