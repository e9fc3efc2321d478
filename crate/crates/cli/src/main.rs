//! `gspc`: load definition files, compute invariants, and run law checks.
//!
//! Exit codes: 0 when every check passes (or a computation succeeds), 1
//! when a check fails, 2 when a run is inconclusive (budget or bound
//! exceeded) or the input is invalid.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gspc_core::workspace::{Config, ConfigOverrides, Workspace};
use gspc_core::Error;

use report::Report;

/// Environment variable overriding the configured output directory.
pub const OUTPUT_ENV: &str = "GSPC_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "gspc", version, about = "Γ-spaces of simplicial presheaves and their spectra")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Definition file to load; repeatable, loaded in order.
    #[arg(long = "defs", global = true)]
    defs: Vec<PathBuf>,
    /// TOML configuration file with `dim`, `levels`, `bound`, `budget`,
    /// `output_dir`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Simplicial dimension bound D.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Spectrum level bound L.
    #[arg(long, global = true)]
    levels: Option<usize>,
    /// Arity bound B for colimits.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Enumeration budget in search nodes.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and validate definition files, then list what they define.
    Define,
    /// Compute an invariant or construction.
    #[command(subcommand)]
    Compute(commands::Compute),
    /// Run a law check.
    #[command(subcommand)]
    Check(commands::Check),
}

fn config(global: &Global) -> Result<Config, Error> {
    let mut cfg = Config::default();
    if let Some(path) = &global.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            file: path.display().to_string(),
            line: 0,
            message: e.to_string(),
        })?;
        let file: ConfigOverrides = toml::from_str(&text).map_err(|e| Error::Parse {
            file: path.display().to_string(),
            line: e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(0),
            message: e.message().to_string(),
        })?;
        cfg.apply(&file);
    }
    if let Some(dir) = std::env::var_os(OUTPUT_ENV) {
        cfg.output_dir = Some(PathBuf::from(dir));
    }
    cfg.apply(&ConfigOverrides {
        dim: global.dim,
        levels: global.levels,
        bound: global.bound,
        budget: global.budget,
        output_dir: global.out.clone(),
    });
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cfg = config(&cli.global)?;
    let mut ws = Workspace::new(cfg.dim);
    for path in &cli.global.defs {
        ws.load_file(path)?;
    }
    let report = match &cli.command {
        Command::Define => Report::computed("define", "workspace", ws.summary()),
        Command::Compute(c) => commands::compute(c, &ws, &cfg)?,
        Command::Check(c) => commands::check(c, &ws, &cfg)?,
    };
    if let Some(dir) = &cfg.output_dir {
        report.write_to(dir).map_err(|e| Error::Precondition(format!("cannot write report: {e}")))?;
    }
    Ok(report)
}

fn inconclusive(e: &Error) -> bool {
    matches!(
        e,
        Error::Budget { .. } | Error::ArityBound { .. } | Error::DimensionBound(_) | Error::Truncation { .. } | Error::Infinite(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            let kind = if inconclusive(&e) { "inconclusive" } else { "error" };
            eprintln!("{kind}: {e}");
            ExitCode::from(2)
        }
    }
}
