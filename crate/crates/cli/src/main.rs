//! `cmzv`: finite and symmetrized colored multiple zeta values from the command line.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{FileConfig, Overrides, RunConfig};

/// Bad flags, config or input: exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;

#[derive(Parser)]
#[command(name = "cmzv", version, about = "Finite and symmetrized colored multiple zeta values")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// TOML file with defaults for the flags below; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Level N: values at N-th roots of unity.
    #[arg(long, short = 'N', global = true)]
    level: Option<u32>,
    /// Primes as `a..b`, `a..=b` or `p1,p2,...`; defaults to p ≡ −1 mod N below 312 plus 1019.
    #[arg(long, global = true)]
    primes: Option<String>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Acceptance tolerance for numerical values.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for generated files.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Finite values ζ_A(s;η) at each prime.
    Fcv {
        #[arg(long)]
        word: String,
    },
    /// Symmetrized value ζ^S(s;η) in the stuffle or shuffle version.
    Scv {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Version::Stuffle)]
        version: Version,
    },
    /// Verify the relations of a JSON-lines file, one verdict per line.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Also check the symmetrized side modulo 2πi.
        #[arg(long)]
        dual: bool,
    },
    /// Rank table and dimension upper bound up to a weight.
    Bound {
        #[arg(long)]
        weight: u32,
        /// Skip the lattice search for further relations.
        #[arg(long)]
        no_discover: bool,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Append the generated relations with their verdicts to this JSON-lines file.
        #[arg(long)]
        relations: Option<PathBuf>,
    },
    /// Check that the conjectured basis words generate in a weight.
    Basis {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        no_discover: bool,
    },
    /// Replay worked identities with their 2πi corrections.
    Identities {
        /// Identity id; `list` prints the catalog, `all` checks every entry.
        #[arg(long, default_value = "all")]
        id: String,
    },
    /// Compute the truncated associator and store its coefficients.
    AssociatorBuild {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        /// Cache file; defaults to a name under --out-dir.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Version {
    Stuffle,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Modular,
    Auto,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(commands::Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8, commands::Failure> {
    let g = cli.global;
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    // The catalog carries its own levels.
    let level_needed = !matches!(cli.command, Command::Identities { .. } | Command::Verify { .. });
    let level = if level_needed { g.level } else { g.level.or(file.level).or(Some(1)) };
    let max_weight = match &cli.command {
        Command::Bound { weight, .. } | Command::Basis { weight, .. } => Some(*weight),
        Command::AssociatorBuild { max_weight, .. } => Some(*max_weight as u32),
        _ => None,
    };
    let cfg = RunConfig::resolve(
        Overrides {
            level,
            max_weight,
            primes: g.primes,
            digits: g.digits,
            tolerance: g.tolerance,
            threads: g.threads,
            out_dir: g.out_dir,
        },
        file,
    )?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| UsageError(format!("thread pool: {e}")))?;
    }
    let mut out = output::Sink::open(g.output.as_deref(), g.csv)?;
    let code = match cli.command {
        Command::Fcv { word } => commands::fcv(&cfg, &word, &mut out)?,
        Command::Scv { word, version } => {
            let v = match version {
                Version::Stuffle => cmzv_core::Product::Stuffle,
                Version::Shuffle => cmzv_core::Product::Shuffle,
            };
            commands::scv(&cfg, &word, v, &mut out)?
        }
        Command::Verify { file, dual } => commands::verify(&cfg, &file, dual, &mut out)?,
        Command::Bound { no_discover, mode, relations, .. } => {
            let m = match mode {
                Mode::Exact => cmzv_core::RankMode::Exact,
                Mode::Modular => cmzv_core::RankMode::Modular,
                Mode::Auto => cmzv_core::RankMode::Auto,
            };
            commands::bound(&cfg, !no_discover, m, relations, &mut out)?
        }
        Command::Basis { no_discover, .. } => commands::basis(&cfg, !no_discover, &mut out)?,
        Command::Identities { id } => commands::identities(&cfg, &id, g.level, &mut out)?,
        Command::AssociatorBuild { cache, .. } => commands::associator_build(&cfg, cache, &mut out)?,
    };
    out.finish()?;
    Ok(code)
}
