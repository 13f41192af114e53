use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use xdiscord::report::benchmark_states;
use xdiscord::{
    parse_state_file, phi_invariance_audit, run_report, LogBase, NamedState, SearchConfig,
};

#[derive(Parser)]
#[command(
    name = "discord",
    version,
    about = "Quantum discord of two-qubit X states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the 3-element POVM, projective and axis-measurement discord.
    Run(RunArgs),
    /// Parse and validate a state file.
    Validate(InputArgs),
    /// Sweep φ and report how much the re-optimized conditional entropy moves.
    AuditPhi(RunArgs),
}

#[derive(Args)]
struct InputArgs {
    /// JSON state file.
    #[arg(long)]
    states: Option<PathBuf>,
    /// Use the bundled benchmark states (appended after any --states records).
    #[arg(long)]
    benchmarks: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Base::Bits)]
    base: Base,
    #[arg(long)]
    seed: Option<u64>,
    /// Random candidates in the global POVM search.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Bits,
    Nats,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Bits => LogBase::Bits,
            Base::Nats => LogBase::Nats,
        }
    }
}

fn load_states(input: &InputArgs) -> Result<Vec<NamedState>> {
    let mut states = Vec::new();
    if let Some(path) = &input.states {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        states = parse_state_file(&text).with_context(|| format!("in {}", path.display()))?;
    }
    if input.benchmarks {
        states.extend(benchmark_states());
    }
    if input.states.is_none() && !input.benchmarks {
        bail!("no input: pass --states <file> and/or --benchmarks");
    }
    Ok(states)
}

fn search_config(args: &RunArgs) -> SearchConfig {
    let mut cfg = SearchConfig::default();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.samples {
        cfg.n_global_samples = n;
    }
    cfg
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("DISCORD_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("DISCORD_THREADS=`{v}` is not a thread count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    init_threads()?;
    match cli.command {
        Command::Validate(input) => {
            for s in load_states(&input)? {
                println!("ok {}", s.name);
            }
        }
        Command::Run(args) => {
            let states = load_states(&args.input)?;
            let cfg = search_config(&args);
            let report = run_report(&states, &cfg, args.base.into())?;
            let text = match args.format {
                Format::Table => report.to_table(),
                Format::Json => report.to_json()? + "\n",
                Format::Csv => report.to_csv()?,
            };
            print!("{text}");
        }
        Command::AuditPhi(args) => {
            let states = load_states(&args.input)?;
            let cfg = search_config(&args);
            let base: LogBase = args.base.into();
            println!(
                "# base={} seed={} samples={} phi_points={}",
                base, cfg.seed, cfg.n_global_samples, cfg.phi_audit_points
            );
            println!("{:<10} {:>14} {:>12}", "state", "min_ce", "spread");
            for s in &states {
                let audit = phi_invariance_audit(&s.state, &cfg, base)
                    .with_context(|| format!("record `{}`", s.name))?;
                println!(
                    "{:<10} {:>14.9} {:>12.3e}",
                    s.name, audit.best.best_value, audit.spread
                );
            }
        }
    }
    Ok(())
}
