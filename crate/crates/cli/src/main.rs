use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcorr::runner::{self, analyze_pair, parse_density_matrix, ExperimentKind, SweepConfig};
use qcorr::{DiscordSettings, Error, MeasuredSide};

/// Quantum correlations of qubit graph states, random states and the kicked top.
#[derive(Parser)]
#[command(name = "qcorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Haar-random pure states: GGM against pair discord and concurrence.
    RandomStates(SweepArgs),
    /// Quantum kicked top time series.
    KickedTop(SweepArgs),
    /// Square, hexagonal and triangular lattice pairs along a θ grid.
    Lattice(SweepArgs),
    /// Fully connected graph states with and without the direct edge.
    FullyConnected(SweepArgs),
    /// Complete graphs with random edge weights.
    RandomWeighted(SweepArgs),
    /// All measures of a 4x4 density matrix read from stdin as 16 `re+imi` entries.
    Pair(PairArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct PairArgs {
    /// Measured qubit: first, second or min.
    #[arg(long, default_value = "second")]
    side: MeasuredSide,
    #[arg(long)]
    threads: Option<usize>,
}

fn init_threads(threads: Option<usize>) -> qcorr::Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("cannot start {n} threads: {e}")))?;
    }
    Ok(())
}

fn run_sweep(kind: ExperimentKind, args: SweepArgs) -> qcorr::Result<()> {
    init_threads(args.threads)?;
    let text = std::fs::read_to_string(&args.config).map_err(|source| Error::Io {
        path: args.config.clone(),
        source,
    })?;
    let mut config = SweepConfig::parse_with_kind(&text, Some(kind))?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if args.out.is_some() {
        config.output = args.out;
    }
    let report = runner::run(&config)?;
    match &config.output {
        Some(path) => report.save(path),
        None => report
            .write_csv(io::stdout().lock())
            .map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn run_pair(args: PairArgs) -> qcorr::Result<()> {
    init_threads(args.threads)?;
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|source| Error::Io {
            path: "<stdin>".into(),
            source,
        })?;
    let rho = parse_density_matrix(&text)?;
    let settings = DiscordSettings {
        side: args.side,
        ..DiscordSettings::default()
    };
    let report = analyze_pair(&rho, &settings)?;
    let mut out = io::stdout().lock();
    for line in report.lines() {
        writeln!(out, "{line}").map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        })?;
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Capacity(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::RandomStates(a) => run_sweep(ExperimentKind::RandomStates, a),
        Command::KickedTop(a) => run_sweep(ExperimentKind::KickedTop, a),
        Command::Lattice(a) => run_sweep(ExperimentKind::Lattice, a),
        Command::FullyConnected(a) => run_sweep(ExperimentKind::FullyConnected, a),
        Command::RandomWeighted(a) => run_sweep(ExperimentKind::RandomWeighted, a),
        Command::Pair(a) => run_pair(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
