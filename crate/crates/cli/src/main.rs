use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jonesq_cli::config::parse_list;
use jonesq_cli::io::{read_rows, rows_to_csv, to_json, write_atomic};
use jonesq_cli::{
    analyse, benchmark, exact_report, knot_info, plot_data, simulate, CliError, RunConfig,
};
use jonesq_core::noise::ShotEngine;
use jonesq_core::{FitModel, Resampling};

#[derive(Parser)]
#[command(
    name = "jonesq",
    version,
    about = "Jones polynomial evaluation via Potts models and noisy circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical evaluation by every available route.
    Exact(Flags),
    /// Repeated noisy Hadamard-test runs, written as a dataset CSV.
    Simulate(Flags),
    /// Zero-noise extrapolation of a dataset.
    Zne {
        /// Dataset CSV produced by `simulate`.
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Random Reidemeister variants of a knot through the full pipeline.
    Benchmark(Flags),
    /// Knot inspection.
    Knot {
        #[command(subcommand)]
        command: KnotCommand,
    },
}

#[derive(Subcommand)]
enum KnotCommand {
    /// Diagram, Tait graph and circuit sizes of a knot.
    Info(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// JSON run configuration; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin name, PD text file, or knot-record JSON.
    #[arg(long)]
    knot: Option<String>,
    /// Face index of the diagram taken as the unbounded face.
    #[arg(long)]
    outer_face: Option<usize>,
    #[arg(long)]
    q: Option<u32>,
    /// Noise-model JSON file.
    #[arg(long)]
    noise: Option<PathBuf>,
    /// Named noise profile: default, ideal, tier-1 .. tier-4.
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<u32>,
    #[arg(long)]
    shots: Option<u64>,
    /// Comma-separated odd stretch factors, e.g. 1,3,5,7.
    #[arg(long)]
    stretch: Option<String>,
    /// Shot engine: exact or trajectory.
    #[arg(long, value_parser = parse_engine)]
    engine: Option<ShotEngine>,
    /// linear or exp.
    #[arg(long)]
    fit: Option<FitModel>,
    /// Comma-separated stretch factors used by the fit.
    #[arg(long)]
    cs: Option<String>,
    #[arg(long)]
    resamples: Option<usize>,
    /// independent or tuple.
    #[arg(long)]
    resampling: Option<Resampling>,
    #[arg(long)]
    variants: Option<usize>,
    #[arg(long)]
    moves: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plot-data JSON output of `zne`.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn parse_engine(s: &str) -> Result<ShotEngine, String> {
    match s {
        "exact" => Ok(ShotEngine::Exact),
        "trajectory" => Ok(ShotEngine::Trajectory),
        other => Err(format!("unknown engine `{other}`")),
    }
}

impl Flags {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = self.$field { cfg.$field = v; })* };
        }
        set!(q, backend, seed, runs, shots, engine, fit, resamples, resampling, variants, moves);
        if let Some(text) = &self.stretch {
            cfg.stretch =
                parse_list(text).map_err(|e| CliError::Validation(format!("--stretch {e}")))?;
        }
        if let Some(text) = &self.cs {
            cfg.cs = Some(parse_list(text).map_err(|e| CliError::Validation(format!("--cs {e}")))?);
        }
        if self.knot.is_some() {
            cfg.knot = self.knot;
        }
        if self.outer_face.is_some() {
            cfg.outer_face = self.outer_face;
        }
        if self.noise.is_some() {
            cfg.noise = self.noise;
        }
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if self.plot.is_some() {
            cfg.plot = self.plot;
        }
        Ok(cfg)
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn backend_label(cfg: &RunConfig) -> String {
    match &cfg.noise {
        Some(path) => path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("custom")
            .to_string(),
        None => cfg.backend.clone(),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Exact(flags) => {
            let cfg = flags.resolve()?;
            let report = exact_report(&cfg.knot_source()?, cfg.q)?;
            emit(cfg.out.as_deref(), to_json(&report)?.as_bytes())
        }
        Command::Simulate(flags) => {
            let cfg = flags.resolve()?;
            let src = cfg.knot_source()?;
            let rows = simulate(&cfg, &src.record, &cfg.noise_model()?, &backend_label(&cfg))?;
            emit(cfg.out.as_deref(), &rows_to_csv(&rows)?)
        }
        Command::Zne { dataset, flags } => {
            let mut cfg = flags.resolve()?;
            let rows = read_rows(&dataset)?;
            if cfg.knot.is_none() {
                cfg.knot = rows.first().map(|r| r.knot.clone());
            }
            let src = cfg.knot_source()?;
            let report = analyse(&rows, &cfg, &src.record)?;
            if let Some(plot) = &cfg.plot {
                write_atomic(plot, to_json(&plot_data(&rows, &report)?)?.as_bytes())?;
            }
            emit(cfg.out.as_deref(), to_json(&report)?.as_bytes())
        }
        Command::Benchmark(flags) => {
            let cfg = flags.resolve()?;
            let src = cfg.knot_source()?;
            let report = benchmark(&cfg, &src, &cfg.noise_model()?, &backend_label(&cfg))?;
            emit(cfg.out.as_deref(), to_json(&report)?.as_bytes())
        }
        Command::Knot {
            command: KnotCommand::Info(flags),
        } => {
            let cfg = flags.resolve()?;
            let info = knot_info(&cfg.knot_source()?)?;
            emit(cfg.out.as_deref(), to_json(&info)?.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
