//! Command-line interface.
//!
//! Subcommands mirror the pipeline stages: `ingest`, `lorenz`, `opn`,
//! `zigzag`, `stats`, and `all`. Every option can also be supplied through a
//! flat `key=value` config file (`--config`); explicit flags win. Logs go to
//! standard error, data to files or standard output.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::dynamics::{simulate_lorenz, LorenzConfig};
use crate::error::{Error, Result};
use crate::pipeline::{
    run_opn_pipeline, run_temporal_pipeline, InputKind, OpnParams, PipelineConfig,
};
use crate::temporal_graph::{read_edge_csv_path, read_schedule_csv_path};

#[derive(Parser)]
#[command(
    name = "ziggraph",
    version,
    about = "Zigzag persistence for temporal networks"
)]
struct Cli {
    /// Flat key=value config file; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Cap the worker thread count (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and normalize temporal input to the canonical edge CSV.
    Ingest(IngestArgs),
    /// Simulate the Lorenz system and write the x component as t,x CSV.
    Lorenz(LorenzArgs),
    /// Time series to temporal ordinal partition network to zigzag diagram.
    Opn(OpnArgs),
    /// Temporal edge data to zigzag persistence diagram.
    Zigzag(ZigzagArgs),
    /// Temporal edge data to per-snapshot connectivity/centrality CSV.
    Stats(StatsArgs),
    /// Full pipeline: diagram plus statistics (plus OPN export for series).
    All(AllArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Input CSV path.
    #[arg(long)]
    input: PathBuf,
    /// Treat the input as a trip schedule instead of an edge list.
    #[arg(long)]
    schedule: bool,
    /// Output path for the canonical edge CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LorenzArgs {
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Sampling rate in Hz.
    #[arg(long)]
    fs: Option<f64>,
    /// Simulated seconds.
    #[arg(long)]
    duration: Option<f64>,
    /// Trailing seconds retained.
    #[arg(long)]
    keep: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct WindowArgs {
    /// Full window width in input time units.
    #[arg(long)]
    width: Option<f64>,
    /// Fractional window overlap in [0, 1).
    #[arg(long)]
    overlap: Option<f64>,
}

#[derive(Args)]
struct ComplexArgs {
    /// Vietoris-Rips geodesic scale.
    #[arg(long)]
    r: Option<usize>,
    /// Maximum simplex dimension retained.
    #[arg(long)]
    dmax: Option<usize>,
    /// Maximum homology dimension reported.
    #[arg(long)]
    pmax: Option<usize>,
}

#[derive(Args)]
struct ZigzagArgs {
    #[arg(long)]
    input: PathBuf,
    /// Treat the input as a trip schedule instead of an edge list.
    #[arg(long)]
    schedule: bool,
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    complex: ComplexArgs,
    /// Report diagram coordinates as snapshot indices instead of times.
    #[arg(long)]
    index_coords: bool,
    /// Output diagram path (.csv or .json).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    schedule: bool,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OpnArgs {
    /// Time series CSV (single x column, or two columns t,x).
    #[arg(long)]
    input: PathBuf,
    /// Sample rate for single-column inputs.
    #[arg(long)]
    fs: Option<f64>,
    /// Embedding dimension.
    #[arg(long)]
    m: Option<usize>,
    /// Embedding delay in samples, or `auto` for entropy-based selection.
    #[arg(long)]
    tau: Option<String>,
    /// Sweep bound for automatic delay selection.
    #[arg(long)]
    tau_max: Option<usize>,
    /// Window width as a multiple of tau (samples).
    #[arg(long)]
    window_mult: Option<f64>,
    #[arg(long)]
    overlap: Option<f64>,
    #[command(flatten)]
    complex: ComplexArgs,
    #[arg(long)]
    index_coords: bool,
    /// Diagram output path.
    #[arg(long, default_value = "diagram.csv")]
    out_diagram: PathBuf,
    /// Snapshot statistics output path.
    #[arg(long, default_value = "stats.csv")]
    out_stats: PathBuf,
    /// Temporal edge export of the ordinal partition network.
    #[arg(long, default_value = "opn_edges.csv")]
    out_edges: PathBuf,
}

#[derive(Args)]
struct AllArgs {
    #[arg(long)]
    input: PathBuf,
    /// Input kind: edge-list, schedule, or timeseries.
    #[arg(long, default_value = "edge-list")]
    kind: String,
    #[arg(long)]
    fs: Option<f64>,
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    complex: ComplexArgs,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    tau_max: Option<usize>,
    #[arg(long)]
    window_mult: Option<f64>,
    #[arg(long)]
    index_coords: bool,
    #[arg(long, default_value = "diagram.csv")]
    out_diagram: PathBuf,
    #[arg(long, default_value = "stats.csv")]
    out_stats: PathBuf,
    #[arg(long, default_value = "opn_edges.csv")]
    out_edges: PathBuf,
}

/// Flat key=value configuration file.
struct KvConfig(HashMap<String, String>);

impl KvConfig {
    fn load(path: Option<&PathBuf>) -> Result<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::io(path.display().to_string(), e))?;
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::parse(format!(
                        "config line {}: expected key=value, found '{line}'",
                        idx + 1
                    )));
                };
                map.insert(key.trim().to_owned(), value.trim().to_owned());
            }
        }
        Ok(KvConfig(map))
    }

    /// Flag value if present, else config value, else default.
    fn resolve<T: FromStr + Clone>(&self, flag: &Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v.clone());
        }
        match self.0.get(key) {
            Some(text) => text
                .parse()
                .map_err(|_| Error::parse(format!("config key '{key}': bad value '{text}'"))),
            None => Ok(default),
        }
    }

    fn resolve_required<T: FromStr + Clone>(&self, flag: &Option<T>, key: &str) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v.clone());
        }
        match self.0.get(key) {
            Some(text) => text
                .parse()
                .map_err(|_| Error::parse(format!("config key '{key}': bad value '{text}'"))),
            None => Err(Error::validation(format!(
                "missing required option '--{key}' (flag or config)"
            ))),
        }
    }

    fn resolve_optional<T: FromStr + Clone>(&self, flag: &Option<T>, key: &str) -> Result<Option<T>> {
        if let Some(v) = flag {
            return Ok(Some(v.clone()));
        }
        match self.0.get(key) {
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|_| Error::parse(format!("config key '{key}': bad value '{text}'"))),
            None => Ok(None),
        }
    }
}

fn parse_tau(text: Option<&str>) -> Result<Option<usize>> {
    match text {
        None => Ok(None),
        Some("auto") => Ok(None),
        Some(t) => t
            .parse()
            .map(Some)
            .map_err(|_| Error::parse(format!("tau must be 'auto' or an integer, got '{t}'"))),
    }
}

fn input_kind(text: &str) -> Result<InputKind> {
    match text {
        "edge-list" => Ok(InputKind::EdgeList),
        "schedule" => Ok(InputKind::Schedule),
        "timeseries" => Ok(InputKind::TimeSeries),
        other => Err(Error::parse(format!(
            "unknown input kind '{other}' (expected edge-list, schedule, or timeseries)"
        ))),
    }
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::validation(format!("thread pool: {e}")))?;
    }
    let kv = KvConfig::load(cli.config.as_ref())?;

    match cli.command {
        Command::Ingest(args) => {
            let graph = if args.schedule {
                read_schedule_csv_path(&args.input)?
            } else {
                read_edge_csv_path(&args.input)?
            };
            std::fs::write(&args.out, graph.to_edge_csv_string())
                .map_err(|e| Error::io(args.out.display().to_string(), e))?;
            eprintln!(
                "ingested {} vertices, {} edges, time domain [{}, {}]",
                graph.vertex_count(),
                graph.edge_count(),
                graph.time_domain().0,
                graph.time_domain().1
            );
            Ok(())
        }
        Command::Lorenz(args) => {
            let cfg = LorenzConfig {
                sigma: kv.resolve(&args.sigma, "sigma", 10.0)?,
                rho: kv.resolve(&args.rho, "rho", 166.15)?,
                beta: kv.resolve(&args.beta, "beta", 8.0 / 3.0)?,
                fs: kv.resolve(&args.fs, "fs", 100.0)?,
                duration: kv.resolve(&args.duration, "duration", 500.0)?,
                keep_last: kv.resolve(&args.keep, "keep", 70.0)?,
                initial_state: (1.0, 1.0, 1.0),
            };
            let series = simulate_lorenz(&cfg)?;
            let mut text = String::from("t,x\n");
            let offset = cfg.duration - cfg.keep_last;
            for (k, x) in series.samples.iter().enumerate() {
                use std::fmt::Write as _;
                let t = offset + (k + 1) as f64 / cfg.fs;
                let _ = writeln!(text, "{t},{x}");
            }
            std::fs::write(&args.out, text)
                .map_err(|e| Error::io(args.out.display().to_string(), e))?;
            eprintln!("wrote {} samples at {} Hz", series.len(), cfg.fs);
            Ok(())
        }
        Command::Zigzag(args) => {
            let kind = if args.schedule {
                InputKind::Schedule
            } else {
                InputKind::EdgeList
            };
            let cfg = PipelineConfig {
                input: args.input,
                kind,
                width: Some(kv.resolve_required(&args.window.width, "width")?),
                overlap: kv.resolve(&args.window.overlap, "overlap", 0.0)?,
                r: kv.resolve(&args.complex.r, "r", 1)?,
                d_max: kv.resolve(&args.complex.dmax, "dmax", 2)?,
                p_max: kv.resolve(&args.complex.pmax, "pmax", 1)?,
                opn: OpnParams::default(),
                fs: None,
                index_coords: args.index_coords,
                out_diagram: Some(args.out),
                out_stats: None,
                out_opn_edges: None,
            };
            let diagram = run_temporal_pipeline(&cfg)?;
            eprintln!("diagram: {} pairs", diagram.pairs().len());
            Ok(())
        }
        Command::Stats(args) => {
            let kind = if args.schedule {
                InputKind::Schedule
            } else {
                InputKind::EdgeList
            };
            let cfg = PipelineConfig {
                input: args.input,
                kind,
                width: Some(kv.resolve_required(&args.window.width, "width")?),
                overlap: kv.resolve(&args.window.overlap, "overlap", 0.0)?,
                r: 1,
                d_max: 2,
                p_max: 1,
                opn: OpnParams::default(),
                fs: None,
                index_coords: false,
                out_diagram: None,
                out_stats: Some(args.out),
                out_opn_edges: None,
            };
            run_temporal_pipeline(&cfg)?;
            Ok(())
        }
        Command::Opn(args) => {
            let tau_flag = parse_tau(args.tau.as_deref())?;
            let cfg = PipelineConfig {
                input: args.input,
                kind: InputKind::TimeSeries,
                width: None,
                overlap: kv.resolve(&args.overlap, "overlap", 0.8)?,
                r: kv.resolve(&args.complex.r, "r", 1)?,
                d_max: kv.resolve(&args.complex.dmax, "dmax", 2)?,
                p_max: kv.resolve(&args.complex.pmax, "pmax", 1)?,
                opn: OpnParams {
                    m: kv.resolve(&args.m, "m", 6)?,
                    tau: match tau_flag {
                        Some(t) => Some(t),
                        None => kv.resolve_optional(&None::<usize>, "tau")?,
                    },
                    tau_max: kv.resolve(&args.tau_max, "tau_max", 100)?,
                    window_mult: kv.resolve(&args.window_mult, "window_mult", 10.0)?,
                },
                fs: kv.resolve_optional(&args.fs, "fs")?,
                index_coords: args.index_coords,
                out_diagram: Some(args.out_diagram),
                out_stats: Some(args.out_stats),
                out_opn_edges: Some(args.out_edges),
            };
            let out = run_opn_pipeline(&cfg)?;
            eprintln!(
                "tau {} | network: {} vertices, {} edges | diagram: {} pairs",
                out.tau,
                out.network.vertex_count(),
                out.network.edge_count(),
                out.diagram.pairs().len()
            );
            Ok(())
        }
        Command::All(args) => {
            let kind = input_kind(&kv.resolve(&Some(args.kind.clone()), "kind", args.kind.clone())?)?;
            let tau_flag = parse_tau(args.tau.as_deref())?;
            let cfg = PipelineConfig {
                input: args.input,
                kind,
                width: kv.resolve_optional(&args.window.width, "width")?,
                overlap: kv.resolve(
                    &args.window.overlap,
                    "overlap",
                    if kind == InputKind::TimeSeries { 0.8 } else { 0.0 },
                )?,
                r: kv.resolve(&args.complex.r, "r", 1)?,
                d_max: kv.resolve(&args.complex.dmax, "dmax", 2)?,
                p_max: kv.resolve(&args.complex.pmax, "pmax", 1)?,
                opn: OpnParams {
                    m: kv.resolve(&args.m, "m", 6)?,
                    tau: tau_flag,
                    tau_max: kv.resolve(&args.tau_max, "tau_max", 100)?,
                    window_mult: kv.resolve(&args.window_mult, "window_mult", 10.0)?,
                },
                fs: kv.resolve_optional(&args.fs, "fs")?,
                index_coords: args.index_coords,
                out_diagram: Some(args.out_diagram),
                out_stats: Some(args.out_stats),
                out_opn_edges: if kind == InputKind::TimeSeries {
                    Some(args.out_edges)
                } else {
                    None
                },
            };
            match kind {
                InputKind::TimeSeries => {
                    let out = run_opn_pipeline(&cfg)?;
                    eprintln!("diagram: {} pairs", out.diagram.pairs().len());
                }
                _ => {
                    let diagram = run_temporal_pipeline(&cfg)?;
                    eprintln!("diagram: {} pairs", diagram.pairs().len());
                }
            }
            Ok(())
        }
    }
}

/// Entry point: parse, execute, and report failures as a single
/// machine-parseable line on standard error.
pub fn run() {
    let cli = Cli::parse();
    if let Err(e) = execute(cli) {
        eprintln!("error[{}]: {e}", e.category());
        std::process::exit(1);
    }
}
