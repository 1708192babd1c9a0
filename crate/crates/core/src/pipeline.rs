//! End-to-end pipelines: input file to diagram/statistics files.
//!
//! Both pipelines are free of randomness and write files from fully
//! assembled strings, so a fixed configuration and input always produce
//! byte-identical outputs, independent of the worker thread count.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graphstats::stats_series;
use crate::opn::{build_opn, mspe_delay, permutation_sequence, read_timeseries_csv, TimeSeries};
use crate::temporal_graph::{read_edge_csv_path, read_schedule_csv_path, TemporalGraph};
use crate::windowing::{build_snapshots, make_plan};
use crate::zigzag::{build_zigzag, zigzag_persistence, DiagramCoords, ZigzagDiagram};

/// How the input file is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    /// Temporal edge CSV with header `u,v,t_start,t_end`.
    EdgeList,
    /// Trip schedule CSV with header `origin,destination,departure,arrival`.
    Schedule,
    /// Scalar time series (one `x` column, or two columns `t,x`).
    TimeSeries,
}

/// Ordinal-partition-network parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct OpnParams {
    /// Embedding dimension.
    pub m: usize,
    /// Embedding delay in samples; `None` selects it by multi-scale
    /// permutation entropy.
    pub tau: Option<usize>,
    /// Sweep bound for the automatic delay selection.
    pub tau_max: usize,
    /// Window width as a multiple of `tau`, in samples.
    pub window_mult: f64,
}

impl Default for OpnParams {
    fn default() -> Self {
        OpnParams {
            m: 6,
            tau: None,
            tau_max: 100,
            window_mult: 10.0,
        }
    }
}

/// Full pipeline configuration.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub kind: InputKind,
    /// Full window width in time units. For time-series inputs this is
    /// derived from `opn.window_mult * tau` samples when absent.
    pub width: Option<f64>,
    pub overlap: f64,
    pub r: usize,
    pub d_max: usize,
    pub p_max: usize,
    pub opn: OpnParams,
    /// Sample rate for single-column time-series inputs.
    pub fs: Option<f64>,
    pub index_coords: bool,
    pub out_diagram: Option<PathBuf>,
    pub out_stats: Option<PathBuf>,
    pub out_opn_edges: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>, kind: InputKind) -> Self {
        PipelineConfig {
            input: input.into(),
            kind,
            width: None,
            overlap: 0.0,
            r: 1,
            d_max: 2,
            p_max: 1,
            opn: OpnParams::default(),
            fs: None,
            index_coords: false,
            out_diagram: None,
            out_stats: None,
            out_opn_edges: None,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Runs window building, zigzag persistence, and snapshot statistics on an
/// already-ingested temporal graph, writing whichever outputs are requested.
pub fn run_graph_pipeline(cfg: &PipelineConfig, graph: &TemporalGraph) -> Result<ZigzagDiagram> {
    let width = cfg
        .width
        .ok_or_else(|| Error::validation("window width is required"))?;
    let plan = make_plan(graph.time_domain(), width, cfg.overlap)?;
    let seq = build_snapshots(graph, &plan);
    let zz = build_zigzag(&seq, cfg.r, cfg.d_max)?;
    let diagram = zigzag_persistence(&zz, cfg.p_max)?;
    if let Some(path) = &cfg.out_diagram {
        let coords = if cfg.index_coords {
            DiagramCoords::Index
        } else {
            DiagramCoords::Time
        };
        let text = if path.extension().is_some_and(|e| e == "json") {
            diagram.to_json_string()
        } else {
            diagram.to_csv_string(coords)
        };
        write_file(path, &text)?;
    }
    if let Some(path) = &cfg.out_stats {
        let stats = stats_series(&seq);
        write_file(path, &stats.to_csv_string())?;
    }
    Ok(diagram)
}

/// Temporal pipeline: edge list or schedule to diagram and statistics.
pub fn run_temporal_pipeline(cfg: &PipelineConfig) -> Result<ZigzagDiagram> {
    let graph = match cfg.kind {
        InputKind::EdgeList => read_edge_csv_path(&cfg.input)?,
        InputKind::Schedule => read_schedule_csv_path(&cfg.input)?,
        InputKind::TimeSeries => {
            return Err(Error::validation(
                "time-series input requires the ordinal partition pipeline",
            ))
        }
    };
    run_graph_pipeline(cfg, &graph)
}

/// Result of the ordinal-partition pipeline, for callers that need the
/// intermediate stages.
pub struct OpnPipelineOutput {
    pub tau: usize,
    pub network: TemporalGraph,
    pub diagram: ZigzagDiagram,
}

/// Ordinal partition pipeline: time series to transition network to diagram.
///
/// The window width is `window_mult * tau` samples converted to seconds.
/// The network is also exported as a temporal edge CSV so the generic
/// pipeline can replay it.
pub fn run_opn_pipeline(cfg: &PipelineConfig) -> Result<OpnPipelineOutput> {
    let file = std::fs::File::open(&cfg.input)
        .map_err(|e| Error::io(cfg.input.display().to_string(), e))?;
    let series = read_timeseries_csv(file, cfg.fs)?;
    run_opn_pipeline_on(cfg, &series)
}

/// Same as [`run_opn_pipeline`] but on an in-memory series.
pub fn run_opn_pipeline_on(
    cfg: &PipelineConfig,
    series: &TimeSeries,
) -> Result<OpnPipelineOutput> {
    let tau = match cfg.opn.tau {
        Some(t) => t,
        None => mspe_delay(series, cfg.opn.m, cfg.opn.tau_max)?,
    };
    let ps = permutation_sequence(series, cfg.opn.m, tau)?;
    if ps.perms.windows(2).all(|w| w[0] == w[1]) {
        // A constant ordinal pattern has no transitions: the network and
        // its diagram are empty, and all outputs are header-only.
        let network = TemporalGraph::empty();
        let diagram = ZigzagDiagram::empty(cfg.p_max);
        if let Some(path) = &cfg.out_opn_edges {
            write_file(path, &network.to_edge_csv_string())?;
        }
        if let Some(path) = &cfg.out_diagram {
            write_file(path, &diagram.to_csv_string(DiagramCoords::Time))?;
        }
        if let Some(path) = &cfg.out_stats {
            write_file(path, "t,N_cc,S_cc_mean,C_d_mean,C_b_mean,C_c_mean\n")?;
        }
        return Ok(OpnPipelineOutput {
            tau,
            network,
            diagram,
        });
    }
    let network = build_opn(&ps, series.sample_rate)?;
    if let Some(path) = &cfg.out_opn_edges {
        write_file(path, &network.to_edge_csv_string())?;
    }
    let width = cfg
        .width
        .unwrap_or(cfg.opn.window_mult * tau as f64 / series.sample_rate);
    let graph_cfg = PipelineConfig {
        width: Some(width),
        ..cfg.clone()
    };
    let diagram = run_graph_pipeline(&graph_cfg, &network)?;
    Ok(OpnPipelineOutput {
        tau,
        network,
        diagram,
    })
}
