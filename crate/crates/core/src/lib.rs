//! Zigzag persistence for temporal networks.
//!
//! The pipeline: ingest a temporal graph (edge activation intervals, trip
//! schedules, or ordinal partition networks built from a time series), slice
//! it into sliding-window snapshot graphs interleaved with their unions,
//! lift each graph to a geodesic Vietoris-Rips complex, and decompose the
//! resulting alternating inclusion sequence into a zigzag persistence
//! diagram. Classical connectivity and centrality statistics are computed
//! per snapshot as comparison baselines.

pub mod cli;
pub mod complex;
pub mod dynamics;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod graphstats;
pub mod interval;
pub mod opn;
pub mod pipeline;
pub mod temporal_graph;
pub mod windowing;
pub mod zigzag;

pub use error::{Error, Result};
