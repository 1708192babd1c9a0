//! Sliding-window plans and snapshot/union graph sequences.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::StaticGraph;
use crate::interval::Interval;
use crate::temporal_graph::TemporalGraph;

/// A sliding-window schedule over a time domain.
///
/// `width` is the FULL window width; window `i` is
/// `[center_i - width/2, center_i + width/2]` and consecutive centers differ
/// by `width * (1 - overlap)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowPlan {
    pub centers: Vec<f64>,
    pub width: f64,
    pub overlap: f64,
}

impl WindowPlan {
    pub fn step(&self) -> f64 {
        self.width * (1.0 - self.overlap)
    }

    pub fn window(&self, i: usize) -> Interval {
        let c = self.centers[i];
        Interval::new(c - self.width / 2.0, c + self.width / 2.0)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Right edge of the last window.
    pub fn end_time(&self) -> f64 {
        self.centers.last().map_or(0.0, |c| c + self.width / 2.0)
    }
}

/// Lays out windows so the first window's left edge sits at `t_min` and
/// centers advance by the step until a window's right edge reaches `t_max`.
///
/// The last window may overrun `t_max`; it is kept untruncated so the final
/// data point is always covered.
pub fn make_plan(time_domain: (f64, f64), width: f64, overlap: f64) -> Result<WindowPlan> {
    if !(width > 0.0) {
        return Err(Error::validation(format!(
            "window width must be positive, got {width}"
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::validation(format!(
            "overlap must lie in [0, 1), got {overlap}"
        )));
    }
    let (t_min, t_max) = time_domain;
    if !(t_min.is_finite() && t_max.is_finite() && t_min <= t_max) {
        return Err(Error::validation(format!(
            "invalid time domain [{t_min}, {t_max}]"
        )));
    }
    let step = width * (1.0 - overlap);
    let mut centers = Vec::new();
    let mut c = t_min + width / 2.0;
    loop {
        centers.push(c);
        if c + width / 2.0 >= t_max {
            break;
        }
        c += step;
    }
    Ok(WindowPlan {
        centers,
        width,
        overlap,
    })
}

/// Snapshot graphs `G_0..G_n`, their adjacent unions, and time labels.
///
/// Label of snapshot `i` is its center `t_i`; label of union `(i, i+1)` is
/// the midpoint `(t_i + t_{i+1}) / 2`. `end_time` is the right edge of the
/// last window and closes any feature still alive at the final snapshot.
#[derive(Debug, Clone)]
pub struct SnapshotSequence {
    pub snapshots: Vec<StaticGraph>,
    pub unions: Vec<StaticGraph>,
    pub snapshot_labels: Vec<f64>,
    pub union_labels: Vec<f64>,
    pub end_time: f64,
}

impl SnapshotSequence {
    /// Time labels position by position: snapshot, union, snapshot, ...
    pub fn position_labels(&self) -> Vec<f64> {
        let mut labels = Vec::with_capacity(self.snapshots.len() + self.unions.len());
        for i in 0..self.snapshots.len() {
            labels.push(self.snapshot_labels[i]);
            if i < self.unions.len() {
                labels.push(self.union_labels[i]);
            }
        }
        labels
    }
}

/// Builds the snapshot and union graphs for every window of `plan`.
///
/// Window graphs are independent, so they are computed in parallel and
/// assembled in window order.
pub fn build_snapshots(g: &TemporalGraph, plan: &WindowPlan) -> SnapshotSequence {
    let snapshots: Vec<StaticGraph> = (0..plan.len())
        .into_par_iter()
        .map(|i| StaticGraph::from_edges(g.edges_active_in(plan.window(i))))
        .collect();
    let unions: Vec<StaticGraph> = snapshots
        .par_windows(2)
        .map(|pair| pair[0].union(&pair[1]))
        .collect();
    let snapshot_labels = plan.centers.clone();
    let union_labels = plan
        .centers
        .windows(2)
        .map(|w| (w[0] + w[1]) / 2.0)
        .collect();
    SnapshotSequence {
        snapshots,
        unions,
        snapshot_labels,
        union_labels,
        end_time: plan.end_time(),
    }
}
