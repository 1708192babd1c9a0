//! Closed time intervals and normalized interval sets.
//!
//! Intervals are closed on both ends and a lone instant is the degenerate
//! interval `[t, t]`. Boundary touch counts as overlap throughout the crate,
//! so an edge active on `[0, 1]` is picked up by a window `[1, 2]`.

use serde::{Deserialize, Serialize};

/// A closed interval `[start, end]` with `start <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    pub fn new(start: f64, end: f64) -> Self {
        debug_assert!(start <= end);
        Interval { start, end }
    }

    /// Degenerate interval for a single instant.
    pub fn instant(t: f64) -> Self {
        Interval { start: t, end: t }
    }

    /// Closed-interval intersection test; touching endpoints intersect.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

/// A sorted set of pairwise-disjoint closed intervals.
///
/// Overlapping or touching intervals are merged on insertion, so the
/// normalized form is unique for a given union of time sets.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new() -> Self {
        IntervalSet::default()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// Earliest instant covered, if any.
    pub fn min_start(&self) -> Option<f64> {
        self.intervals.first().map(|iv| iv.start)
    }

    /// Latest instant covered, if any.
    pub fn max_end(&self) -> Option<f64> {
        self.intervals.iter().map(|iv| iv.end).fold(None, |acc, e| {
            Some(match acc {
                Some(a) if a >= e => a,
                _ => e,
            })
        })
    }

    /// Inserts an interval, merging with any interval it overlaps or touches.
    pub fn insert(&mut self, iv: Interval) {
        let mut merged = iv;
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut placed = false;
        for &cur in &self.intervals {
            if cur.intersects(&merged) {
                merged.start = merged.start.min(cur.start);
                merged.end = merged.end.max(cur.end);
            } else if cur.end < merged.start {
                out.push(cur);
            } else {
                if !placed {
                    out.push(merged);
                    placed = true;
                }
                out.push(cur);
            }
        }
        if !placed {
            out.push(merged);
        }
        self.intervals = out;
    }

    /// True when any member interval intersects `window`.
    pub fn intersects(&self, window: &Interval) -> bool {
        // Disjoint + sorted by start means ends are sorted too, so the only
        // candidate is the first interval ending at or after the window.
        let idx = self.intervals.partition_point(|iv| iv.end < window.start);
        self.intervals
            .get(idx)
            .is_some_and(|iv| iv.start <= window.end)
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        let mut set = IntervalSet::new();
        for iv in iter {
            set.insert(iv);
        }
        set
    }
}
