//! Classical connectivity and centrality statistics per snapshot graph.
//!
//! These are the comparison baselines: component counts and sizes plus mean
//! standardized degree, betweenness, and closeness centralities.

use rayon::prelude::*;

use crate::graph::{bfs_distances, StaticGraph, UnionFind};
use crate::windowing::SnapshotSequence;

/// Per-snapshot statistics row.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    /// Snapshot time label.
    pub t: f64,
    pub component_count: usize,
    pub mean_component_size: f64,
    pub mean_degree_centrality: f64,
    pub mean_betweenness_centrality: f64,
    pub mean_closeness_centrality: f64,
}

/// Statistics for every snapshot of a window sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsSeries {
    pub rows: Vec<StatsRow>,
}

impl StatsSeries {
    /// CSV with columns `t,N_cc,S_cc_mean,C_d_mean,C_b_mean,C_c_mean`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        use std::fmt::Write as _;
        let mut buf = String::from("t,N_cc,S_cc_mean,C_d_mean,C_b_mean,C_c_mean\n");
        for r in &self.rows {
            let _ = writeln!(
                buf,
                "{},{},{},{},{},{}",
                r.t,
                r.component_count,
                r.mean_component_size,
                r.mean_degree_centrality,
                r.mean_betweenness_centrality,
                r.mean_closeness_centrality
            );
        }
        w.write_all(buf.as_bytes())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("in-memory write");
        String::from_utf8(out).expect("utf8")
    }
}

/// Component count and mean component size (in nodes).
///
/// The empty graph yields `(0, 0.0)`.
pub fn connectivity_stats(graph: &StaticGraph) -> (usize, f64) {
    let n = graph.vertex_count();
    if n == 0 {
        return (0, 0.0);
    }
    let (verts, _) = graph.adjacency();
    let index: std::collections::BTreeMap<_, _> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(n);
    for e in graph.edges() {
        uf.union(index[&e.a], index[&e.b]);
    }
    let count = uf.component_count();
    (count, n as f64 / count as f64)
}

/// Standardized degree centrality per vertex: `deg(v) / (n - 1)`.
///
/// Vertices follow the order of [`StaticGraph::adjacency`].
pub fn degree_centrality(graph: &StaticGraph) -> Vec<f64> {
    let n = graph.vertex_count();
    if n < 2 {
        return vec![0.0; n];
    }
    let (_, adj) = graph.adjacency();
    adj.iter()
        .map(|nb| nb.len() as f64 / (n as f64 - 1.0))
        .collect()
}

/// Standardized betweenness centrality per vertex, Brandes accumulation
/// with the `(n-1)(n-2)/2` normalization.
pub fn betweenness_centrality(graph: &StaticGraph) -> Vec<f64> {
    let n = graph.vertex_count();
    if n < 3 {
        return vec![0.0; n];
    }
    let (_, adj) = graph.adjacency();
    let nf = n as f64;
    let norm = (nf - 1.0) * (nf - 2.0) / 2.0;
    brandes_betweenness(&adj).into_iter().map(|b| b / norm).collect()
}

/// Generalized closeness centrality per vertex, scaled by the reachable
/// fraction so it stays meaningful on disconnected graphs:
/// `((n_v - 1) / (n - 1)) * ((n_v - 1) / Σ d(v, u))` over the `n_v`
/// vertices of `v`'s component.
pub fn closeness_centrality(graph: &StaticGraph) -> Vec<f64> {
    let n = graph.vertex_count();
    if n < 2 {
        return vec![0.0; n];
    }
    let (_, adj) = graph.adjacency();
    let nf = n as f64;
    (0..n)
        .map(|v| {
            let dist = bfs_distances(&adj, v);
            let mut reach = 0usize;
            let mut total = 0usize;
            for (u, &d) in dist.iter().enumerate() {
                if u != v && d != usize::MAX {
                    reach += 1;
                    total += d;
                }
            }
            if reach > 0 {
                let r = reach as f64;
                (r / (nf - 1.0)) * (r / total as f64)
            } else {
                0.0
            }
        })
        .collect()
}

/// Mean standardized degree, betweenness, and closeness centralities.
///
/// Graphs with fewer than two vertices score zero on all three.
pub fn centrality_stats(graph: &StaticGraph) -> (f64, f64, f64) {
    let n = graph.vertex_count();
    if n < 2 {
        return (0.0, 0.0, 0.0);
    }
    let nf = n as f64;
    let mean = |v: Vec<f64>| v.iter().sum::<f64>() / nf;
    (
        mean(degree_centrality(graph)),
        mean(betweenness_centrality(graph)),
        mean(closeness_centrality(graph)),
    )
}

/// Brandes' accumulation of unnormalized betweenness on an undirected graph.
///
/// Each unordered pair is counted once.
fn brandes_betweenness(adj: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    let mut centrality = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        stack.clear();
        for p in &mut preds {
            p.clear();
        }
        let mut sigma = vec![0.0f64; n];
        sigma[s] = 1.0;
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    // Each pair was visited from both endpoints.
    for c in &mut centrality {
        *c /= 2.0;
    }
    centrality
}

/// Computes the statistics row for every snapshot, in parallel.
pub fn stats_series(seq: &SnapshotSequence) -> StatsSeries {
    let rows = seq
        .snapshots
        .par_iter()
        .zip(seq.snapshot_labels.par_iter())
        .map(|(g, &t)| {
            let (component_count, mean_component_size) = connectivity_stats(g);
            let (cd, cb, cc) = centrality_stats(g);
            StatsRow {
                t,
                component_count,
                mean_component_size,
                mean_degree_centrality: cd,
                mean_betweenness_centrality: cb,
                mean_closeness_centrality: cc,
            }
        })
        .collect();
    StatsSeries { rows }
}
