//! Simplicial complexes from graphs: geodesic Vietoris-Rips construction and
//! a static homology (Betti number) oracle over GF(2).
//!
//! The Betti oracle computes ranks of boundary matrices directly and shares
//! no state with the zigzag engine, so it can independently cross-check any
//! position of a zigzag sequence.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{column_rank, BitVec};
use crate::graph::{bfs_distances, StaticGraph};
use crate::temporal_graph::VertexId;

/// A simplex as a strictly increasing tuple of raw vertex ids.
pub type Simplex = Vec<u32>;

/// A finite simplicial complex with simplices retained up to `d_max`.
///
/// Per dimension, simplices are kept sorted and deduplicated; the complex is
/// closed under faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    d_max: usize,
}

impl SimplicialComplex {
    /// Empty complex with the given dimension cap.
    pub fn empty(d_max: usize) -> Self {
        SimplicialComplex {
            simplices: vec![Vec::new(); d_max + 1],
            d_max,
        }
    }

    /// Builds a face-closed complex from arbitrary generating simplices.
    ///
    /// All faces of every generator are inserted; simplices above `d_max`
    /// are rejected.
    pub fn from_simplices<I>(gens: I, d_max: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut complex = SimplicialComplex::empty(d_max);
        for gen in gens {
            let mut s = gen;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::validation("empty simplex"));
            }
            if s.len() > d_max + 1 {
                return Err(Error::validation(format!(
                    "simplex {s:?} exceeds dimension cap {d_max}"
                )));
            }
            insert_with_faces(&mut complex.simplices, &s);
        }
        for dim in &mut complex.simplices {
            dim.sort_unstable();
            dim.dedup();
        }
        Ok(complex)
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// Simplices of one dimension, sorted.
    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.iter().all(Vec::is_empty)
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        let dim = simplex.len() - 1;
        self.simplices(dim).binary_search_by(|s| s.as_slice().cmp(simplex)).is_ok()
    }

    /// Setwise union of two complexes; the result keeps the larger cap.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let d_max = self.d_max.max(other.d_max);
        let mut out = SimplicialComplex::empty(d_max);
        for dim in 0..=d_max {
            let mut merged: Vec<Simplex> = self
                .simplices(dim)
                .iter()
                .chain(other.simplices(dim))
                .cloned()
                .collect();
            merged.sort_unstable();
            merged.dedup();
            out.simplices[dim] = merged;
        }
        out
    }

    /// True when every simplex of `self` lies in `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().enumerate().all(|(dim, list)| {
            list.iter()
                .all(|s| dim < other.simplices.len() && other.contains(s))
        })
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(dim, list)| {
                let n = list.len() as i64;
                if dim % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Debug text form: one simplex per line, vertices comma-joined.
    pub fn to_debug_text(&self) -> String {
        let mut out = String::new();
        for list in &self.simplices {
            for s in list {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                out.push_str(&parts.join(","));
                out.push('\n');
            }
        }
        out
    }
}

fn insert_with_faces(dims: &mut [Vec<Simplex>], simplex: &[u32]) {
    let dim = simplex.len() - 1;
    dims[dim].push(simplex.to_vec());
    if dim == 0 {
        return;
    }
    for skip in 0..simplex.len() {
        let face: Simplex = simplex
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &v)| v)
            .collect();
        insert_with_faces(dims, &face);
    }
}

/// All-pairs unweighted shortest-path distances of a static graph.
#[derive(Debug, Clone)]
pub struct GeodesicDistances {
    verts: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    dist: Vec<Vec<usize>>,
}

impl GeodesicDistances {
    /// Hop distance, `None` across components.
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let (i, j) = (*self.index.get(&u)?, *self.index.get(&v)?);
        let d = self.dist[i][j];
        (d != usize::MAX).then_some(d)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }
}

/// BFS hop-count distances between every pair of graph vertices.
pub fn geodesic_distances(graph: &StaticGraph) -> GeodesicDistances {
    let (verts, adj) = graph.adjacency();
    let dist: Vec<Vec<usize>> = (0..verts.len())
        .map(|s| bfs_distances(&adj, s))
        .collect();
    let index = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    GeodesicDistances { verts, index, dist }
}

/// Geodesic Vietoris-Rips complex of a graph at scale `r`.
///
/// A simplex is included when all pairwise hop distances are at most `r`;
/// `r = 0` yields the vertex set only and `r = 1` the clique complex of the
/// graph itself. Simplices above `d_max` are not generated.
pub fn vietoris_rips(graph: &StaticGraph, r: usize, d_max: usize) -> SimplicialComplex {
    let mut complex = SimplicialComplex::empty(d_max);
    let (verts, adj) = graph.adjacency();
    let n = verts.len();
    for &v in &verts {
        complex.simplices[0].push(vec![v.0]);
    }
    if r == 0 || d_max == 0 || n < 2 {
        return complex;
    }

    // Proximity lists: for each vertex, the later-ordered vertices within r.
    let mut within: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        let d = bfs_distances(&adj, s);
        for (t, &dt) in d.iter().enumerate().skip(s + 1) {
            if dt != usize::MAX && dt <= r {
                within[s].push(t);
            }
        }
    }

    // Grow cliques of the proximity graph in lexicographic vertex order.
    let mut stack: Vec<usize> = Vec::new();
    for s in 0..n {
        stack.push(s);
        extend_cliques(&mut complex, &verts, &within, &mut stack, d_max);
        stack.pop();
    }
    for dim in &mut complex.simplices {
        dim.sort_unstable();
    }
    complex
}

fn extend_cliques(
    complex: &mut SimplicialComplex,
    verts: &[VertexId],
    within: &[Vec<usize>],
    clique: &mut Vec<usize>,
    d_max: usize,
) {
    if clique.len() == d_max + 1 {
        return;
    }
    let last = *clique.last().unwrap();
    for &cand in &within[last] {
        if clique[..clique.len() - 1]
            .iter()
            .all(|&m| within[m].binary_search(&cand).is_ok())
        {
            clique.push(cand);
            let simplex: Simplex = clique.iter().map(|&i| verts[i].0).collect();
            complex.simplices[clique.len() - 1].push(simplex);
            extend_cliques(complex, verts, within, clique, d_max);
            clique.pop();
        }
    }
}

/// Betti numbers `β_0..β_{p_max}` of a face-closed complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub betti: Vec<usize>,
}

/// Computes `β_p` for `p = 0..=p_max` by GF(2) boundary-matrix ranks:
/// `β_p = #p-simplices − rank ∂_p − rank ∂_{p+1}`.
///
/// Requires `d_max >= p_max + 1` so that boundaries from dimension
/// `p_max + 1` are counted.
pub fn betti_numbers(complex: &SimplicialComplex, p_max: usize) -> Result<BettiVector> {
    if complex.d_max() < p_max + 1 {
        return Err(Error::validation(format!(
            "betti_numbers requires d_max >= p_max + 1 (d_max {}, p_max {})",
            complex.d_max(),
            p_max
        )));
    }
    let mut ranks = Vec::with_capacity(p_max + 2);
    for k in 0..=p_max + 1 {
        ranks.push(boundary_rank(complex, k));
    }
    let betti = (0..=p_max)
        .map(|p| complex.count(p) - ranks[p] - ranks[p + 1])
        .collect();
    Ok(BettiVector { betti })
}

/// Rank of the boundary map from dimension `k` to `k - 1`.
fn boundary_rank(complex: &SimplicialComplex, k: usize) -> usize {
    if k == 0 || complex.count(k) == 0 {
        return 0;
    }
    let faces = complex.simplices(k - 1);
    let face_index: BTreeMap<&[u32], usize> = faces
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let columns: Vec<BitVec> = complex
        .simplices(k)
        .iter()
        .map(|s| {
            let mut col = BitVec::new();
            for skip in 0..s.len() {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                col.flip(face_index[face.as_slice()]);
            }
            col
        })
        .collect();
    column_rank(&columns)
}
