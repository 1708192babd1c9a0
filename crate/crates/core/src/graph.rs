//! Static snapshot graphs and elementary graph algorithms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::temporal_graph::{EdgeKey, VertexId};

/// An undirected, unweighted static graph on interned vertex ids.
///
/// Vertices are edge-induced plus any explicitly added isolated vertices;
/// both sets are kept sorted so iteration order is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StaticGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<EdgeKey>,
}

impl StaticGraph {
    pub fn new() -> Self {
        StaticGraph::default()
    }

    pub fn from_edges<I: IntoIterator<Item = EdgeKey>>(edges: I) -> Self {
        let mut g = StaticGraph::new();
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    pub fn add_edge(&mut self, e: EdgeKey) {
        self.vertices.insert(e.a);
        self.vertices.insert(e.b);
        self.edges.insert(e);
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_edge(&self, e: &EdgeKey) -> bool {
        self.edges.contains(e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Set-union of two graphs (vertices and edges).
    pub fn union(&self, other: &StaticGraph) -> StaticGraph {
        StaticGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// True when every vertex and edge of `self` appears in `other`.
    pub fn is_subgraph_of(&self, other: &StaticGraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Adjacency lists in vertex order, as local indices `0..n`.
    pub fn adjacency(&self) -> (Vec<VertexId>, Vec<Vec<usize>>) {
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); verts.len()];
        for e in &self.edges {
            let (i, j) = (index[&e.a], index[&e.b]);
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        (verts, adj)
    }
}

/// Hop-count distances from `source` (local index) to every vertex.
///
/// Unreachable vertices get `usize::MAX`.
pub fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn component_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}
