//! Shared test support: an independent zigzag interval oracle, deterministic
//! random instance generators, and the engineered loop fixtures.
//!
//! The oracle never touches the production zigzag engine. It computes
//! homology bases per position by plain GF(2) elimination, matrices of the
//! inclusion-induced maps, and then interval multiplicities from the
//! through-ranks of composed linear relations:
//!
//! `r(a, b)` = number of intervals containing the whole span `[a, b]`
//!          = dim proj_b(R) - dim (R ∩ (0 × V_b))
//!
//! where `R ⊆ V_a × V_b` is the composite of the arrow relations, and
//!
//! `mult[a, b] = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1)`.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use ziggraph::complex::{Simplex, SimplicialComplex};
use ziggraph::gf2::BitVec;
use ziggraph::zigzag::{ZigzagDiagram, ZigzagSequence};

/// Deterministic 64-bit LCG for reproducible random instances.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    pub fn below(&mut self, n: u64) -> u64 {
        (self.next_u64() >> 11) % n
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

// ---------------------------------------------------------------------------
// Homology bases and arrow matrices
// ---------------------------------------------------------------------------

struct PositionBasis {
    /// Homology basis chains over the global arena of p-simplices.
    h_chains: Vec<BitVec>,
    /// Echelon over the boundary space: pivot -> chain.
    b_echelon: BTreeMap<usize, BitVec>,
    /// Echelon over homology representatives: pivot -> (chain, basis index).
    h_echelon: BTreeMap<usize, (BitVec, usize)>,
}

struct GlobalArena {
    ids: HashMap<Simplex, usize>,
}

impl GlobalArena {
    fn new() -> Self {
        GlobalArena {
            ids: HashMap::new(),
        }
    }

    fn id(&mut self, s: &[u32]) -> usize {
        let next = self.ids.len();
        *self.ids.entry(s.to_vec()).or_insert(next)
    }
}

fn reduce(chain: &mut BitVec, echelon: &BTreeMap<usize, BitVec>) {
    while let Some(p) = chain.pivot() {
        match echelon.get(&p) {
            Some(e) => chain.xor_assign(e),
            None => break,
        }
    }
}

/// Homology basis of dimension `p` for one complex, chains indexed by the
/// shared arena so they are comparable across positions.
fn position_basis(k: &SimplicialComplex, p: usize, arena: &mut GlobalArena) -> PositionBasis {
    // Boundary space: reduce boundaries of (p+1)-simplices into an echelon.
    let mut b_echelon: BTreeMap<usize, BitVec> = BTreeMap::new();
    for s in k.simplices(p + 1) {
        let mut col = BitVec::new();
        for skip in 0..s.len() {
            let face: Simplex = s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            col.flip(arena.id(&face));
        }
        reduce(&mut col, &b_echelon);
        if let Some(pivot) = col.pivot() {
            b_echelon.insert(pivot, col);
        }
    }

    // Cycle space: kernel of the boundary map on p-chains, tracked as
    // combinations of the p-simplices themselves.
    let p_simplices = k.simplices(p);
    let mut kernel: Vec<BitVec> = Vec::new();
    if p == 0 {
        for s in p_simplices {
            kernel.push(BitVec::singleton(arena.id(s)));
        }
    } else {
        // Column reduction of the boundary matrix with combination tracking.
        let mut echelon: BTreeMap<usize, (BitVec, BitVec)> = BTreeMap::new();
        for s in p_simplices {
            let mut col = BitVec::new();
            for skip in 0..s.len() {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                col.flip(arena.id(&face));
            }
            let mut combo = BitVec::singleton(arena.id(s));
            loop {
                match col.pivot() {
                    None => {
                        kernel.push(combo);
                        break;
                    }
                    Some(pivot) => match echelon.get(&pivot) {
                        Some((e_col, e_combo)) => {
                            col.xor_assign(e_col);
                            combo.xor_assign(e_combo);
                        }
                        None => {
                            echelon.insert(pivot, (col, combo));
                            break;
                        }
                    },
                }
            }
        }
    }

    // Homology basis: kernel vectors surviving reduction by boundaries and
    // previously accepted representatives. Both echelons are consulted at
    // every step since interior bits can resurface as pivots.
    let mut h_chains = Vec::new();
    let mut h_echelon: BTreeMap<usize, (BitVec, usize)> = BTreeMap::new();
    for mut z in kernel {
        let orig = z.clone();
        loop {
            match z.pivot() {
                None => break,
                Some(pivot) => {
                    if let Some(e) = b_echelon.get(&pivot) {
                        z.xor_assign(&e.clone());
                    } else if let Some((e, _)) = h_echelon.get(&pivot) {
                        z.xor_assign(&e.clone());
                    } else {
                        let idx = h_chains.len();
                        h_echelon.insert(pivot, (z, idx));
                        h_chains.push(orig);
                        break;
                    }
                }
            }
        }
    }
    PositionBasis {
        h_chains,
        b_echelon,
        h_echelon,
    }
}

/// Coefficient mask of a cycle in a position's homology basis.
fn express(chain: &BitVec, basis: &PositionBasis) -> u64 {
    let mut z = chain.clone();
    reduce(&mut z, &basis.b_echelon);
    let mut mask = 0u64;
    while let Some(pivot) = z.pivot() {
        match basis.b_echelon.get(&pivot) {
            Some(e) => {
                z.xor_assign(e);
                continue;
            }
            None => {}
        }
        let (e, idx) = basis
            .h_echelon
            .get(&pivot)
            .expect("cycle expressible in homology basis");
        assert!(*idx < 64, "oracle supports dimension < 64");
        mask ^= 1 << idx;
        z.xor_assign(&e.clone());
    }
    mask
}

/// A zigzag module in one homology dimension: pointwise dimensions and
/// arrow matrices (columns are images of basis vectors as bitmasks).
pub struct ZigzagModule {
    pub dims: Vec<usize>,
    /// Arrow t: forward matrix `V_t -> V_{t+1}` for even t, backward matrix
    /// `V_{t+1} -> V_t` for odd t.
    pub arrows: Vec<Vec<u64>>,
}

pub fn module_of(zz: &ZigzagSequence, p: usize) -> ZigzagModule {
    let mut arena = GlobalArena::new();
    let bases: Vec<PositionBasis> = zz
        .complexes()
        .iter()
        .map(|k| position_basis(k, p, &mut arena))
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.h_chains.len()).collect();
    let mut arrows = Vec::new();
    for t in 0..bases.len() - 1 {
        let (src, dst) = if t % 2 == 0 {
            (&bases[t], &bases[t + 1])
        } else {
            (&bases[t + 1], &bases[t])
        };
        let matrix: Vec<u64> = src
            .h_chains
            .iter()
            .map(|z| express(z, dst))
            .collect();
        arrows.push(matrix);
    }
    ZigzagModule { dims, arrows }
}

// ---------------------------------------------------------------------------
// Relation composition and interval multiplicities
// ---------------------------------------------------------------------------

fn pack(x: u64, y: u64) -> u128 {
    ((x as u128) << 64) | y as u128
}

fn rank_u128(vectors: &[u128]) -> usize {
    let mut pivots: Vec<u128> = Vec::new();
    let mut rank = 0;
    for &v in vectors {
        let mut cur = v;
        for &p in &pivots {
            let high = 127 - p.leading_zeros();
            if cur >> high & 1 == 1 {
                cur ^= p;
            }
        }
        if cur != 0 {
            pivots.push(cur);
            pivots.sort_unstable_by(|a, b| b.cmp(a));
            rank += 1;
        }
    }
    rank
}

fn apply(matrix: &[u64], v: u64) -> u64 {
    let mut out = 0;
    for (j, &col) in matrix.iter().enumerate() {
        if v >> j & 1 == 1 {
            out ^= col;
        }
    }
    out
}

/// `r(a, b)` for all `a <= b`: the number of intervals containing `[a, b]`.
fn through_ranks(module: &ZigzagModule) -> Vec<Vec<usize>> {
    let m = module.dims.len();
    let mut r = vec![vec![0usize; m]; m];
    for a in 0..m {
        assert!(module.dims[a] <= 64);
        // Start from the identity relation on V_a.
        let mut relation: Vec<u128> = (0..module.dims[a])
            .map(|i| pack(1 << i, 1 << i))
            .collect();
        r[a][a] = module.dims[a];
        for b in a..m - 1 {
            let matrix = &module.arrows[b];
            if b % 2 == 0 {
                // Forward arrow: map the right leg through the matrix.
                relation = relation
                    .iter()
                    .map(|&v| pack((v >> 64) as u64, apply(matrix, v as u64)))
                    .collect();
            } else {
                // Backward arrow g: V_{b+1} -> V_b. New relation is the
                // preimage of span(relation) under (id, g).
                relation = backward_compose(&relation, matrix, module.dims[b + 1]);
            }
            // Through-rank: dim proj_y - (dim R - dim proj_x).
            let dim_r = rank_u128(&relation);
            let rank_x = rank_u128(
                &relation
                    .iter()
                    .map(|&v| (v >> 64) << 64)
                    .collect::<Vec<_>>(),
            );
            let rank_y = rank_u128(
                &relation
                    .iter()
                    .map(|&v| v & ((1u128 << 64) - 1))
                    .collect::<Vec<_>>(),
            );
            r[a][b + 1] = rank_y - (dim_r - rank_x);
        }
    }
    r
}

/// Kernel of `(x, w) -> (x, g w) mod span(rel)`, as packed pairs.
fn backward_compose(rel: &[u128], matrix: &[u64], dim_next: usize) -> Vec<u128> {
    // Echelonize the relation span for membership reduction.
    let mut rel_echelon: Vec<u128> = Vec::new();
    for &v in rel {
        let mut cur = v;
        for &p in &rel_echelon {
            let high = 127 - p.leading_zeros();
            if cur >> high & 1 == 1 {
                cur ^= p;
            }
        }
        if cur != 0 {
            rel_echelon.push(cur);
            rel_echelon.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let reduce_by_rel = |mut v: u128| {
        for &p in &rel_echelon {
            let high = 127 - p.leading_zeros();
            if v >> high & 1 == 1 {
                v ^= p;
            }
        }
        v
    };

    // Domain generators: x-legs then w-legs; eliminate, collecting kernel
    // combinations. x combos live in the high half of the combo word.
    let mut kernel = Vec::new();
    let mut echelon: Vec<(u128, u128)> = Vec::new(); // (value, combo)
    let mut push = |value: u128, combo: u128, kernel: &mut Vec<u128>| {
        let mut value = reduce_by_rel(value);
        let mut combo = combo;
        loop {
            if value == 0 {
                kernel.push(combo);
                return;
            }
            let high = 127 - value.leading_zeros();
            match echelon.iter().find(|(v, _)| 127 - v.leading_zeros() == high) {
                Some(&(v, c)) => {
                    value ^= v;
                    combo ^= c;
                }
                None => {
                    echelon.push((value, combo));
                    echelon.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                    return;
                }
            }
        }
    };
    for i in 0..64 {
        // Only x-generators that can matter: those present in the relation
        // x-support; but harmless to include all 64 — skip zero work.
        let present = rel.iter().any(|&v| (v >> 64) as u64 >> i & 1 == 1);
        if !present {
            continue;
        }
        push(pack(1 << i, 0), pack(1 << i, 0), &mut kernel);
    }
    for j in 0..dim_next {
        push(pack(0, apply(matrix, 1 << j)), pack(0, 1 << j), &mut kernel);
    }
    kernel
}

/// Interval multiset of one dimension: map from `(first, last)` position
/// span to multiplicity.
pub fn oracle_intervals(zz: &ZigzagSequence, p: usize) -> BTreeMap<(usize, usize), usize> {
    let module = module_of(zz, p);
    let m = module.dims.len();
    let r = through_ranks(&module);
    let get = |a: isize, b: usize| -> isize {
        if a < 0 || b >= m {
            0
        } else {
            r[a as usize][b] as isize
        }
    };
    let mut out = BTreeMap::new();
    for a in 0..m {
        for b in a..m {
            let mult = get(a as isize, b)
                - get(a as isize - 1, b)
                - get(a as isize, b + 1)
                + get(a as isize - 1, b + 1);
            assert!(mult >= 0, "negative multiplicity at [{a}, {b}]");
            if mult > 0 {
                out.insert((a, b), mult as usize);
            }
        }
    }
    // Pointwise consistency of the measure with the dimensions.
    for q in 0..m {
        let total: usize = out
            .iter()
            .filter(|((a, b), _)| *a <= q && q <= *b)
            .map(|(_, &c)| c)
            .sum();
        assert_eq!(total, module.dims[q], "oracle measure mismatch at {q}");
    }
    out
}

/// Engine interval multiset in the oracle's span convention.
pub fn engine_intervals(diagram: &ZigzagDiagram, p: usize) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for pair in diagram.pairs_in_dim(p) {
        *out.entry((pair.birth_position, pair.death_position - 1))
            .or_insert(0) += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Instance generators and engineered fixtures
// ---------------------------------------------------------------------------

/// Random temporal graph: up to `max_vertices` vertices, random activation
/// intervals in [0, 10].
pub fn random_temporal_graph(rng: &mut Lcg, max_vertices: u64) -> ziggraph::temporal_graph::TemporalGraph {
    loop {
        let n = 2 + rng.below(max_vertices - 1);
        let mut rows = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !rng.chance(1, 3) {
                    continue;
                }
                let spans = 1 + rng.below(2);
                for _ in 0..spans {
                    let start = rng.uniform() * 9.0;
                    let len = rng.uniform() * 3.0;
                    rows.push((u.to_string(), v.to_string(), start, start + len));
                }
            }
        }
        if let Ok(g) = ziggraph::temporal_graph::ingest_edge_list(rows) {
            return g;
        }
    }
}

/// Random face-closed complex on vertices `0..n`: random edges plus some
/// filled triangles.
pub fn random_complex(rng: &mut Lcg, n: u64, d_max: usize) -> SimplicialComplex {
    let mut gens: Vec<Simplex> = Vec::new();
    for v in 0..n {
        if rng.chance(2, 3) {
            gens.push(vec![v as u32]);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(1, 3) {
                gens.push(vec![u as u32, v as u32]);
            }
        }
    }
    if d_max >= 2 {
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    if rng.chance(1, 6) {
                        gens.push(vec![u as u32, v as u32, w as u32]);
                    }
                }
            }
        }
    }
    SimplicialComplex::from_simplices(gens, d_max).unwrap_or_else(|_| SimplicialComplex::empty(d_max))
}

/// Random alternating sequence built from random snapshots and their unions.
pub fn random_direct_zigzag(rng: &mut Lcg, snapshots: usize, n_vertices: u64) -> ZigzagSequence {
    let snaps: Vec<SimplicialComplex> = (0..snapshots)
        .map(|_| random_complex(rng, n_vertices, 2))
        .collect();
    let mut complexes = Vec::new();
    for i in 0..snaps.len() {
        complexes.push(snaps[i].clone());
        if i + 1 < snaps.len() {
            complexes.push(snaps[i].union(&snaps[i + 1]));
        }
    }
    let labels: Vec<f64> = (0..complexes.len()).map(|i| i as f64).collect();
    let end = complexes.len() as f64;
    ZigzagSequence::new(complexes, labels, end).expect("union zigzag is valid")
}

// ---------------------------------------------------------------------------
// Naive centrality oracle
// ---------------------------------------------------------------------------

const INF: usize = usize::MAX / 4;

fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut dist = vec![vec![INF; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let dist = floyd_warshall(n, edges);
    dist[0].iter().all(|&d| d < INF)
}

fn enumerate_shortest_paths(
    cur: usize,
    target: usize,
    adj: &[Vec<bool>],
    dist: &[Vec<usize>],
    stack: &mut Vec<usize>,
    paths: &mut Vec<Vec<usize>>,
) {
    if cur == target {
        paths.push(stack.clone());
        return;
    }
    for w in 0..adj.len() {
        if adj[cur][w] && dist[w][target] + 1 == dist[cur][target] {
            stack.push(w);
            enumerate_shortest_paths(w, target, adj, dist, stack, paths);
            stack.pop();
        }
    }
}

/// Standardized betweenness and generalized closeness by brute force:
/// Floyd-Warshall distances and explicit enumeration of every shortest path.
pub fn naive_centralities(n: usize, edges: &[(usize, usize)]) -> (Vec<f64>, Vec<f64>) {
    let dist = floyd_warshall(n, edges);
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }

    let mut through = vec![0.0f64; n];
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] >= INF {
                continue;
            }
            let mut paths = Vec::new();
            let mut stack = vec![s];
            enumerate_shortest_paths(s, t, &adj, &dist, &mut stack, &mut paths);
            let total = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    through[v] += 1.0 / total;
                }
            }
        }
    }
    let betweenness: Vec<f64> = if n >= 3 {
        let norm = (n as f64 - 1.0) * (n as f64 - 2.0) / 2.0;
        through.iter().map(|&x| x / norm).collect()
    } else {
        vec![0.0; n]
    };

    let closeness: Vec<f64> = (0..n)
        .map(|v| {
            let mut reach = 0usize;
            let mut total = 0usize;
            for u in 0..n {
                if u != v && dist[v][u] < INF {
                    reach += 1;
                    total += dist[v][u];
                }
            }
            if reach == 0 || n < 2 {
                0.0
            } else {
                let r = reach as f64;
                (r / (n as f64 - 1.0)) * (r / total as f64)
            }
        })
        .collect();
    (betweenness, closeness)
}

// ---------------------------------------------------------------------------
// Synthetic schedule and helpers for the large-scale criteria
// ---------------------------------------------------------------------------

/// Deterministic synthetic weekly timetable: 500 stations, 5000 trips with
/// 5-to-35-minute rides spread over 7 days.
pub fn synthetic_weekly_schedule() -> Vec<(String, String, String, String)> {
    let mut rows = Vec::with_capacity(5000);
    for k in 0..5000u64 {
        let origin = (k * 73) % 500;
        let hop = 1 + (k * 37) % 7;
        let dest = (origin + hop) % 500;
        let departure = (k * 7919) % (604_800 - 2_400);
        let duration = 300 + (k * 131) % 1800;
        rows.push((
            format!("s{origin}"),
            format!("s{dest}"),
            departure.to_string(),
            (departure + duration).to_string(),
        ));
    }
    rows
}

/// Exact 1-D 2-means: the threshold between the two clusters minimizing the
/// within-cluster sum of squares. Deterministic.
pub fn two_means_threshold(values: &[f64]) -> f64 {
    assert!(values.len() >= 2);
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let prefix: Vec<f64> = std::iter::once(0.0)
        .chain(sorted.iter().scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        }))
        .collect();
    let prefix_sq: Vec<f64> = std::iter::once(0.0)
        .chain(sorted.iter().scan(0.0, |acc, &x| {
            *acc += x * x;
            Some(*acc)
        }))
        .collect();
    let sse = |lo: usize, hi: usize| -> f64 {
        let count = (hi - lo) as f64;
        let sum = prefix[hi] - prefix[lo];
        let sumsq = prefix_sq[hi] - prefix_sq[lo];
        sumsq - sum * sum / count
    };
    let n = sorted.len();
    let mut best = (f64::INFINITY, 1);
    for split in 1..n {
        let total = sse(0, split) + sse(split, n);
        if total < best.0 {
            best = (total, split);
        }
    }
    (sorted[best.1 - 1] + sorted[best.1]) / 2.0
}

/// The four engineered loop fixtures with their expected one-dimensional
/// interval counts (1, 2, 1, 1).
///
/// The frame is a square 0-1-2-3 with apex 4; the roof edges are 2-4 and
/// 3-4 and the roof triangle is {2, 3, 4}. The second fixture reroutes the
/// long loop while the open roof cycle is present, splitting its interval;
/// the fourth is the same filtration with the roof filled, which fuses the
/// interval back together.
pub fn loop_rerouting_fixtures() -> Vec<(ZigzagSequence, usize)> {
    let cx = |gens: &[&[u32]]| {
        SimplicialComplex::from_simplices(gens.iter().map(|s| s.to_vec()), 2).unwrap()
    };
    let square = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
    let square_half_roof = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3], &[2, 4]]);
    let square_roof_open = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3], &[2, 4], &[3, 4]]);
    let square_roof_filled = cx(&[&[0, 1], &[1, 2], &[0, 3], &[2, 3, 4]]);
    let pentagon = cx(&[&[0, 1], &[1, 2], &[0, 3], &[2, 4], &[3, 4]]);

    let seq = |ks: Vec<SimplicialComplex>| {
        let labels: Vec<f64> = (0..ks.len()).map(|i| i as f64).collect();
        let end = ks.len() as f64;
        ZigzagSequence::new(ks, labels, end).expect("fixture is a valid zigzag")
    };

    vec![
        (
            seq(vec![
                square.clone(),
                square_half_roof.clone(),
                square_half_roof.clone(),
                square_half_roof.clone(),
                square.clone(),
            ]),
            1,
        ),
        (
            seq(vec![
                square.clone(),
                square_roof_open.clone(),
                pentagon.clone(),
                pentagon.clone(),
                pentagon.clone(),
            ]),
            2,
        ),
        (
            seq(vec![
                square.clone(),
                square_roof_filled.clone(),
                square_roof_filled.clone(),
                square_roof_filled.clone(),
                square.clone(),
            ]),
            1,
        ),
        (
            seq(vec![
                square,
                square_roof_filled,
                pentagon.clone(),
                pentagon.clone(),
                pentagon,
            ]),
            1,
        ),
    ]
}
