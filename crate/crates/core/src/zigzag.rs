//! Zigzag persistence of alternating inclusion sequences of simplicial
//! complexes.
//!
//! The sequence alternates snapshot complexes and union complexes,
//!
//! ```text
//! K_0  ⊆  K_{0,1}  ⊇  K_1  ⊆  K_{1,2}  ⊇  ...  ⊆  K_{n-1,n}  ⊇  K_n
//! ```
//!
//! and the engine walks it left to right, turning each arrow into a batch of
//! single-simplex insertions or deletions. For every homology dimension it
//! maintains
//!
//! * a set of *active classes* — cycle representatives whose classes form a
//!   basis of the current homology, each tagged with its birth position and
//!   whether it was born at an insertion (forward) or a deletion (backward);
//! * a *boundary echelon* — a pivot-indexed basis of the boundary space,
//!   each column paired with a witness chain one dimension up whose boundary
//!   it is.
//!
//! A simplex insertion either creates a cycle (new forward-born class) or
//! makes an existing class bound; a deletion either removes a cycle through
//! the deleted simplex or splits the boundary space (new backward-born
//! class). When a class must die the victim is chosen so that the remaining
//! representatives can be repaired by additions that respect birth order:
//! forward-born classes may absorb anything born no later than themselves
//! and any backward-born class, while backward-born classes may only absorb
//! backward-born classes born no earlier. At an insertion the victim is the
//! youngest forward-born participant (falling back to the oldest
//! backward-born); at a deletion it is the youngest backward-born class
//! whose representative uses the simplex (falling back to the oldest
//! forward-born). Classes born and dying inside one batch never existed at a
//! sequence position and are dropped.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{vietoris_rips, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::windowing::SnapshotSequence;

/// The alternating sequence of complexes with position labels.
///
/// Position `2i` holds the snapshot complex `K_i` labeled `t_i`; position
/// `2i+1` holds the union complex labeled `(t_i + t_{i+1}) / 2`. `end_time`
/// closes features still alive at the last position.
#[derive(Debug, Clone)]
pub struct ZigzagSequence {
    complexes: Vec<SimplicialComplex>,
    position_labels: Vec<f64>,
    end_time: f64,
}

impl ZigzagSequence {
    /// Wraps a raw alternating sequence, validating its shape and the
    /// inclusion invariant at every arrow.
    pub fn new(
        complexes: Vec<SimplicialComplex>,
        position_labels: Vec<f64>,
        end_time: f64,
    ) -> Result<Self> {
        if complexes.is_empty() || complexes.len() % 2 == 0 {
            return Err(Error::validation(format!(
                "zigzag sequence needs an odd number of positions, got {}",
                complexes.len()
            )));
        }
        if complexes.len() != position_labels.len() {
            return Err(Error::validation(
                "zigzag position labels do not match the number of complexes",
            ));
        }
        if position_labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(
                "zigzag position labels must strictly increase",
            ));
        }
        if position_labels.last().is_some_and(|&l| l >= end_time) {
            return Err(Error::validation(
                "end_time must exceed the final position label",
            ));
        }
        for q in 0..complexes.len() - 1 {
            let (small, big) = if q % 2 == 0 {
                (&complexes[q], &complexes[q + 1])
            } else {
                (&complexes[q + 1], &complexes[q])
            };
            if !small.is_subcomplex_of(big) {
                return Err(Error::structural(format!(
                    "inclusion violated between positions {q} and {}",
                    q + 1
                )));
            }
        }
        Ok(ZigzagSequence {
            complexes,
            position_labels,
            end_time,
        })
    }

    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn position_labels(&self) -> &[f64] {
        &self.position_labels
    }

    pub fn end_time(&self) -> f64 {
        self.end_time
    }

    pub fn position_count(&self) -> usize {
        self.complexes.len()
    }

    pub fn snapshot_count(&self) -> usize {
        self.complexes.len() / 2 + 1
    }

    /// Time label of a position, with the one-past-the-end sentinel mapping
    /// to `end_time`.
    pub fn label(&self, position: usize) -> f64 {
        if position < self.position_labels.len() {
            self.position_labels[position]
        } else {
            self.end_time
        }
    }
}

/// Applies the geodesic Vietoris-Rips construction to every snapshot and
/// union of a window sequence.
///
/// Inclusions hold position to position because the construction is
/// monotone under subgraphs.
pub fn build_zigzag(seq: &SnapshotSequence, r: usize, d_max: usize) -> Result<ZigzagSequence> {
    let n = seq.snapshots.len();
    if n == 0 {
        return Err(Error::validation("snapshot sequence is empty"));
    }
    let complexes: Vec<SimplicialComplex> = (0..2 * n - 1)
        .into_par_iter()
        .map(|pos| {
            if pos % 2 == 0 {
                vietoris_rips(&seq.snapshots[pos / 2], r, d_max)
            } else {
                vietoris_rips(&seq.unions[pos / 2], r, d_max)
            }
        })
        .collect();
    ZigzagSequence::new(complexes, seq.position_labels(), seq.end_time)
}

/// One point of a zigzag persistence diagram.
///
/// `birth_position` is the first position at which the class exists;
/// `death_position` is the first position at which it does not (the
/// one-past-the-end sentinel for classes surviving the whole sequence).
/// Time coordinates are the labels of those positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub birth_position: usize,
    pub death_position: usize,
}

/// A persistence diagram in both time and index coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZigzagDiagram {
    pub p_max: usize,
    pub position_count: usize,
    pub end_time: f64,
    pairs: Vec<PersistencePair>,
}

/// Coordinate convention for diagram export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramCoords {
    /// Window time labels (default).
    Time,
    /// Snapshot indices: position `p` maps to `p / 2`, so snapshots land on
    /// integers, unions on half-integers, and survivors die at `n + 0.5`.
    Index,
}

impl ZigzagDiagram {
    /// Diagram of an empty sequence: no positions, no pairs.
    pub fn empty(p_max: usize) -> Self {
        ZigzagDiagram {
            p_max,
            position_count: 0,
            end_time: 0.0,
            pairs: Vec::new(),
        }
    }

    pub fn pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    pub fn pairs_in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(move |p| p.dim == dim)
    }

    /// Index coordinate of a position: `position / 2` as a float.
    pub fn index_coord(position: usize) -> f64 {
        position as f64 / 2.0
    }

    /// Number of intervals of dimension `dim` alive at `position`.
    pub fn intervals_containing(&self, dim: usize, position: usize) -> usize {
        self.pairs
            .iter()
            .filter(|p| {
                p.dim == dim && p.birth_position <= position && position < p.death_position
            })
            .count()
    }

    /// Writes the diagram as CSV with a fixed column set and ordering.
    pub fn write_csv<W: std::io::Write>(
        &self,
        mut w: W,
        coords: DiagramCoords,
    ) -> std::io::Result<()> {
        use std::fmt::Write as _;
        let mut buf = String::from("dimension,birth,death,birth_position,death_position\n");
        for p in &self.pairs {
            let (birth, death) = match coords {
                DiagramCoords::Time => (p.birth, p.death),
                DiagramCoords::Index => (
                    Self::index_coord(p.birth_position),
                    Self::index_coord(p.death_position),
                ),
            };
            let _ = writeln!(
                buf,
                "{},{},{},{},{}",
                p.dim, birth, death, p.birth_position, p.death_position
            );
        }
        w.write_all(buf.as_bytes())
    }

    pub fn to_csv_string(&self, coords: DiagramCoords) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out, coords).expect("in-memory write");
        String::from_utf8(out).expect("utf8")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("diagram json: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BirthKind {
    Forward,
    Backward,
}

#[derive(Debug)]
struct Active {
    birth_position: usize,
    kind: BirthKind,
    seq: u64,
    pending: bool,
    chain: BitVec,
    dead: bool,
}

#[derive(Debug)]
struct BoundaryEntry {
    chain: BitVec,
    witness: BitVec,
}

#[derive(Debug, Default)]
struct ShadowRow {
    chain: BitVec,
    combo: BitVec,
}

/// Lazily built echelon over the live active representatives of one
/// dimension, valid for the duration of one batch. `combo` tracks which
/// active slots each row is composed of, modulo the boundary space.
#[derive(Debug, Default)]
struct Shadow {
    rows: BTreeMap<usize, ShadowRow>,
}

#[derive(Debug, Default)]
struct DimState {
    actives: Vec<Active>,
    boundaries: BTreeMap<usize, BoundaryEntry>,
    shadow: Option<Shadow>,
}

#[derive(Debug, Default)]
struct Arena {
    ids: HashMap<Simplex, usize>,
    tuples: Vec<Simplex>,
    alive: Vec<bool>,
}

impl Arena {
    fn intern(&mut self, simplex: &[u32]) -> usize {
        if let Some(&id) = self.ids.get(simplex) {
            return id;
        }
        let id = self.tuples.len();
        self.ids.insert(simplex.to_vec(), id);
        self.tuples.push(simplex.to_vec());
        self.alive.push(false);
        id
    }

    fn id_of(&self, simplex: &[u32]) -> Option<usize> {
        self.ids.get(simplex).copied()
    }
}

struct Engine {
    dims: Vec<DimState>,
    arenas: Vec<Arena>,
    seq_counter: u64,
    /// Emitted intervals: (dim, birth_position, death_position).
    emitted: Vec<(usize, usize, usize)>,
}

impl Engine {
    fn new(d_max: usize) -> Self {
        Engine {
            dims: (0..=d_max).map(|_| DimState::default()).collect(),
            arenas: (0..=d_max).map(|_| Arena::default()).collect(),
            seq_counter: 0,
            emitted: Vec::new(),
        }
    }

    fn next_seq(&mut self) -> u64 {
        self.seq_counter += 1;
        self.seq_counter
    }

    fn begin_batch(&mut self) {
        for dim in &mut self.dims {
            dim.shadow = None;
        }
    }

    fn end_batch(&mut self) {
        for dim in &mut self.dims {
            dim.shadow = None;
            for a in &mut dim.actives {
                a.pending = false;
            }
            dim.actives.retain(|a| !a.dead);
        }
    }

    fn spawn_active(&mut self, dim: usize, kind: BirthKind, target: usize, chain: BitVec) {
        let seq = self.next_seq();
        let state = &mut self.dims[dim];
        debug_assert!(!chain.is_zero());
        if let Some(shadow) = state.shadow.as_mut() {
            let slot = state.actives.len();
            append_shadow_row(shadow, &state.boundaries, slot, &chain);
        }
        state.actives.push(Active {
            birth_position: target,
            kind,
            seq,
            pending: true,
            chain,
            dead: false,
        });
    }

    fn kill_active(&mut self, dim: usize, slot: usize, target: usize) {
        let a = &mut self.dims[dim].actives[slot];
        debug_assert!(!a.dead);
        a.dead = true;
        if !a.pending {
            self.emitted.push((dim, a.birth_position, target));
        }
    }

    /// Single simplex insertion crossing into `target`.
    fn insert_simplex(&mut self, dim: usize, simplex: &[u32], target: usize) -> Result<()> {
        let id = self.arenas[dim].intern(simplex);
        debug_assert!(!self.arenas[dim].alive[id], "double insertion");
        self.arenas[dim].alive[id] = true;

        if dim == 0 {
            self.spawn_active(0, BirthKind::Forward, target, BitVec::singleton(id));
            return Ok(());
        }

        // Reduce the boundary of the new simplex against the boundary
        // echelon one dimension down, accumulating the witness.
        let mut residue = BitVec::new();
        for skip in 0..simplex.len() {
            let face: Simplex = simplex
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            let face_id = self.arenas[dim - 1].id_of(&face).ok_or_else(|| {
                Error::structural(format!("face {face:?} of {simplex:?} missing from complex"))
            })?;
            debug_assert!(self.arenas[dim - 1].alive[face_id]);
            residue.flip(face_id);
        }
        let mut witness = BitVec::singleton(id);
        reduce_by_boundaries(&self.dims[dim - 1].boundaries, &mut residue, &mut witness);

        if residue.is_zero() {
            // The new simplex closes a cycle one dimension up.
            self.spawn_active(dim, BirthKind::Forward, target, witness);
            return Ok(());
        }

        // The new simplex kills a class one dimension down.
        self.ensure_shadow(dim - 1);
        let combo = express_over_actives(&self.dims[dim - 1], &residue)?;
        let victim = self.pick_insertion_victim(dim - 1, &combo)?;
        self.kill_active(dim - 1, victim, target);
        self.absorb_relation_into_shadow(dim - 1, victim, &combo);
        self.insert_boundary_entry(dim - 1, residue, witness);
        Ok(())
    }

    /// Single simplex deletion crossing into `target`.
    fn delete_simplex(&mut self, dim: usize, simplex: &[u32], target: usize) -> Result<()> {
        let id = self.arenas[dim].id_of(simplex).ok_or_else(|| {
            Error::structural(format!("deleted simplex {simplex:?} was never inserted"))
        })?;
        debug_assert!(self.arenas[dim].alive[id], "double deletion");
        self.arenas[dim].alive[id] = false;

        let users: Vec<usize> = self.dims[dim]
            .actives
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.dead && a.chain.get(id))
            .map(|(slot, _)| slot)
            .collect();

        if !users.is_empty() {
            // The simplex participates in a cycle: one class of this
            // dimension dies. Survivors clear the simplex by absorbing the
            // victim representative.
            let victim = self.pick_deletion_victim(dim, &users);
            let victim_chain = std::mem::take(&mut self.dims[dim].actives[victim].chain);
            if dim >= 1 {
                for entry in self.dims[dim - 1].boundaries.values_mut() {
                    if entry.witness.get(id) {
                        entry.witness.xor_assign(&victim_chain);
                    }
                }
            }
            for &slot in &users {
                if slot != victim {
                    self.dims[dim].actives[slot].chain.xor_assign(&victim_chain);
                    debug_assert!(!self.dims[dim].actives[slot].chain.get(id));
                }
            }
            self.kill_active(dim, victim, target);
            return Ok(());
        }

        // No cycle through the simplex: the boundary space one dimension
        // down shrinks and the class of the orphaned boundary column is
        // born backward.
        if dim == 0 {
            return Err(Error::structural(
                "isolated vertex missing from every component representative",
            ));
        }
        let touched: Vec<usize> = self.dims[dim - 1]
            .boundaries
            .iter()
            .filter(|(_, e)| e.witness.get(id))
            .map(|(&pivot, _)| pivot)
            .collect();
        let Some(&star_pivot) = touched.first() else {
            return Err(Error::structural(
                "deleted simplex absent from cycles and witnesses alike",
            ));
        };
        let star = self.dims[dim - 1]
            .boundaries
            .remove(&star_pivot)
            .expect("entry exists");
        let mut requeue = Vec::new();
        for pivot in touched.into_iter().filter(|&p| p != star_pivot) {
            let mut entry = self.dims[dim - 1]
                .boundaries
                .remove(&pivot)
                .expect("entry exists");
            entry.chain.xor_assign(&star.chain);
            entry.witness.xor_assign(&star.witness);
            debug_assert!(!entry.witness.get(id));
            requeue.push(entry);
        }
        for entry in requeue {
            self.insert_boundary_entry(dim - 1, entry.chain, entry.witness);
        }
        self.spawn_active(dim - 1, BirthKind::Backward, target, star.chain);
        Ok(())
    }

    /// Victim of an insertion kill: the youngest forward-born participant,
    /// or the oldest backward-born one if none are forward.
    fn pick_insertion_victim(&self, dim: usize, combo: &BitVec) -> Result<usize> {
        let actives = &self.dims[dim].actives;
        let mut best_forward: Option<(usize, (usize, u64))> = None;
        let mut best_backward: Option<(usize, (usize, u64))> = None;
        for slot in combo.ones() {
            let a = &actives[slot];
            debug_assert!(!a.dead);
            let key = (a.birth_position, a.seq);
            match a.kind {
                BirthKind::Forward => {
                    if best_forward.is_none_or(|(_, k)| key > k) {
                        best_forward = Some((slot, key));
                    }
                }
                BirthKind::Backward => {
                    if best_backward.is_none_or(|(_, k)| key < k) {
                        best_backward = Some((slot, key));
                    }
                }
            }
        }
        best_forward
            .or(best_backward)
            .map(|(slot, _)| slot)
            .ok_or_else(|| Error::structural("insertion relation has no participants"))
    }

    /// Victim of a deletion kill: the youngest backward-born user, or the
    /// oldest forward-born one if none are backward.
    fn pick_deletion_victim(&self, dim: usize, users: &[usize]) -> usize {
        let actives = &self.dims[dim].actives;
        let mut best_backward: Option<(usize, (usize, u64))> = None;
        let mut best_forward: Option<(usize, (usize, u64))> = None;
        for &slot in users {
            let a = &actives[slot];
            let key = (a.birth_position, a.seq);
            match a.kind {
                BirthKind::Backward => {
                    if best_backward.is_none_or(|(_, k)| key > k) {
                        best_backward = Some((slot, key));
                    }
                }
                BirthKind::Forward => {
                    if best_forward.is_none_or(|(_, k)| key < k) {
                        best_forward = Some((slot, key));
                    }
                }
            }
        }
        best_backward
            .or(best_forward)
            .map(|(slot, _)| slot)
            .expect("deletion users nonempty")
    }

    fn ensure_shadow(&mut self, dim: usize) {
        if self.dims[dim].shadow.is_some() {
            return;
        }
        let mut shadow = Shadow::default();
        let state = &self.dims[dim];
        for (slot, a) in state.actives.iter().enumerate() {
            if a.dead {
                continue;
            }
            append_shadow_row(&mut shadow, &state.boundaries, slot, &a.chain);
        }
        self.dims[dim].shadow = Some(shadow);
    }

    /// After killing `victim` with relation `combo`, rewrites shadow combos
    /// so no row references the dead slot, then retires the row that became
    /// dependent once the relation chain joined the boundary space.
    fn absorb_relation_into_shadow(&mut self, dim: usize, victim: usize, combo: &BitVec) {
        let state = &mut self.dims[dim];
        let shadow = state.shadow.as_mut().expect("shadow built");
        for row in shadow.rows.values_mut() {
            if row.combo.get(victim) {
                row.combo.xor_assign(combo);
                debug_assert!(!row.combo.get(victim));
            }
        }
    }

    /// Adds a reduced boundary column (with witness) to the echelon and
    /// drops the shadow row whose pivot it claims.
    fn insert_boundary_entry(&mut self, dim: usize, chain: BitVec, witness: BitVec) {
        let state = &mut self.dims[dim];
        let mut chain = chain;
        let mut witness = witness;
        loop {
            let Some(pivot) = chain.pivot() else {
                // Dependent on existing boundary columns; nothing to add.
                return;
            };
            if let Some(existing) = state.boundaries.get(&pivot) {
                chain.xor_assign(&existing.chain);
                witness.xor_assign(&existing.witness);
                continue;
            }
            // Keep the shadow echelon pivot-disjoint from the boundary
            // echelon: fold the new column into the row it collides with and
            // retire that row once it turns dependent.
            if let Some(shadow) = state.shadow.as_mut() {
                if let Some(mut row) = shadow.rows.remove(&pivot) {
                    row.chain.xor_assign(&chain);
                    reinsert_shadow_row(shadow, &state.boundaries, row, &chain);
                }
            }
            state.boundaries.insert(pivot, BoundaryEntry { chain, witness });
            return;
        }
    }
}

fn reduce_by_boundaries(
    boundaries: &BTreeMap<usize, BoundaryEntry>,
    chain: &mut BitVec,
    witness: &mut BitVec,
) {
    while let Some(pivot) = chain.pivot() {
        match boundaries.get(&pivot) {
            Some(entry) => {
                chain.xor_assign(&entry.chain);
                witness.xor_assign(&entry.witness);
            }
            None => break,
        }
    }
}

/// Expresses a boundary-reduced cycle over the live actives, returning the
/// participating slot set.
fn express_over_actives(state: &DimState, residue: &BitVec) -> Result<BitVec> {
    let shadow = state.shadow.as_ref().expect("shadow built");
    let mut cur = residue.clone();
    let mut combo = BitVec::new();
    while let Some(pivot) = cur.pivot() {
        if let Some(entry) = state.boundaries.get(&pivot) {
            cur.xor_assign(&entry.chain);
        } else if let Some(row) = shadow.rows.get(&pivot) {
            cur.xor_assign(&row.chain);
            combo.xor_assign(&row.combo);
        } else {
            return Err(Error::structural(
                "cycle not spanned by active classes and boundaries",
            ));
        }
    }
    if combo.is_zero() {
        return Err(Error::structural(
            "killing relation reduced to the boundary space",
        ));
    }
    Ok(combo)
}

fn append_shadow_row(
    shadow: &mut Shadow,
    boundaries: &BTreeMap<usize, BoundaryEntry>,
    slot: usize,
    chain: &BitVec,
) {
    let mut row_chain = chain.clone();
    let mut combo = BitVec::singleton(slot);
    loop {
        let Some(pivot) = row_chain.pivot() else {
            // An active representative dependent on boundaries and earlier
            // actives would contradict the basis invariant.
            panic!("active class representative is homologically dependent");
        };
        if let Some(entry) = boundaries.get(&pivot) {
            row_chain.xor_assign(&entry.chain);
        } else if let Some(row) = shadow.rows.get(&pivot) {
            row_chain.xor_assign(&row.chain);
            combo.xor_assign(&row.combo);
        } else {
            shadow.rows.insert(
                pivot,
                ShadowRow {
                    chain: row_chain,
                    combo,
                },
            );
            return;
        }
    }
}

/// Re-reduces a shadow row displaced by a new boundary column. The row must
/// turn fully dependent — its direction is exactly the one the new boundary
/// column absorbed — so it is dropped.
fn reinsert_shadow_row(
    shadow: &mut Shadow,
    boundaries: &BTreeMap<usize, BoundaryEntry>,
    mut row: ShadowRow,
    new_chain: &BitVec,
) {
    loop {
        let Some(pivot) = row.chain.pivot() else {
            return;
        };
        if let Some(entry) = boundaries.get(&pivot) {
            row.chain.xor_assign(&entry.chain);
        } else if new_chain.pivot() == Some(pivot) {
            row.chain.xor_assign(new_chain);
        } else if let Some(other) = shadow.rows.get(&pivot) {
            let other_chain = other.chain.clone();
            let other_combo = other.combo.clone();
            row.chain.xor_assign(&other_chain);
            row.combo.xor_assign(&other_combo);
        } else {
            shadow.rows.insert(pivot, row);
            return;
        }
    }
}

/// Computes the zigzag persistence diagram of an alternating sequence.
///
/// The interval-count contract ties the output to static homology: at every
/// position `q` and dimension `p <= p_max`, the number of intervals whose
/// position span contains `q` equals the Betti number of the complex there.
pub fn zigzag_persistence(zz: &ZigzagSequence, p_max: usize) -> Result<ZigzagDiagram> {
    let d_max = zz
        .complexes()
        .iter()
        .map(SimplicialComplex::d_max)
        .max()
        .unwrap_or(0);
    if d_max < p_max + 1 {
        return Err(Error::validation(format!(
            "zigzag_persistence requires complexes built with d_max >= p_max + 1 \
             (d_max {d_max}, p_max {p_max})"
        )));
    }
    let mut engine = Engine::new(d_max);

    // Arrival at position 0: insert the first complex wholesale.
    engine.begin_batch();
    let first = &zz.complexes()[0];
    for dim in 0..=first.d_max() {
        for s in first.simplices(dim) {
            engine.insert_simplex(dim, s, 0)?;
        }
    }
    engine.end_batch();

    for q in 0..zz.position_count() - 1 {
        let target = q + 1;
        let forward = q % 2 == 0;
        engine.begin_batch();
        if forward {
            let (small, big) = (&zz.complexes()[q], &zz.complexes()[target]);
            for dim in 0..=big.d_max() {
                for s in diff(big.simplices(dim), small.simplices(dim)) {
                    engine.insert_simplex(dim, s, target)?;
                }
            }
        } else {
            let (big, small) = (&zz.complexes()[q], &zz.complexes()[target]);
            for dim in (0..=big.d_max()).rev() {
                let mut doomed = diff(big.simplices(dim), small.simplices(dim));
                doomed.reverse();
                for s in doomed {
                    engine.delete_simplex(dim, s, target)?;
                }
            }
        }
        engine.end_batch();
    }

    // Survivors die at the end of the last window.
    let sentinel = zz.position_count();
    let mut emitted = engine.emitted;
    for (dim, state) in engine.dims.iter().enumerate() {
        for a in &state.actives {
            if !a.dead {
                emitted.push((dim, a.birth_position, sentinel));
            }
        }
    }

    let mut pairs: Vec<PersistencePair> = emitted
        .into_iter()
        .filter(|&(dim, _, _)| dim <= p_max)
        .map(|(dim, birth_position, death_position)| PersistencePair {
            dim,
            birth: zz.label(birth_position),
            death: zz.label(death_position),
            birth_position,
            death_position,
        })
        .collect();
    pairs.sort_by(|a, b| {
        (a.dim, a.birth, a.death, a.birth_position, a.death_position)
            .partial_cmp(&(b.dim, b.birth, b.death, b.birth_position, b.death_position))
            .expect("labels are finite")
    });
    for p in &pairs {
        debug_assert!(p.birth < p.death, "zero-length pair {p:?}");
    }
    Ok(ZigzagDiagram {
        p_max,
        position_count: zz.position_count(),
        end_time: zz.end_time(),
        pairs,
    })
}

/// Sorted-set difference `a \ b` over sorted simplex slices.
fn diff<'a>(a: &'a [Simplex], b: &[Simplex]) -> Vec<&'a Simplex> {
    let mut out = Vec::new();
    let mut bi = 0;
    for s in a {
        while bi < b.len() && b[bi] < *s {
            bi += 1;
        }
        if !(bi < b.len() && b[bi] == *s) {
            out.push(s);
        }
    }
    out
}
