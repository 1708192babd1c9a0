//! Bit-packed GF(2) vectors and column reduction.
//!
//! Chains over GF(2) are stored as dense bitsets (`Vec<u64>` words). All
//! operations are deterministic, which the pipelines rely on for
//! byte-identical reruns.

/// A growable bitset representing a vector over GF(2).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn new() -> Self {
        BitVec::default()
    }

    pub fn singleton(bit: usize) -> Self {
        let mut v = BitVec::new();
        v.set(bit);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = usize>>(bits: I) -> Self {
        let mut v = BitVec::new();
        for b in bits {
            v.flip(b);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, bit: usize) -> bool {
        self.words
            .get(bit / 64)
            .is_some_and(|w| (w >> (bit % 64)) & 1 == 1)
    }

    pub fn set(&mut self, bit: usize) {
        let word = bit / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1u64 << (bit % 64);
    }

    pub fn flip(&mut self, bit: usize) {
        let word = bit / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] ^= 1u64 << (bit % 64);
    }

    /// XOR-assign (addition over GF(2)), growing as needed.
    pub fn xor_assign(&mut self, other: &BitVec) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    /// Index of the highest set bit (the reduction pivot), if any.
    pub fn pivot(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

/// Rank of a GF(2) matrix given as columns, by pivot elimination.
pub fn column_rank(columns: &[BitVec]) -> usize {
    let mut echelon: std::collections::BTreeMap<usize, BitVec> = std::collections::BTreeMap::new();
    for col in columns {
        let mut cur = col.clone();
        while let Some(p) = cur.pivot() {
            match echelon.get(&p) {
                Some(basis) => cur.xor_assign(basis),
                None => {
                    echelon.insert(p, cur);
                    break;
                }
            }
        }
    }
    echelon.len()
}
