//! Fixed-width bitsets over the vertex indices `0..n` of a host graph.
//!
//! Every set that flows through the verifier and the solvers is one of
//! these; intersection cardinality against a neighborhood row is the single
//! hottest operation in the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

const WORD_BITS: usize = 64;

/// A set of vertex indices drawn from `0..capacity()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    nbits: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over a host graph with `n` vertices.
    pub fn empty(n: usize) -> Self {
        VertexSet {
            nbits: n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for w in &mut set.words {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    /// Builds a set from indices, panicking on out-of-range members.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut set = Self::empty(n);
        for v in indices {
            set.insert(v);
        }
        set
    }

    fn trim(&mut self) {
        let used = self.nbits % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    /// Number of vertices of the host graph (not the set cardinality).
    pub fn capacity(&self) -> usize {
        self.nbits
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.nbits);
        self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Inserts `v`; returns true if it was absent.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.nbits, "vertex {v} out of range 0..{}", self.nbits);
        let word = &mut self.words[v / WORD_BITS];
        let mask = 1u64 << (v % WORD_BITS);
        let was_absent = *word & mask == 0;
        *word |= mask;
        was_absent
    }

    /// Removes `v`; returns true if it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        assert!(v < self.nbits, "vertex {v} out of range 0..{}", self.nbits);
        let word = &mut self.words[v / WORD_BITS];
        let mask = 1u64 << (v % WORD_BITS);
        let was_present = *word & mask != 0;
        *word &= !mask;
        was_present
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Set cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Copies the contents of `other` into `self` (capacities must match).
    pub fn copy_from(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words.copy_from_slice(&other.words);
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Orders sets like their ascending member sequences, so `{0,3} < {1,2}`
    /// and a proper prefix sorts first.
    pub fn cmp_lex(&self, other: &VertexSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = VertexSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert!(s.contains(0) && s.contains(129) && !s.contains(64));
        assert_eq!(s.len(), 2);
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.to_vec(), vec![129]);
    }

    #[test]
    fn full_respects_capacity() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
    }

    #[test]
    fn intersection_len_matches_naive() {
        let a = VertexSet::from_indices(100, [1, 5, 64, 65, 99]);
        let b = VertexSet::from_indices(100, [5, 64, 98, 99]);
        assert_eq!(a.intersection_len(&b), 3);
    }

    #[test]
    fn lex_order_is_sequence_order() {
        let a = VertexSet::from_indices(8, [0, 3]);
        let b = VertexSet::from_indices(8, [1, 2]);
        assert_eq!(a.cmp_lex(&b), Ordering::Less);
        let c = VertexSet::from_indices(8, [0]);
        assert_eq!(c.cmp_lex(&a), Ordering::Less);
        assert_eq!(a.cmp_lex(&a), Ordering::Equal);
    }

    #[test]
    fn serializes_as_sorted_index_array() {
        let s = VertexSet::from_indices(10, [7, 2, 4]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,4,7]");
    }
}
