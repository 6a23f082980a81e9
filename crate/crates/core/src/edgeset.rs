//! Edge subsets as single-word bitsets.
//!
//! Bit `j` is set when edge `j` is a member. Networks are capped at
//! [`MAX_EDGES`] edges so every subset fits in one `u64`.
//!
//! Sets are ordered shortlex: smaller sets first, equal sizes compared
//! lexicographically by their ascending index lists. This is the canonical
//! order of every emitted path and cut family.

use std::fmt;

use serde::{Serialize, Serializer};

pub const MAX_EDGES: usize = 63;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(u64);

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                std::cmp::Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // the lowest differing index belongs to self
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        EdgeSet(mask)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_EDGES);
        EdgeSet((1u64 << n) - 1)
    }

    pub fn singleton(j: usize) -> Self {
        debug_assert!(j < MAX_EDGES);
        EdgeSet(1u64 << j)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, j: usize) -> bool {
        j < 64 && self.0 >> j & 1 == 1
    }

    pub fn insert(&mut self, j: usize) {
        self.0 |= 1u64 << j;
    }

    pub fn remove(&mut self, j: usize) {
        self.0 &= !(1u64 << j);
    }

    pub const fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub const fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }

    /// Complement relative to the universe `{0, ..., n-1}`.
    pub fn complement(self, n: usize) -> EdgeSet {
        EdgeSet(!self.0 & Self::full(n).0)
    }

    pub const fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: EdgeSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Iterates over all `2^n` subsets of `{0, ..., n-1}` in mask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = EdgeSet> {
        debug_assert!(n <= MAX_EDGES);
        (0..1u64 << n).map(EdgeSet)
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let j = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(j)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for EdgeSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = EdgeSet::EMPTY;
        for j in iter {
            set.insert(j);
        }
        set
    }
}

/// Displays with one-based edge labels, `{e1,e3}`.
impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, j) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "e{}", j + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as the sorted list of zero-based edge indices.
impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
