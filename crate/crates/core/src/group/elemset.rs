use alloc::vec::Vec;
use core::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A subset of a materialized group, kept both as a bitset and as a sorted
/// index list.
#[derive(Clone)]
pub struct ElemSet {
    bits: FixedBitSet,
    list: Vec<usize>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            bits: FixedBitSet::with_capacity(universe),
            list: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet {
            bits,
            list: (0..universe).collect(),
        }
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        for i in items {
            bits.insert(i);
        }
        Self::from_bits(bits)
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        let list = bits.ones().collect();
        ElemSet { bits, list }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Sorted element indices.
    pub fn as_slice(&self) -> &[usize] {
        &self.list
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.list.iter().copied()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn first(&self) -> Option<usize> {
        self.list.first().copied()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.list.as_slice() == [0]
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self::from_bits(bits)
    }
}

impl PartialEq for ElemSet {
    fn eq(&self, other: &Self) -> bool {
        self.list == other.list
    }
}

impl Eq for ElemSet {}

impl Hash for ElemSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.list.hash(state);
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller sets first, then lexicographic on sorted indices.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.list.cmp(&other.list))
    }
}

impl core::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.list.iter()).finish()
    }
}

impl serde::Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}
