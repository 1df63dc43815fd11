//! Dense element sets over a carrier `0..order`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A subset of a finite carrier, stored as a bitset.
///
/// Ordering is canonical: smaller sets first, then lexicographic on the sorted
/// member list.
#[derive(Clone, PartialEq, Eq)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(order: usize) -> Self {
        ElemSet { bits: FixedBitSet::with_capacity(order) }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        ElemSet { bits }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(order: usize, items: I) -> Self {
        let mut s = Self::empty(order);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        Self::from_iter(order, [x])
    }

    /// Size of the ambient carrier.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let was = self.bits.contains(x);
        self.bits.insert(x);
        !was
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElemSet { bits }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElemSet { bits }
    }

    pub fn complement(&self) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElemSet { bits }
    }
}

impl Hash for ElemSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.len().hash(state);
        for x in self.bits.ones() {
            x.hash(state);
        }
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_members() {
        let a = ElemSet::from_iter(8, [0, 5]);
        let b = ElemSet::from_iter(8, [0, 1, 2]);
        let c = ElemSet::from_iter(8, [0, 3]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn complement_stays_in_universe() {
        let a = ElemSet::from_iter(5, [1, 3]);
        assert_eq!(a.complement().to_vec(), vec![0, 2, 4]);
    }
}
