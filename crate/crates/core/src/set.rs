//! Fixed-universe bit sets keyed by dense element ids.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::axis::ElementId;

/// A subset of one axis, stored as a bit vector over `0..universe`.
///
/// Two sets are equal only when they share a universe and the same members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet(bits)
    }

    /// Panics when an id is outside the universe; callers validate ids first.
    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = ElementId>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, id: ElementId) {
        self.0.insert(id as usize);
    }

    pub fn remove(&mut self, id: ElementId) {
        self.0.remove(id as usize);
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.0.contains(id as usize)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.ones().map(|i| i as ElementId)
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn union_len(&self, other: &ElementSet) -> usize {
        self.0.union_count(&other.0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = ElementSet::from_ids(70, [0, 3, 64, 69]);
        let b = ElementSet::from_ids(70, [3, 64, 10]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 64]);
        assert_eq!(a.union_len(&b), 5);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 69]);
        assert!(ElementSet::from_ids(70, [3]).is_subset(&a));
        assert_eq!(ElementSet::full(70).len(), 70);
        assert!(ElementSet::empty(70).is_empty());
        assert_ne!(ElementSet::empty(3), ElementSet::empty(4));
    }
}
