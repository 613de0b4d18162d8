//! Goods and bundles of goods.
//!
//! Goods are dense indices `0..m`; the index order is the universal
//! tie-breaking order. A [`Bundle`] is a bitset over at most
//! [`MAX_GOODS`] goods, which keeps subset enumeration and set algebra cheap.

use std::fmt;

pub const MAX_GOODS: usize = 64;

/// Index of a good. Displays 1-based (`g1`, `g2`, ...).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoodId(pub usize);

impl GoodId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GoodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0 + 1)
    }
}

#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle(u64);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub fn from_bits(bits: u64) -> Self {
        Bundle(bits)
    }

    /// All goods `0..goods`.
    pub fn full(goods: usize) -> Self {
        debug_assert!(goods <= MAX_GOODS);
        if goods == MAX_GOODS {
            Bundle(u64::MAX)
        } else {
            Bundle((1u64 << goods) - 1)
        }
    }

    pub fn singleton(good: GoodId) -> Self {
        Bundle(1u64 << good.0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, good: GoodId) -> bool {
        good.0 < MAX_GOODS && self.0 & (1u64 << good.0) != 0
    }

    pub fn insert(&mut self, good: GoodId) {
        self.0 |= 1u64 << good.0;
    }

    pub fn remove(&mut self, good: GoodId) {
        self.0 &= !(1u64 << good.0);
    }

    #[must_use]
    pub fn with(self, good: GoodId) -> Self {
        Bundle(self.0 | (1u64 << good.0))
    }

    #[must_use]
    pub fn without(self, good: GoodId) -> Self {
        Bundle(self.0 & !(1u64 << good.0))
    }

    #[must_use]
    pub fn union(self, other: Bundle) -> Self {
        Bundle(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Bundle) -> Self {
        Bundle(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Bundle) -> Self {
        Bundle(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Bundle) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest index strictly above every member (0 for the empty bundle).
    pub fn upper_bound(self) -> usize {
        MAX_GOODS - self.0.leading_zeros() as usize
    }

    /// Members in ascending index order.
    pub fn iter(self) -> BundleIter {
        BundleIter(self.0)
    }
}

impl FromIterator<GoodId> for Bundle {
    fn from_iter<I: IntoIterator<Item = GoodId>>(iter: I) -> Self {
        let mut bundle = Bundle::EMPTY;
        for g in iter {
            bundle.insert(g);
        }
        bundle
    }
}

impl<'a> FromIterator<&'a GoodId> for Bundle {
    fn from_iter<I: IntoIterator<Item = &'a GoodId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for Bundle {
    type Item = GoodId;
    type IntoIter = BundleIter;

    fn into_iter(self) -> BundleIter {
        self.iter()
    }
}

pub struct BundleIter(u64);

impl Iterator for BundleIter {
    type Item = GoodId;

    fn next(&mut self) -> Option<GoodId> {
        if self.0 == 0 {
            return None;
        }
        let index = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(GoodId(index))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BundleIter {}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, g) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Shorthand for building bundles from 0-based indices.
pub fn bundle(indices: &[usize]) -> Bundle {
    indices.iter().map(|&i| GoodId(i)).collect()
}
