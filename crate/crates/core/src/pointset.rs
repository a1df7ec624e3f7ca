use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

/// Maximum number of points a carrier may have.
pub const MAX_POINTS: usize = 64;

/// A subset of a finite carrier `{0, .., 63}`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1u64 << p)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points.into_iter().fold(PointSet::EMPTY, |s, p| s.with(p))
    }

    #[inline]
    pub fn contains(self, p: usize) -> bool {
        p < MAX_POINTS && self.0 >> p & 1 == 1
    }

    #[inline]
    pub fn with(self, p: usize) -> Self {
        PointSet(self.0 | 1u64 << p)
    }

    #[inline]
    pub fn without(self, p: usize) -> Self {
        PointSet(self.0 & !(1u64 << p))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to a carrier of size `n`.
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    /// Lowest point in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest point in the set, plus one; zero for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> PointIter {
        PointIter(self.0)
    }

    /// All subsets of `self`, including the empty set.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        // Standard submask walk, emitted in increasing order.
        let mask = self.0;
        let mut sub: Option<u64> = Some(0);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == mask { None } else { Some((cur | !mask).wrapping_add(1) & mask) };
            Some(PointSet(cur))
        })
    }
}

pub struct PointIter(u64);

impl Iterator for PointIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = PointIter;
    fn into_iter(self) -> PointIter {
        self.iter()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 | rhs.0)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & rhs.0)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & !rhs.0)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> PointSet {
        PointSet(!self.0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
