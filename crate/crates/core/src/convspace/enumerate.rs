use crate::error::{Error, Result};
use crate::pointset::PointSet;

use super::ConvSpace;

/// Largest carrier `enumerate_structures` accepts.
pub const MAX_ENUMERATION_SIZE: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub total: u64,
    pub topological: u64,
    pub hausdorff: u64,
}

impl EnumerationSummary {
    pub fn add(&mut self, s: &ConvSpace) {
        self.total += 1;
        self.topological += s.is_topological() as u64;
        self.hausdorff += s.is_hausdorff() as u64;
    }
}

/// Lexicographic stream over the tuple `(V[0], .., V[n-1])`, where each
/// `V[x]` runs through the subsets containing `x` in increasing bit order.
pub struct StructureIter {
    n: usize,
    // Per point: the subset of the other points, as a counter.
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for StructureIter {
    type Item = ConvSpace;

    fn next(&mut self) -> Option<ConvSpace> {
        if self.done {
            return None;
        }
        let v = (0..self.n).map(|x| expand(self.digits[x], x)).collect();
        let limit = 1u64 << (self.n - 1);
        let mut i = self.n;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < limit {
                break;
            }
            self.digits[i] = 0;
        }
        Some(ConvSpace::new_unchecked(v))
    }
}

// Spreads `bits` over the points other than `x`, then adds `x`. Monotone in
// `bits`, so the stream is ordered by the kernel bitsets.
fn expand(bits: u64, x: usize) -> PointSet {
    let low = bits & ((1u64 << x) - 1);
    let high = (bits >> x) << (x + 1);
    PointSet(low | high | 1u64 << x)
}

/// All `(2^{n-1})^n` convergence structures on `n` points.
pub fn enumerate_structures(n: usize) -> Result<StructureIter> {
    if n == 0 {
        return Err(Error::Domain("carrier must be nonempty".into()));
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::CarrierTooLarge(n));
    }
    Ok(StructureIter { n, digits: vec![0; n], done: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (n, total) in [(1, 1), (2, 4), (3, 64), (4, 4096)] {
            let all: Vec<_> = enumerate_structures(n).unwrap().collect();
            assert_eq!(all.len(), total);
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, all, "stream is strictly increasing");
        }
        assert!(enumerate_structures(6).is_err());
        assert!(enumerate_structures(0).is_err());
    }

    #[test]
    fn two_points_all_topological() {
        let mut s = EnumerationSummary::default();
        enumerate_structures(2).unwrap().for_each(|x| s.add(&x));
        assert_eq!(s, EnumerationSummary { total: 4, topological: 4, hausdorff: 1 });
    }
}
