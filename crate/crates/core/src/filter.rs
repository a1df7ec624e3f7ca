//! Filters and filter bases on finite carriers.
//!
//! On a finite set every filter is principal: it consists of the supersets
//! of one nonempty kernel. Filters are therefore stored by kernel alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order_net::{DirectedIndex, Net};
use crate::pointset::{PointSet, MAX_POINTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrincipalFilter {
    carrier_size: usize,
    kernel: PointSet,
}

fn check_carrier(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("carrier must be nonempty".into()))
    } else if n > MAX_POINTS {
        Err(Error::CarrierTooLarge(n))
    } else {
        Ok(())
    }
}

fn check_subset(n: usize, s: PointSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Domain("filter sets must be nonempty".into()));
    }
    if !s.is_subset(PointSet::full(n)) {
        return Err(Error::InvalidPoint { point: s.bound() - 1, size: n });
    }
    Ok(())
}

impl PrincipalFilter {
    pub fn new(carrier_size: usize, kernel: PointSet) -> Result<Self> {
        check_carrier(carrier_size)?;
        check_subset(carrier_size, kernel)?;
        Ok(PrincipalFilter { carrier_size, kernel })
    }

    pub(crate) fn from_kernel_unchecked(carrier_size: usize, kernel: PointSet) -> Self {
        debug_assert!(!kernel.is_empty());
        PrincipalFilter { carrier_size, kernel }
    }

    /// The ultrafilter `[x]`.
    pub fn principal(carrier_size: usize, x: usize) -> Result<Self> {
        check_carrier(carrier_size)?;
        if x >= carrier_size {
            return Err(Error::InvalidPoint { point: x, size: carrier_size });
        }
        Ok(PrincipalFilter { carrier_size, kernel: PointSet::singleton(x) })
    }

    pub fn kernel(&self) -> PointSet {
        self.kernel
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn contains_set(&self, a: PointSet) -> bool {
        self.kernel.is_subset(a)
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.kernel.len() == 1
    }

    /// Every filter on a finite carrier, ordered by kernel bits.
    pub fn all(carrier_size: usize) -> impl Iterator<Item = PrincipalFilter> {
        PointSet::full(carrier_size)
            .subsets()
            .filter(|k| !k.is_empty())
            .map(move |kernel| PrincipalFilter { carrier_size, kernel })
    }

    fn same_carrier(&self, other: &PrincipalFilter) -> Result<()> {
        if self.carrier_size == other.carrier_size {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: self.carrier_size, right: other.carrier_size })
        }
    }
}

/// `F` is contained in `G` as a family of sets.
pub fn leq(f: &PrincipalFilter, g: &PrincipalFilter) -> Result<bool> {
    f.same_carrier(g)?;
    Ok(g.kernel.is_subset(f.kernel))
}

/// The intersection of two filters.
pub fn meet(f: &PrincipalFilter, g: &PrincipalFilter) -> Result<PrincipalFilter> {
    f.same_carrier(g)?;
    Ok(PrincipalFilter { carrier_size: f.carrier_size, kernel: f.kernel | g.kernel })
}

/// A map between finite carriers, given by the image of every point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    pub target_size: usize,
    pub images: Vec<usize>,
}

impl PointMap {
    pub fn new(images: Vec<usize>, target_size: usize) -> Result<Self> {
        check_carrier(target_size)?;
        if let Some(&p) = images.iter().find(|&&p| p >= target_size) {
            return Err(Error::InvalidPoint { point: p, size: target_size });
        }
        Ok(PointMap { target_size, images })
    }

    pub fn identity(n: usize) -> Self {
        PointMap { target_size: n, images: (0..n).collect() }
    }

    pub fn constant(source_size: usize, c: usize, target_size: usize) -> Result<Self> {
        PointMap::new(vec![c; source_size], target_size)
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn image(&self, a: PointSet) -> PointSet {
        a.iter().map(|x| self.images[x]).collect()
    }

    pub fn preimage(&self, b: PointSet) -> PointSet {
        (0..self.images.len()).filter(|&x| b.contains(self.images[x])).collect()
    }

    /// `g . self`.
    pub fn then(&self, g: &PointMap) -> Result<PointMap> {
        if g.source_size() != self.target_size {
            return Err(Error::SizeMismatch { expected: self.target_size, actual: g.source_size() });
        }
        Ok(PointMap { target_size: g.target_size, images: self.images.iter().map(|&y| g.images[y]).collect() })
    }

    /// Every map from `source` points into `target` points.
    pub fn enumerate(source: usize, target: usize) -> impl Iterator<Item = PointMap> {
        let total = target.pow(source as u32);
        (0..total).map(move |mut code| {
            let images = (0..source)
                .map(|_| {
                    let v = code % target;
                    code /= target;
                    v
                })
                .collect();
            PointMap { target_size: target, images }
        })
    }
}

/// `{ B : f(A) ⊆ B for some A in F }`, whose kernel is `f(kernel F)`.
pub fn image_filter(f: &PointMap, filter: &PrincipalFilter) -> Result<PrincipalFilter> {
    if f.source_size() != filter.carrier_size {
        return Err(Error::CarrierMismatch { left: f.source_size(), right: filter.carrier_size });
    }
    Ok(PrincipalFilter { carrier_size: f.target_size, kernel: f.image(filter.kernel) })
}

/// A finite family of nonempty sets, kept exactly as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilterBase {
    carrier_size: usize,
    sets: Vec<PointSet>,
}

impl FilterBase {
    /// Validates the sets and the base condition: any two members contain a
    /// third.
    pub fn new(carrier_size: usize, sets: Vec<PointSet>) -> Result<Self> {
        check_carrier(carrier_size)?;
        if sets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for &s in &sets {
            check_subset(carrier_size, s)?;
        }
        for &a in &sets {
            for &b in &sets {
                if !sets.iter().any(|c| c.is_subset(a & b)) {
                    return Err(Error::Domain(format!(
                        "not a filter base: no member inside {a:?} ∩ {b:?}"
                    )));
                }
            }
        }
        Ok(FilterBase { carrier_size, sets })
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    /// The member contained in all others; it exists for any finite base.
    pub fn least(&self) -> PointSet {
        *self
            .sets
            .iter()
            .find(|s| self.sets.iter().all(|t| s.is_subset(*t)))
            .expect("finite filter base has a least member")
    }
}

/// The filter generated by a base.
pub fn filter_from_base(b: &FilterBase) -> PrincipalFilter {
    PrincipalFilter { carrier_size: b.carrier_size, kernel: b.least() }
}

/// A net whose tail sets are the members of `b`: index `{(i, x) : x in B_i}`
/// with `(i, x) <= (j, y)` iff `B_j ⊆ B_i`, valued by `x`.
pub fn net_from_filter_base(b: &FilterBase) -> Net {
    let elems: Vec<(usize, usize)> = b
        .sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |x| (i, x)))
        .collect();
    let index = DirectedIndex::from_fn_unchecked(elems.len(), |p, q| {
        b.sets[elems[q].0].is_subset(b.sets[elems[p].0])
    });
    Net::new_unchecked(index, elems.iter().map(|e| e.1).collect(), b.carrier_size)
}

/// The net `net_from_filter_base` builds for the single-set base `{kernel}`.
pub fn net_from_filter(f: &PrincipalFilter) -> Net {
    let base = FilterBase { carrier_size: f.carrier_size, sets: vec![f.kernel] };
    net_from_filter_base(&base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    #[test]
    fn filter_from_base_examples() {
        let b = FilterBase::new(2, vec![ps(&[0])]).unwrap();
        assert_eq!(filter_from_base(&b).kernel(), ps(&[0]));
        let b = FilterBase::new(2, vec![ps(&[0, 1]), ps(&[0])]).unwrap();
        assert_eq!(filter_from_base(&b).kernel(), ps(&[0]));
        assert!(matches!(FilterBase::new(2, vec![ps(&[0]), ps(&[1])]), Err(Error::Domain(_))));
        assert!(matches!(FilterBase::new(2, vec![]), Err(Error::EmptyFamily)));
        assert!(FilterBase::new(2, vec![PointSet::EMPTY]).is_err());
    }

    #[test]
    fn principal_is_maximal() {
        for n in 1..=4 {
            for x in 0..n {
                let p = PrincipalFilter::principal(n, x).unwrap();
                assert!(p.is_ultrafilter());
                for g in PrincipalFilter::all(n) {
                    if leq(&p, &g).unwrap() {
                        assert_eq!(g, p);
                    }
                }
                for y in 0..n {
                    assert_eq!(x == y, p == PrincipalFilter::principal(n, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn ultrafilters() {
        let f = PrincipalFilter::new(3, ps(&[0, 1])).unwrap();
        assert!(!f.is_ultrafilter());
        let a = PrincipalFilter::principal(3, 0).unwrap();
        assert!(leq(&f, &a).unwrap() && f != a);
        for g in PrincipalFilter::all(3) {
            let u = PrincipalFilter::principal(3, g.kernel().first().unwrap()).unwrap();
            assert!(leq(&g, &u).unwrap());
        }
    }

    #[test]
    fn leq_and_meet() {
        let a = PrincipalFilter::principal(2, 0).unwrap();
        let b = PrincipalFilter::principal(2, 1).unwrap();
        let ab = PrincipalFilter::new(2, ps(&[0, 1])).unwrap();
        assert!(leq(&a, &a).unwrap());
        assert!(leq(&ab, &a).unwrap());
        assert!(!leq(&a, &b).unwrap());
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert_eq!(meet(&a, &b).unwrap(), ab);
        let other = PrincipalFilter::principal(3, 0).unwrap();
        assert!(matches!(leq(&a, &other), Err(Error::CarrierMismatch { .. })));
    }

    // Filters as explicit families of sets, for brute-force comparison.
    fn members(f: &PrincipalFilter) -> Vec<PointSet> {
        PointSet::full(f.carrier_size()).subsets().filter(|s| f.contains_set(*s)).collect()
    }

    #[test]
    fn meet_is_greatest_lower_bound() {
        for n in 1..=4 {
            let all: Vec<_> = PrincipalFilter::all(n).collect();
            for f in &all {
                for g in &all {
                    let m = meet(f, g).unwrap();
                    let fm = members(f);
                    let expected: Vec<_> =
                        members(g).into_iter().filter(|s| fm.contains(s)).collect();
                    assert_eq!(members(&m), expected);
                    for h in &all {
                        let below = leq(h, f).unwrap() && leq(h, g).unwrap();
                        assert_eq!(below, leq(h, &m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn image_filter_brute_force() {
        let id = PointMap::identity(3);
        let f = PrincipalFilter::new(3, ps(&[0, 2])).unwrap();
        assert_eq!(image_filter(&id, &f).unwrap(), f);
        let c = PointMap::constant(3, 1, 2).unwrap();
        assert_eq!(image_filter(&c, &f).unwrap(), PrincipalFilter::principal(2, 1).unwrap());
        for n in 1..=3 {
            for m in 1..=3 {
                for map in PointMap::enumerate(n, m) {
                    for f in PrincipalFilter::all(n) {
                        let img = image_filter(&map, &f).unwrap();
                        // Supersets of images of members.
                        let expected: Vec<PointSet> = PointSet::full(m)
                            .subsets()
                            .filter(|b| members(&f).iter().any(|a| map.image(*a).is_subset(*b)))
                            .collect();
                        assert_eq!(members(&img), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn image_filter_composes() {
        for f_map in PointMap::enumerate(3, 2) {
            for g_map in PointMap::enumerate(2, 3) {
                let gf = f_map.then(&g_map).unwrap();
                for f in PrincipalFilter::all(3) {
                    let lhs = image_filter(&gf, &f).unwrap();
                    let rhs = image_filter(&g_map, &image_filter(&f_map, &f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn net_from_filter_base_examples() {
        let b = FilterBase::new(2, vec![ps(&[0])]).unwrap();
        let net = net_from_filter_base(&b);
        assert_eq!(net.values(), &[0]);
        let b = FilterBase::new(2, vec![ps(&[0, 1]), ps(&[0])]).unwrap();
        let net = net_from_filter_base(&b);
        assert_eq!(net.index().size(), 3);
        assert_eq!(net.tail_filter().kernel(), ps(&[0]));
    }

    #[test]
    fn net_from_filter_base_roundtrip_exhaustive() {
        for n in 1..=3 {
            let subsets: Vec<PointSet> =
                PointSet::full(n).subsets().filter(|s| !s.is_empty()).collect();
            for mask in 1u32..1 << subsets.len() {
                let sets: Vec<PointSet> =
                    (0..subsets.len()).filter(|i| mask >> i & 1 == 1).map(|i| subsets[i]).collect();
                let Ok(base) = FilterBase::new(n, sets.clone()) else { continue };
                let net = net_from_filter_base(&base);
                let tails = net.tail_family().sets;
                let mut expected = sets;
                expected.sort();
                assert_eq!(tails, expected);
                assert_eq!(net.tail_filter(), filter_from_base(&base));
            }
        }
    }
}
