//! Finite convergence spaces.
//!
//! On a finite carrier the convergent filters at a point are closed under
//! coarsening to nonempty sub-kernels and under finite meets, so they are
//! exactly the nonempty subsets of one maximal kernel `V[x]`. A space is
//! stored as that list of kernels.

mod enumerate;
pub mod theorems;

use std::fmt;

pub use enumerate::{enumerate_structures, EnumerationSummary, StructureIter, MAX_ENUMERATION_SIZE};

pub use crate::filter::PointMap;
use crate::error::{Error, Result};
use crate::filter::PrincipalFilter;
use crate::order_net::Net;
use crate::pointset::{PointSet, MAX_POINTS};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvSpace {
    v: Vec<PointSet>,
}

impl fmt::Debug for ConvSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.v.iter().enumerate()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Every ultrafilter `[x]` converges to `x`.
    F1,
    /// Finer filters of a convergent filter converge.
    F2,
    /// Meets of two convergent filters converge.
    F3,
}

/// A failed axiom at `point`, with the kernels involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub point: usize,
    pub witness: Vec<PointSet>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::F1 => write!(f, "F1 fails at {}: [{}] is not declared convergent", self.point, self.point),
            Axiom::F2 => write!(
                f,
                "F2 fails at {}: kernel {:?} converges but its subset {:?} does not",
                self.point, self.witness[0], self.witness[1]
            ),
            Axiom::F3 => write!(
                f,
                "F3 fails at {}: kernels {:?} and {:?} converge but their union does not",
                self.point, self.witness[0], self.witness[1]
            ),
        }
    }
}

/// Declared convergences `kernel -> point` before axiom closure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConvergence {
    pub carrier_size: usize,
    pub pairs: Vec<(PointSet, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawMode {
    /// Accept only relations that already satisfy F1 to F3.
    Verify,
    /// Close the relation to the least convergence structure containing it.
    Complete,
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

impl RawConvergence {
    pub fn new(carrier_size: usize) -> Self {
        RawConvergence { carrier_size, pairs: Vec::new() }
    }

    pub fn declare(mut self, kernel: PointSet, point: usize) -> Self {
        self.pairs.push((kernel, point));
        self
    }

    fn declared_at(&self, x: usize) -> Vec<PointSet> {
        let mut d: Vec<PointSet> = self.pairs.iter().filter(|p| p.1 == x).map(|p| p.0).collect();
        d.sort();
        d.dedup();
        d
    }

    fn violation(&self) -> Option<AxiomViolation> {
        let n = self.carrier_size;
        for x in 0..n {
            let d = self.declared_at(x);
            if !d.contains(&PointSet::singleton(x)) {
                return Some(AxiomViolation { axiom: Axiom::F1, point: x, witness: vec![PointSet::singleton(x)] });
            }
            for &k in &d {
                if let Some(sub) = k.subsets().find(|s| !s.is_empty() && d.binary_search(s).is_err()) {
                    return Some(AxiomViolation { axiom: Axiom::F2, point: x, witness: vec![k, sub] });
                }
            }
            for &a in &d {
                for &b in &d {
                    if d.binary_search(&(a | b)).is_err() {
                        return Some(AxiomViolation { axiom: Axiom::F3, point: x, witness: vec![a, b] });
                    }
                }
            }
        }
        None
    }
}

impl ConvSpace {
    /// Builds a space from its maximal kernels; requires `x ∈ V[x]`.
    pub fn new(v: Vec<PointSet>) -> Result<Self> {
        let n = v.len();
        check_carrier(n)?;
        let full = PointSet::full(n);
        for (x, &vx) in v.iter().enumerate() {
            if !vx.is_subset(full) {
                return Err(Error::InvalidPoint { point: vx.bound() - 1, size: n });
            }
            if !vx.contains(x) {
                return Err(Error::Axiom(AxiomViolation {
                    axiom: Axiom::F1,
                    point: x,
                    witness: vec![PointSet::singleton(x)],
                }));
            }
        }
        Ok(ConvSpace { v })
    }

    pub(crate) fn new_unchecked(v: Vec<PointSet>) -> Self {
        ConvSpace { v }
    }

    pub fn from_raw(r: &RawConvergence, mode: RawMode) -> Result<Self> {
        let n = r.carrier_size;
        check_carrier(n)?;
        let full = PointSet::full(n);
        for &(k, x) in &r.pairs {
            if x >= n {
                return Err(Error::InvalidPoint { point: x, size: n });
            }
            if k.is_empty() {
                return Err(Error::Domain("declared kernels must be nonempty".into()));
            }
            if !k.is_subset(full) {
                return Err(Error::InvalidPoint { point: k.bound() - 1, size: n });
            }
        }
        if mode == RawMode::Verify {
            if let Some(v) = r.violation() {
                return Err(Error::Axiom(v));
            }
        }
        let mut v: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(k, x) in &r.pairs {
            v[x] = v[x] | k;
        }
        Ok(ConvSpace { v })
    }

    /// Every kernel converges only to its own points.
    pub fn discrete(n: usize) -> Self {
        ConvSpace { v: (0..n).map(PointSet::singleton).collect() }
    }

    /// Every kernel converges everywhere.
    pub fn indiscrete(n: usize) -> Self {
        ConvSpace { v: vec![PointSet::full(n); n] }
    }

    pub fn size(&self) -> usize {
        self.v.len()
    }

    pub fn carrier(&self) -> PointSet {
        PointSet::full(self.v.len())
    }

    /// The maximal kernel converging to `x`.
    pub fn v(&self, x: usize) -> PointSet {
        self.v[x]
    }

    pub fn kernels(&self) -> &[PointSet] {
        &self.v
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::InvalidPoint { point: x, size: self.size() })
        }
    }

    fn check_carrier_of(&self, n: usize) -> Result<()> {
        if n == self.size() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: self.size(), right: n })
        }
    }

    #[inline]
    pub fn converges_kernel(&self, kernel: PointSet, x: usize) -> bool {
        !kernel.is_empty() && kernel.is_subset(self.v[x])
    }

    pub fn converges_filter(&self, f: &PrincipalFilter, x: usize) -> Result<bool> {
        self.check_carrier_of(f.carrier_size())?;
        self.check_point(x)?;
        Ok(self.converges_kernel(f.kernel(), x))
    }

    /// A net converges to `x` iff its tail filter does.
    pub fn converges_net(&self, net: &Net, x: usize) -> Result<bool> {
        self.converges_filter(&net.tail_filter(), x)
    }

    /// All limits of a kernel.
    pub fn limits(&self, kernel: PointSet) -> PointSet {
        (0..self.size()).filter(|&x| self.converges_kernel(kernel, x)).collect()
    }

    /// Points that are limits of some net in `a`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        (0..self.size()).filter(|&x| self.v[x].intersects(a)).collect()
    }

    pub fn is_closed(&self, a: PointSet) -> bool {
        self.closure(a) == a
    }

    /// Every net converging into `a` is eventually in `a`.
    pub fn is_open(&self, a: PointSet) -> bool {
        a.iter().all(|x| self.v[x].is_subset(a))
    }

    pub fn interior(&self, a: PointSet) -> PointSet {
        a.iter().filter(|&x| self.v[x].is_subset(a)).collect()
    }

    pub fn is_dense(&self, a: PointSet) -> bool {
        self.closure(a) == self.carrier()
    }

    /// Neighbourhoods of `x` are the supersets of `V[x]`.
    pub fn neighborhood_filter(&self, x: usize) -> PrincipalFilter {
        PrincipalFilter::from_kernel_unchecked(self.size(), self.v[x])
    }

    pub fn is_neighborhood(&self, a: PointSet, x: usize) -> bool {
        self.v[x].is_subset(a)
    }

    /// `U_x -> x` at every point, with `U_x` computed as the intersection of
    /// all filters converging to `x`.
    pub fn is_pretopological(&self) -> bool {
        (0..self.size()).all(|x| {
            let ux = PointSet::full(self.size())
                .subsets()
                .filter(|&k| self.converges_kernel(k, x))
                .fold(PointSet::EMPTY, |acc, k| acc | k);
            self.converges_kernel(ux, x)
        })
    }

    /// Convergence of the finest topology weaker than this structure: the
    /// smallest open set around `x` is everything reachable from `x`
    /// through the kernels.
    pub fn topological_modification(&self) -> ConvSpace {
        let mut v = self.v.clone();
        loop {
            let next: Vec<PointSet> =
                v.iter().map(|&vx| vx.iter().fold(vx, |acc, y| acc | v[y])).collect();
            if next == v {
                return ConvSpace { v };
            }
            v = next;
        }
    }

    /// `y ∈ V[x]` implies `V[y] ⊆ V[x]`.
    pub fn is_topological(&self) -> bool {
        self.v.iter().all(|&vx| vx.iter().all(|y| self.v[y].is_subset(vx)))
    }

    pub fn is_hausdorff(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (x + 1..n).all(|y| !self.v[x].intersects(self.v[y])))
    }

    /// Every ultrafilter converges. Always true on a finite carrier since
    /// every ultrafilter is some `[z]` and `[z] -> z`.
    pub fn is_compact(&self) -> bool {
        self.is_subset_compact(self.carrier())
    }

    /// Every ultrafilter containing `a` converges to a point of `a`.
    pub fn is_subset_compact(&self, a: PointSet) -> bool {
        a.iter().all(|z| self.v.iter().enumerate().any(|(x, vx)| a.contains(x) && vx.contains(z)))
    }

    /// The structure induced on `y`, together with the inclusion map.
    pub fn subspace(&self, y: PointSet) -> Result<(ConvSpace, PointMap)> {
        if y.is_empty() {
            return Err(Error::Domain("subspace must be nonempty".into()));
        }
        if !y.is_subset(self.carrier()) {
            return Err(Error::InvalidPoint { point: y.bound() - 1, size: self.size() });
        }
        let pts: Vec<usize> = y.iter().collect();
        let pos = |p: usize| pts.iter().position(|&q| q == p).expect("member of subspace");
        let v = pts.iter().map(|&p| (self.v[p] & y).iter().map(pos).collect()).collect();
        Ok((ConvSpace { v }, PointMap { target_size: self.size(), images: pts }))
    }
}

/// `f(V_S[x]) ⊆ V_T[f(x)]` for all `x`.
pub fn is_continuous(f: &PointMap, s: &ConvSpace, t: &ConvSpace) -> Result<bool> {
    if f.source_size() != s.size() {
        return Err(Error::CarrierMismatch { left: f.source_size(), right: s.size() });
    }
    if f.target_size != t.size() {
        return Err(Error::CarrierMismatch { left: f.target_size, right: t.size() });
    }
    Ok((0..s.size()).all(|x| f.image(s.v[x]).is_subset(t.v[f.apply(x)])))
}

/// The weakest structure on `carrier_size` points making every map
/// continuous. An empty family gives the indiscrete space.
pub fn initial_structure(carrier_size: usize, maps: &[(PointMap, ConvSpace)]) -> Result<ConvSpace> {
    check_carrier(carrier_size)?;
    for (f, t) in maps {
        if f.source_size() != carrier_size {
            return Err(Error::CarrierMismatch { left: f.source_size(), right: carrier_size });
        }
        if f.target_size != t.size() {
            return Err(Error::CarrierMismatch { left: f.target_size, right: t.size() });
        }
    }
    let v = (0..carrier_size)
        .map(|x| {
            maps.iter()
                .fold(PointSet::full(carrier_size), |acc, (f, t)| acc & f.preimage(t.v[f.apply(x)]))
        })
        .collect();
    Ok(ConvSpace { v })
}

/// Product structure together with the coordinate projections. Point ids
/// are mixed-radix with the first factor most significant.
pub fn product(spaces: &[ConvSpace]) -> Result<(ConvSpace, Vec<PointMap>)> {
    if spaces.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let total = spaces.iter().try_fold(1usize, |acc, s| {
        acc.checked_mul(s.size()).filter(|&t| t <= MAX_POINTS).ok_or(Error::CarrierTooLarge(usize::MAX))
    })?;
    let decode = |mut p: usize| {
        let mut coords = vec![0; spaces.len()];
        for i in (0..spaces.len()).rev() {
            coords[i] = p % spaces[i].size();
            p /= spaces[i].size();
        }
        coords
    };
    let coords: Vec<Vec<usize>> = (0..total).map(decode).collect();
    let v = (0..total)
        .map(|p| {
            (0..total)
                .filter(|&q| (0..spaces.len()).all(|i| spaces[i].v[coords[p][i]].contains(coords[q][i])))
                .collect()
        })
        .collect();
    let projections = (0..spaces.len())
        .map(|i| PointMap { target_size: spaces[i].size(), images: coords.iter().map(|c| c[i]).collect() })
        .collect();
    Ok((ConvSpace { v }, projections))
}

/// Continuous convergence on the continuous maps `S -> T`: `g ∈ V_c[f]`
/// iff `g(V_S[x]) ⊆ V_T[f(x)]` for every `x`. Returns the space and the
/// map each point stands for.
pub fn continuous_convergence_space(s: &ConvSpace, t: &ConvSpace) -> Result<(ConvSpace, Vec<PointMap>)> {
    let maps: Vec<PointMap> = PointMap::enumerate(s.size(), t.size())
        .filter(|f| is_continuous(f, s, t).expect("sizes match"))
        .collect();
    if maps.len() > MAX_POINTS {
        return Err(Error::CarrierTooLarge(maps.len()));
    }
    let v = maps
        .iter()
        .map(|f| {
            (0..maps.len())
                .filter(|&j| (0..s.size()).all(|x| maps[j].image(s.v[x]).is_subset(t.v[f.apply(x)])))
                .collect()
        })
        .collect();
    Ok((ConvSpace { v }, maps))
}

/// Outcome of translating a space to net convergence and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripCertificate {
    pub filters_checked: usize,
    pub nets_checked: usize,
    pub mismatches: Vec<String>,
}

impl RoundtripCertificate {
    pub fn is_identity(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Translates the filter structure to nets (a net converges iff its tail
/// filter does) and back (a filter converges iff it is the tail filter of a
/// convergent net), checking both directions are identities on the given
/// pool of nets and on every filter.
pub fn roundtrip(s: &ConvSpace, nets: &[Net]) -> RoundtripCertificate {
    use crate::filter::net_from_filter;
    let n = s.size();
    let mut mismatches = Vec::new();
    let mut filters_checked = 0;
    // filter -> net -> filter
    let mut rebuilt = vec![PointSet::EMPTY; n];
    for f in PrincipalFilter::all(n) {
        filters_checked += 1;
        let net = net_from_filter(&f);
        if net.tail_filter() != f {
            mismatches.push(format!("net for filter {:?} has tail filter {:?}", f.kernel(), net.kernel()));
        }
        for x in 0..n {
            let by_net = s.converges_kernel(net.kernel(), x);
            if by_net {
                rebuilt[x] = rebuilt[x] | net.kernel();
            }
            if by_net != s.converges_kernel(f.kernel(), x) {
                mismatches.push(format!("filter {:?} at {x}", f.kernel()));
            }
        }
    }
    if rebuilt != s.v {
        mismatches.push(format!("rebuilt kernels {rebuilt:?} differ from {:?}", s.v));
    }
    // net -> filter -> net
    for net in nets {
        let f = net.tail_filter();
        let back = net_from_filter(&f);
        match crate::order_net::is_tail_equivalent(net, &back) {
            Ok(true) => {}
            _ => mismatches.push(format!("net {:?} not tail equivalent to its rebuilt net", net.values())),
        }
        for x in 0..n {
            if s.converges_kernel(net.kernel(), x) != s.converges_kernel(back.kernel(), x) {
                mismatches.push(format!("net {:?} at {x}", net.values()));
            }
        }
    }
    RoundtripCertificate { filters_checked, nets_checked: nets.len(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_net::{braid, enumerate_nets, is_quasi_subnet, DirectedIndex, Selector};

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    /// V[a]={a}, V[b]={a,b}, V[c]={b,c}.
    fn chain3() -> ConvSpace {
        ConvSpace::new(vec![ps(&[0]), ps(&[0, 1]), ps(&[1, 2])]).unwrap()
    }

    #[test]
    fn from_raw_examples() {
        let s = ConvSpace::from_raw(&RawConvergence::new(3), RawMode::Complete).unwrap();
        assert_eq!(s, ConvSpace::discrete(3));
        let r = RawConvergence::new(2).declare(ps(&[0, 1]), 0);
        let s = ConvSpace::from_raw(&r, RawMode::Complete).unwrap();
        assert_eq!(s.kernels(), &[ps(&[0, 1]), ps(&[1])]);
        let err = ConvSpace::from_raw(&r, RawMode::Verify).unwrap_err();
        let Error::Axiom(v) = err else { panic!("expected axiom error") };
        assert_eq!(v.axiom, Axiom::F1);
        assert_eq!(v.point, 0);
    }

    #[test]
    fn from_raw_verify_f2_f3() {
        let r = RawConvergence::new(2)
            .declare(ps(&[0]), 0)
            .declare(ps(&[1]), 1)
            .declare(ps(&[0, 1]), 0);
        let Error::Axiom(v) = ConvSpace::from_raw(&r, RawMode::Verify).unwrap_err() else { panic!() };
        assert_eq!(v.axiom, Axiom::F2);
        assert_eq!(v.witness, vec![ps(&[0, 1]), ps(&[1])]);

        // {a,b} -> a and {a,c} -> a without {a,b,c} -> a: closed under
        // subsets but not under unions.
        let mut r = RawConvergence::new(3).declare(ps(&[1]), 1).declare(ps(&[2]), 2);
        for k in [&[0][..], &[1], &[2], &[0, 1], &[0, 2]] {
            r = r.declare(ps(k), 0);
        }
        let Error::Axiom(v) = ConvSpace::from_raw(&r, RawMode::Verify).unwrap_err() else { panic!() };
        assert_eq!(v.axiom, Axiom::F3);
        assert_eq!(v.point, 0);

        let ok = r.clone().declare(ps(&[0, 1, 2]), 0).declare(ps(&[1, 2]), 0);
        let s = ConvSpace::from_raw(&ok, RawMode::Verify).unwrap();
        assert_eq!(s.v(0), ps(&[0, 1, 2]));
    }

    #[test]
    fn new_rejects_missing_point() {
        assert!(matches!(ConvSpace::new(vec![ps(&[1]), ps(&[1])]), Err(Error::Axiom(_))));
    }

    #[test]
    fn closure_examples() {
        let s = chain3();
        assert_eq!(s.closure(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(s.closure(ps(&[0])), ps(&[0, 1]));
        assert_eq!(s.closure(ps(&[0, 1])), ps(&[0, 1, 2]));
        assert!(!s.is_closed(ps(&[0, 1])));
        assert!(ConvSpace::discrete(3).is_closed(ps(&[0])));
    }

    #[test]
    fn modification_examples() {
        let s = chain3();
        assert!(!s.is_topological());
        let t = s.topological_modification();
        assert_eq!(t.v(2), ps(&[0, 1, 2]));
        assert!(t.is_topological());
        assert_eq!(t.topological_modification(), t);
        assert!(ConvSpace::discrete(3).is_topological());
    }

    #[test]
    fn hausdorff_and_compact() {
        assert!(ConvSpace::discrete(3).is_hausdorff());
        assert!(!ConvSpace::indiscrete(2).is_hausdorff());
        assert!(ConvSpace::indiscrete(1).is_hausdorff());
        assert!(chain3().is_compact());
        assert!(ConvSpace::discrete(1).is_compact());
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(ConvSpace::discrete(3).neighborhood_filter(1).kernel(), ps(&[1]));
        assert_eq!(ConvSpace::indiscrete(3).neighborhood_filter(1).kernel(), ps(&[0, 1, 2]));
        assert!(chain3().is_pretopological());
    }

    #[test]
    fn continuity_examples() {
        let s = chain3();
        assert!(is_continuous(&PointMap::identity(3), &s, &s).unwrap());
        for c in 0..3 {
            assert!(is_continuous(&PointMap::constant(3, c, 3).unwrap(), &s, &s).unwrap());
        }
        // Collapsing onto the discrete space breaks continuity at b.
        assert!(!is_continuous(&PointMap::identity(3), &s, &ConvSpace::discrete(3)).unwrap());
        let wrong = PointMap::identity(2);
        assert!(is_continuous(&wrong, &s, &s).is_err());
    }

    #[test]
    fn initial_structure_examples() {
        let s = chain3();
        let copy = initial_structure(3, &[(PointMap::identity(3), s.clone())]).unwrap();
        assert_eq!(copy, s);
        assert_eq!(initial_structure(3, &[]).unwrap(), ConvSpace::indiscrete(3));
    }

    #[test]
    fn subspace_and_product() {
        let (sub, inc) = ConvSpace::discrete(3).subspace(ps(&[0, 2])).unwrap();
        assert_eq!(sub, ConvSpace::discrete(2));
        assert_eq!(inc.images, vec![0, 2]);
        let s = chain3();
        assert_eq!(s.subspace(s.carrier()).unwrap().0, s);
        let (sub, _) = s.subspace(ps(&[1, 2])).unwrap();
        assert_eq!(sub.kernels(), &[ps(&[0]), ps(&[0, 1])]);
        assert!(s.subspace(PointSet::EMPTY).is_err());

        let a = ConvSpace::new(vec![ps(&[0, 1]), ps(&[1])]).unwrap();
        let b = ConvSpace::indiscrete(2);
        let (p, proj) = product(&[a.clone(), b.clone()]).unwrap();
        let init = initial_structure(4, &[(proj[0].clone(), a), (proj[1].clone(), b)]).unwrap();
        assert_eq!(p, init);
    }

    #[test]
    fn continuous_convergence_examples() {
        let d = ConvSpace::discrete(2);
        let (cc, maps) = continuous_convergence_space(&d, &d).unwrap();
        assert_eq!(maps.len(), 4);
        assert_eq!(cc, ConvSpace::discrete(4));

        let s = chain3();
        let (cc, maps) = continuous_convergence_space(&s, &s).unwrap();
        for c in 0..3 {
            assert!(maps.contains(&PointMap::constant(3, c, 3).unwrap()));
        }
        for (i, _) in maps.iter().enumerate() {
            assert!(cc.v(i).contains(i));
        }
    }

    #[test]
    fn evaluation_is_continuous() {
        let spaces = [ConvSpace::discrete(2), ConvSpace::indiscrete(2), ConvSpace::new(vec![ps(&[0, 1]), ps(&[1])]).unwrap()];
        for s in &spaces {
            for t in &spaces {
                let (cc, maps) = continuous_convergence_space(s, t).unwrap();
                let (prod, _) = product(&[cc.clone(), s.clone()]).unwrap();
                let ev = PointMap {
                    target_size: t.size(),
                    images: (0..prod.size()).map(|p| maps[p / s.size()].apply(p % s.size())).collect(),
                };
                assert!(is_continuous(&ev, &prod, t).unwrap());
            }
        }
    }

    #[test]
    fn net_axioms_on_chain3() {
        let s = chain3();
        let nets = enumerate_nets(2, 3);
        for x in 0..3 {
            let c = Net::constant(DirectedIndex::chain(2), x, 3).unwrap();
            assert!(s.converges_net(&c, x).unwrap());
        }
        for a in &nets {
            for b in &nets {
                for x in 0..3 {
                    if is_quasi_subnet(b, a).unwrap() && s.converges_net(a, x).unwrap() {
                        assert!(s.converges_net(b, x).unwrap());
                    }
                    if a.index() == b.index() && s.converges_net(a, x).unwrap() && s.converges_net(b, x).unwrap() {
                        for sel in Selector::enumerate(a.index().size()) {
                            assert!(s.converges_net(&braid(a, b, &sel).unwrap(), x).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn roundtrip_small() {
        let nets = enumerate_nets(2, 3);
        for s in [ConvSpace::discrete(3), ConvSpace::indiscrete(3), chain3()] {
            let cert = roundtrip(&s, &nets);
            assert!(cert.is_identity(), "{:?}", cert.mismatches);
            assert_eq!(cert.filters_checked, 7);
        }
    }
}
