//! Bounded exhaustive checkers for the net axioms, the mixing theorem, the
//! iterated limit property and the basic closure facts.
//!
//! Every net relation that matters here depends only on tail filters, so the
//! pools below run the net constructions once per carrier size and keep the
//! resulting kernels. Checking a space is then pure bitset work.

use std::collections::BTreeSet;

use crate::filter::{net_from_filter, PrincipalFilter};
use crate::order_net::{
    braid, enumerate_nets, is_quasi_subnet, mix_family, reaction, DirectedIndex, Net, Selector,
};
use crate::pointset::PointSet;
use crate::report::MAX_RECORDED;

use super::{is_continuous, roundtrip, ConvSpace, PointMap};


pub use crate::report::CheckReport as TheoremReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest index set of a member net.
    pub index: usize,
    /// Largest family of nets, or largest outer index for nets of nets.
    pub family: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { index: 3, family: 3 }
    }
}

/// Kernel data for the three net axioms over all nets with small index.
pub struct NetAxiomPool {
    carrier_size: usize,
    constants: Vec<(PointSet, usize)>,
    quasi: Vec<(PointSet, PointSet)>,
    braids: Vec<(PointSet, PointSet, PointSet)>,
}

impl NetAxiomPool {
    pub fn new(carrier_size: usize, max_index: usize) -> Self {
        let nets = enumerate_nets(max_index, carrier_size);
        let mut constants = BTreeSet::new();
        let mut quasi = BTreeSet::new();
        let mut braids = BTreeSet::new();
        for x in &nets {
            let r = x.range();
            if r.len() == 1 {
                constants.insert((x.kernel(), r.first().expect("nonempty")));
            }
        }
        for x in &nets {
            for y in &nets {
                if is_quasi_subnet(y, x).expect("shared carrier") {
                    quasi.insert((x.kernel(), y.kernel()));
                }
                if x.index() == y.index() {
                    for sel in Selector::enumerate(x.index().size()) {
                        let z = braid(x, y, &sel).expect("shared index");
                        braids.insert((x.kernel(), y.kernel(), z.kernel()));
                    }
                }
            }
        }
        NetAxiomPool {
            carrier_size,
            constants: constants.into_iter().collect(),
            quasi: quasi.into_iter().collect(),
            braids: braids.into_iter().collect(),
        }
    }

    /// Constant nets converge; quasi-subnets keep limits; braids of nets
    /// with a common limit converge to it.
    pub fn check(&self, s: &ConvSpace) -> TheoremReport {
        assert_eq!(s.size(), self.carrier_size);
        let mut r = TheoremReport::default();
        for &(k, x) in &self.constants {
            r.check(s.converges_kernel(k, x), || format!("N1: constant {x} does not converge in {s:?}"));
        }
        for x in 0..s.size() {
            for &(kx, ky) in &self.quasi {
                if s.converges_kernel(kx, x) {
                    r.check(s.converges_kernel(ky, x), || {
                        format!("N2: tail {ky:?} inside {kx:?} loses limit {x} in {s:?}")
                    });
                }
            }
            for &(kx, ky, kz) in &self.braids {
                if s.converges_kernel(kx, x) && s.converges_kernel(ky, x) {
                    r.check(s.converges_kernel(kz, x), || {
                        format!("N3: braid {kz:?} of {kx:?}, {ky:?} loses limit {x} in {s:?}")
                    });
                }
            }
        }
        r
    }
}

/// Families of nets and their mixings.
pub struct MixingPool {
    carrier_size: usize,
    /// (union of member kernels, mixing kernel)
    entries: Vec<(PointSet, PointSet)>,
    families: u64,
    lemma: TheoremReport,
}

fn multisets(pool: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..pool).map(|i| vec![i]).collect();
    for _ in 0..max_len {
        out.extend(level.iter().cloned());
        level = level
            .iter()
            .flat_map(|m| {
                let last = *m.last().expect("nonempty");
                (last..pool).map(move |i| {
                    let mut m = m.clone();
                    m.push(i);
                    m
                })
            })
            .collect();
    }
    out
}

impl MixingPool {
    /// Every multiset of at most `bounds.family` nets with index at most
    /// `bounds.index`. Also checks that the mixing's tail filter is the
    /// intersection of the members' tail filters.
    pub fn new(carrier_size: usize, bounds: Bounds) -> Self {
        let nets = enumerate_nets(bounds.index, carrier_size);
        let mut entries = BTreeSet::new();
        let mut lemma = TheoremReport::default();
        let fams = multisets(nets.len(), bounds.family);
        for fam in &fams {
            let members: Vec<Net> = fam.iter().map(|&i| nets[i].clone()).collect();
            let m = mix_family(&members).expect("nonempty family");
            let union = members.iter().fold(PointSet::EMPTY, |acc, n| acc | n.kernel());
            lemma.check(m.kernel() == union, || {
                format!("mixing of {:?} has kernel {:?}, members give {union:?}", fam, m.kernel())
            });
            entries.insert((union, m.kernel()));
        }
        MixingPool { carrier_size, entries: entries.into_iter().collect(), families: fams.len() as u64, lemma }
    }

    pub fn families(&self) -> u64 {
        self.families
    }

    /// Result of the tail-filter lemma over the pool.
    pub fn lemma_report(&self) -> &TheoremReport {
        &self.lemma
    }

    pub fn check(&self, s: &ConvSpace) -> TheoremReport {
        assert_eq!(s.size(), self.carrier_size);
        let mut r = TheoremReport::default();
        for x in 0..s.size() {
            for &(union, mixed) in &self.entries {
                if s.converges_kernel(union, x) {
                    r.check(s.converges_kernel(mixed, x), || {
                        format!("members with kernels inside {union:?} converge to {x} but the mixing ({mixed:?}) does not, in {s:?}")
                    });
                }
            }
        }
        r
    }
}

pub fn verify_mixing_theorem(s: &ConvSpace, bounds: Bounds) -> TheoremReport {
    MixingPool::new(s.size(), bounds).check(s)
}

/// A net of nets whose reaction misses the iterated limit.
#[derive(Clone, Debug)]
pub struct ReactionWitness {
    pub outer_index: DirectedIndex,
    pub members: Vec<Net>,
    /// Limit of each member net.
    pub inner_limits: Vec<usize>,
    /// Limit of the net of inner limits.
    pub limit: usize,
    pub reaction: Net,
}

#[derive(Clone, Debug, Default)]
pub struct IteratedLimitReport {
    pub report: TheoremReport,
    pub witness: Option<ReactionWitness>,
}

impl IteratedLimitReport {
    pub fn holds(&self) -> bool {
        self.report.passed()
    }
}

struct ReactionEntry {
    outer: usize,
    kernels: Vec<usize>,
    reaction: PointSet,
}

/// Nets of nets: an outer directed set `J` with `|J| <= bounds.family` and
/// one member per element of `J`. Convergence only sees tail filters, so
/// members range over one representative per tail filter whose kernel has
/// at most `bounds.index` points.
pub struct IteratedLimitPool {
    carrier_size: usize,
    outers: Vec<(DirectedIndex, PointSet)>,
    members: Vec<Net>,
    entries: Vec<ReactionEntry>,
}

impl IteratedLimitPool {
    pub fn new(carrier_size: usize, bounds: Bounds) -> Self {
        let members: Vec<Net> = PrincipalFilter::all(carrier_size)
            .filter(|f| f.kernel().len() <= bounds.index)
            .map(|f| net_from_filter(&f))
            .collect();
        let mut outers = Vec::new();
        let mut entries = Vec::new();
        for size in 1..=bounds.family {
            for j in DirectedIndex::enumerate_all(size) {
                let top: PointSet = j.top_class().into_iter().collect();
                let o = outers.len();
                let total = members.len().pow(size as u32);
                for mut code in 0..total {
                    let kernels: Vec<usize> = (0..size)
                        .map(|_| {
                            let v = code % members.len();
                            code /= members.len();
                            v
                        })
                        .collect();
                    let fam: Vec<Net> = kernels.iter().map(|&i| members[i].clone()).collect();
                    let r = reaction(&j, &fam).expect("sizes agree");
                    entries.push(ReactionEntry { outer: o, kernels, reaction: r.kernel() });
                }
                outers.push((j, top));
            }
        }
        IteratedLimitPool { carrier_size, outers, members, entries }
    }

    /// Whenever every member converges to some `y_j` and the net `(y_j)`
    /// converges to `x`, the reaction must converge to `x`.
    pub fn check(&self, s: &ConvSpace) -> IteratedLimitReport {
        assert_eq!(s.size(), self.carrier_size);
        let mut out = IteratedLimitReport::default();
        let member_kernels: Vec<PointSet> = self.members.iter().map(|m| m.kernel()).collect();
        for e in &self.entries {
            let (j, top) = &self.outers[e.outer];
            let choices: Vec<Vec<usize>> =
                e.kernels.iter().map(|&k| s.limits(member_kernels[k]).iter().collect()).collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut pick = vec![0usize; choices.len()];
            loop {
                let ys: Vec<usize> = pick.iter().zip(&choices).map(|(&p, c)| c[p]).collect();
                let outer_kernel: PointSet = top.iter().map(|t| ys[t]).collect();
                for x in s.limits(outer_kernel) {
                    let ok = s.converges_kernel(e.reaction, x);
                    if !ok && out.witness.is_none() {
                        let fam: Vec<Net> = e.kernels.iter().map(|&k| self.members[k].clone()).collect();
                        out.witness = Some(ReactionWitness {
                            outer_index: j.clone(),
                            reaction: reaction(j, &fam).expect("sizes agree"),
                            members: fam,
                            inner_limits: ys.clone(),
                            limit: x,
                        });
                    }
                    out.report.check(ok, || {
                        format!(
                            "outer size {}, member kernels {:?}, limits {ys:?} -> {x}, reaction kernel {:?} in {s:?}",
                            j.size(),
                            e.kernels.iter().map(|&k| member_kernels[k]).collect::<Vec<_>>(),
                            e.reaction
                        )
                    });
                }
                // Next choice of inner limits.
                let mut i = 0;
                loop {
                    if i == pick.len() {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < choices[i].len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
            }
        }
        out
    }
}

pub fn verify_iterated_limit(s: &ConvSpace, bounds: Bounds) -> IteratedLimitReport {
    IteratedLimitPool::new(s.size(), bounds).check(s)
}

/// Net to filter to net and filter to net to filter over every filter and
/// every net with index at most `max_index`.
pub fn verify_roundtrip(s: &ConvSpace, nets: &[Net]) -> TheoremReport {
    let cert = roundtrip(s, nets);
    let mut r = TheoremReport { cases: (cert.filters_checked + cert.nets_checked) as u64, ..Default::default() };
    r.failed = cert.mismatches.len() as u64;
    r.failures = cert.mismatches.into_iter().take(MAX_RECORDED).collect();
    r
}

/// The seven basic facts on continuity, closed sets and open sets. The
/// composition fact is checked for `g . f` over the given maps `S -> T`
/// and `T -> U`; the others over every subset of `S`.
pub fn verify_bas(s: &ConvSpace, t: &ConvSpace, u: &ConvSpace, fs: &[PointMap], gs: &[PointMap]) -> TheoremReport {
    let mut r = TheoremReport::default();
    for f in fs {
        for g in gs {
            let (Ok(cf), Ok(cg)) = (is_continuous(f, s, t), is_continuous(g, t, u)) else {
                r.check(false, || "map sizes do not match spaces".into());
                continue;
            };
            if cf && cg {
                let gf = f.then(g).expect("sizes checked");
                r.check(is_continuous(&gf, s, u).unwrap_or(false), || {
                    format!("(1) {:?} then {:?} not continuous", f.images, g.images)
                });
            }
        }
    }
    let n = s.size();
    let all = s.carrier();
    let subsets: Vec<PointSet> = all.subsets().collect();
    for &a in &subsets {
        r.check(a.is_subset(s.closure(a)), || format!("(2) {a:?} not inside its closure in {s:?}"));
        r.check(s.is_open(a) == s.is_closed(a.complement(n)), || {
            format!("(3) {a:?} open/complement closed disagree in {s:?}")
        });
    }
    let closed: Vec<PointSet> = subsets.iter().copied().filter(|&a| s.is_closed(a)).collect();
    let open: Vec<PointSet> = subsets.iter().copied().filter(|&a| s.is_open(a)).collect();
    // Arbitrary families of subsets of a finite set reduce to pairs plus the
    // empty family.
    r.check(s.is_closed(all) && s.is_open(PointSet::EMPTY), || {
        format!("(4)/(6) empty family in {s:?}")
    });
    r.check(s.is_closed(PointSet::EMPTY) && s.is_open(all), || {
        format!("(5)/(7) empty family in {s:?}")
    });
    let inter_closed = closed.iter().fold(all, |acc, &c| acc & c);
    r.check(s.is_closed(inter_closed), || format!("(4) intersection of all closed sets in {s:?}"));
    let union_open = open.iter().fold(PointSet::EMPTY, |acc, &o| acc | o);
    r.check(s.is_open(union_open), || format!("(6) union of all open sets in {s:?}"));
    for &a in &closed {
        for &b in &closed {
            r.check(s.is_closed(a & b), || format!("(4) {a:?} ∩ {b:?} in {s:?}"));
            r.check(s.is_closed(a | b), || format!("(5) {a:?} ∪ {b:?} in {s:?}"));
        }
    }
    for &a in &open {
        for &b in &open {
            r.check(s.is_open(a | b), || format!("(6) {a:?} ∪ {b:?} in {s:?}"));
            r.check(s.is_open(a & b), || format!("(7) {a:?} ∩ {b:?} in {s:?}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::enumerate_structures;

    fn ps(p: &[usize]) -> PointSet {
        PointSet::from_points(p.iter().copied())
    }

    #[test]
    fn multiset_counts() {
        // C(p+k-1, k) summed over k = 1..=3 for p = 30.
        assert_eq!(multisets(30, 3).len(), 30 + 465 + 4960);
        assert_eq!(multisets(2, 2), vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn mixing_on_discrete_and_singletons() {
        let s = ConvSpace::discrete(3);
        let r = verify_mixing_theorem(&s, Bounds { index: 2, family: 1 });
        assert!(r.passed() && r.cases > 0);
        let pool = MixingPool::new(2, Bounds { index: 2, family: 2 });
        assert!(pool.lemma_report().passed());
    }

    #[test]
    fn iterated_limit_chain3_fails() {
        let s = ConvSpace::new(vec![ps(&[0]), ps(&[0, 1]), ps(&[1, 2])]).unwrap();
        let r = verify_iterated_limit(&s, Bounds { index: 3, family: 2 });
        assert!(!r.holds());
        let w = r.witness.unwrap();
        assert!(!s.converges_net(&w.reaction, w.limit).unwrap());
        assert!(verify_iterated_limit(&ConvSpace::discrete(3), Bounds { index: 3, family: 2 }).holds());
    }

    #[test]
    fn iterated_limit_matches_topological_small() {
        let pool = IteratedLimitPool::new(2, Bounds { index: 2, family: 2 });
        for s in enumerate_structures(2).unwrap() {
            assert_eq!(pool.check(&s).holds(), s.is_topological());
        }
    }

    #[test]
    fn bas_on_chain() {
        let s = ConvSpace::new(vec![ps(&[0]), ps(&[0, 1]), ps(&[1, 2])]).unwrap();
        let maps: Vec<PointMap> = PointMap::enumerate(3, 3).collect();
        let r = verify_bas(&s, &s, &s, &maps, &maps);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
