//! Closed forms for scalar sequences.
//!
//! A [`Combo`] is `c + Σ a·r^k + Σ b/(s·k + m)` for `k >= 1`, with ratios in
//! `(0, 1)` and `s·k + m > 0`. A [`ScalarSeq`] is periodic in combos: the
//! term at `k` uses class `(k - 1) mod P` evaluated at `k` itself. Every
//! term of the sequence language normalizes to one `ScalarSeq` per
//! coordinate, and everything below is decided exactly on that form.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rational::{ceil_index, lcm, max, powi, q, sign, Frac, Q};

/// `c + Σ a·r^k + Σ b/(s·k + m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combo {
    pub constant: Q,
    /// ratio in `(0, 1)` -> nonzero coefficient
    pub geoms: BTreeMap<Q, Q>,
    /// reduced `(s, m)`, `s >= 1`, `s + m >= 1` -> nonzero coefficient
    pub harmonics: BTreeMap<(i64, i64), Q>,
}

/// Least `k >= start` with `pred(k)`, for `pred` monotone from `start` on.
pub(crate) fn monotone_search(start: u64, mut pred: impl FnMut(u64) -> bool) -> u64 {
    if pred(start) {
        return start;
    }
    let mut lo = start;
    let mut step = 1u64;
    let mut hi = start + 1;
    while !pred(hi) {
        lo = hi;
        step = step.saturating_mul(2);
        hi = hi.checked_add(step).expect("search diverged");
    }
    // pred(lo) false, pred(hi) true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn frac_max(a: Frac, b: Frac) -> Frac {
    if a.le(&b) {
        b
    } else {
        a
    }
}

fn qk(k: u64) -> Q {
    Q::from_integer(k.into())
}

impl Combo {
    pub fn constant(c: Q) -> Self {
        Combo { constant: c, ..Default::default() }
    }

    /// `a·r^k`; a zero ratio or coefficient gives the zero sequence.
    pub fn geom(a: Q, r: Q) -> Self {
        let mut out = Combo::default();
        out.add_geom(r, a);
        out
    }

    /// `b / k`.
    pub fn harmonic(b: Q) -> Self {
        let mut out = Combo::default();
        out.add_harmonic(1, 0, b);
        out
    }

    fn add_geom(&mut self, r: Q, a: Q) {
        assert!(!r.is_negative() && r < q(1), "ratio must lie in [0, 1)");
        if r.is_zero() || a.is_zero() {
            return;
        }
        let e = self.geoms.entry(r.clone()).or_insert_with(Q::zero);
        *e += a;
        if e.is_zero() {
            self.geoms.remove(&r);
        }
    }

    fn add_harmonic(&mut self, s: i64, m: i64, b: Q) {
        assert!(s >= 1 && s + m >= 1, "harmonic denominator must stay positive");
        if b.is_zero() {
            return;
        }
        let g = s.gcd(&m);
        let key = (s / g, m / g);
        let e = self.harmonics.entry(key).or_insert_with(Q::zero);
        *e += b / q(g);
        if e.is_zero() {
            self.harmonics.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    /// No geometric or harmonic part, so the sequence is constant.
    pub fn is_constant(&self) -> bool {
        self.geoms.is_empty() && self.harmonics.is_empty()
    }

    pub fn add(&self, other: &Combo) -> Combo {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (r, a) in &other.geoms {
            out.add_geom(r.clone(), a.clone());
        }
        for (&(s, m), b) in &other.harmonics {
            out.add_harmonic(s, m, b.clone());
        }
        out
    }

    pub fn scale(&self, t: &Q) -> Combo {
        if t.is_zero() {
            return Combo::default();
        }
        Combo {
            constant: &self.constant * t,
            geoms: self.geoms.iter().map(|(r, a)| (r.clone(), a * t)).collect(),
            harmonics: self.harmonics.iter().map(|(k, b)| (*k, b * t)).collect(),
        }
    }

    pub fn neg(&self) -> Combo {
        self.scale(&q(-1))
    }

    pub fn sub(&self, other: &Combo) -> Combo {
        self.add(&other.neg())
    }

    /// The sequence `k -> self(stride·k + offset)`.
    pub fn reindex(&self, stride: i64, offset: i64) -> Combo {
        assert!(stride >= 1 && stride + offset >= 1, "reindex must keep indices positive");
        let mut out = Combo::constant(self.constant.clone());
        for (r, a) in &self.geoms {
            out.add_geom(powi(r, stride), a * powi(r, offset));
        }
        for (&(s, m), b) in &self.harmonics {
            out.add_harmonic(s * stride, s * offset + m, b.clone());
        }
        out
    }

    pub fn eval(&self, k: u64) -> Q {
        assert!(k >= 1);
        let mut v = self.constant.clone();
        for (r, a) in &self.geoms {
            v += a * super::rational::pow(&r, k);
        }
        for (&(s, m), b) in &self.harmonics {
            v += b / q(s * k as i64 + m);
        }
        v
    }

    /// [`Combo::eval`] without reducing.
    pub fn eval_frac(&self, k: u64) -> Frac {
        assert!(k >= 1);
        let mut v = Frac::from_q(&self.constant);
        for (r, a) in &self.geoms {
            v = v.add(&Frac::pow(r, k).mul_q(a));
        }
        for (&(s, m), b) in &self.harmonics {
            v = v.add(&Frac::from_q(b).div_int(s * k as i64 + m));
        }
        v
    }

    /// `D(k) = Σ |a|·r^k + Σ |b|/(s·k + m)`, a nonincreasing bound on
    /// `|self(k) - constant|` that tends to zero.
    pub fn deviation(&self) -> Combo {
        Combo {
            constant: Q::zero(),
            geoms: self.geoms.iter().map(|(r, a)| (r.clone(), a.abs())).collect(),
            harmonics: self.harmonics.iter().map(|(k, b)| (*k, b.abs())).collect(),
        }
    }

    /// The combo without its constant.
    pub fn tail_part(&self) -> Combo {
        Combo { constant: Q::zero(), ..self.clone() }
    }

    /// Least `k >= start` with `D(k) < eps` (or `<= eps` when not strict).
    pub fn deviation_below(&self, eps: &Q, strict: bool, start: u64) -> u64 {
        self.deviation_below_frac(&Frac::from_q(eps), strict, start)
    }

    fn deviation_below_frac(&self, eps: &Frac, strict: bool, start: u64) -> u64 {
        let d = self.deviation();
        if d.is_zero() {
            assert!(!strict || eps.is_positive());
            return start;
        }
        assert!(eps.is_positive(), "threshold must be positive");
        monotone_search(start, |k| {
            let v = d.eval_frac(k);
            if strict {
                !eps.le(&v)
            } else {
                v.le(eps)
            }
        })
    }

    /// Numerator of the harmonic part over the common denominator
    /// `Π (s·k + m)`, low degree first.
    fn harmonic_numerator(&self) -> Vec<Q> {
        let keys: Vec<(i64, i64)> = self.harmonics.keys().copied().collect();
        let mut total = vec![Q::zero(); keys.len()];
        for (j, b) in self.harmonics.values().enumerate() {
            let mut poly = vec![b.clone()];
            for (i, &(s, m)) in keys.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Q::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d] += c * q(m);
                    next[d + 1] += c * q(s);
                }
                poly = next;
            }
            for (d, c) in poly.into_iter().enumerate() {
                total[d] += c;
            }
        }
        total
    }

    /// `(σ, K)` with `sign(self(k)) = σ` for every `k >= K`.
    pub fn eventual_sign(&self) -> (i8, u64) {
        if self.is_zero() {
            return (0, 1);
        }
        if !self.constant.is_zero() {
            let c = self.constant.abs();
            return (sign(&self.constant), self.deviation_below(&c, true, 1));
        }
        if !self.harmonics.is_empty() {
            return self.harmonic_dominated_sign();
        }
        // Geometric terms only: the largest ratio wins.
        let (rstar, astar) = self.geoms.iter().next_back().expect("nonzero combo");
        let others: Vec<(Q, Q)> = self
            .geoms
            .iter()
            .filter(|(r, _)| *r != rstar)
            .map(|(r, a)| (r / rstar, (a / astar).abs()))
            .collect();
        let k = monotone_search(1, |k| {
            let s = others.iter().fold(Frac::zero(), |acc, (t, a)| acc.add(&Frac::pow(t, k).mul_q(a)));
            !Frac::from_q(&q(1)).le(&s)
        });
        (sign(astar), k)
    }

    fn harmonic_dominated_sign(&self) -> (i8, u64) {
        let poly = self.harmonic_numerator();
        let d = poly.iter().rposition(|c| !c.is_zero()).expect("independent harmonic terms");
        let lead = poly[d].clone();
        let sigma = sign(&lead);
        let spread: Q = poly[..d].iter().map(|c| (c / &lead).abs()).sum();
        let r = ceil_index(&(spread * q(2)));
        if self.geoms.is_empty() {
            return (sigma, r);
        }
        // |H(k)| >= c0 · k^{-e} for k >= r.
        let e = (self.harmonics.len() - d) as u32;
        let prod: Q = self.harmonics.keys().map(|&(s, m)| q(s + m.max(0))).product();
        let c0 = lead.abs() / q(2) / prod;
        let kpow = |k: u64| super::rational::pow(&qk(k), e as u64);
        // Past these points every r^k·k^e is nonincreasing.
        let mut start = r;
        for ratio in self.geoms.keys() {
            let ki = monotone_search(1, |k| ratio * kpow(k + 1) <= kpow(k));
            start = start.max(ki);
        }
        let geoms: Vec<(Q, Q)> = self.geoms.iter().map(|(r, a)| (r.clone(), a.abs())).collect();
        let k = monotone_search(start, |k| {
            let g: Q = geoms.iter().map(|(r, a)| a * super::rational::pow(&r, k)).sum();
            g * kpow(k) < c0
        });
        (sigma, k)
    }

    /// Whether `self(k) <= t` (or `< t` when `strict`, for the supremum)
    /// for every `k >= m`. Cheaper than comparing [`Combo::sup_from`]: the
    /// scan stops at the first term over `t`.
    pub fn bounded_from(&self, m: u64, t: &Frac, strict: bool) -> bool {
        let m = m.max(1);
        let gap = t.sub(&Frac::from_q(&self.constant));
        let tail = self.tail_part();
        let end = if gap.is_positive() {
            tail.deviation_below_frac(&gap, strict, m)
        } else if strict || !gap.is_zero() {
            return false;
        } else {
            match tail.eventual_sign() {
                (0, _) => return true,
                (1, _) => return false,
                (_, k) => k.max(m),
            }
        };
        (m..end).all(|j| {
            let v = self.eval_frac(j);
            if strict {
                !t.le(&v)
            } else {
                v.le(t)
            }
        })
    }

    /// Exact `sup_{k >= m} self(k)`.
    pub fn sup_from(&self, m: u64) -> Q {
        self.sup_from_frac(m).to_q()
    }

    /// [`Combo::sup_from`] without the final reduction.
    pub fn sup_from_frac(&self, m: u64) -> Frac {
        let m = m.max(1);
        let c = Frac::from_q(&self.constant);
        if self.is_constant() {
            return c;
        }
        let (_, k) = self.tail_part().eventual_sign();
        let end = m.max(k);
        let scan_max = |from: u64, to: u64| {
            (from..=to).map(|j| self.eval_frac(j)).reduce(frac_max).expect("nonempty scan")
        };
        let top = scan_max(m, end);
        if top.le(&c) {
            return c;
        }
        let k2 = self.tail_part().deviation_below_frac(&top.sub(&c), true, m);
        if k2 > end {
            return frac_max(top, scan_max(end + 1, k2));
        }
        top
    }

    /// Exact `inf_{k >= m} self(k)`.
    pub fn inf_from(&self, m: u64) -> Q {
        -self.neg().sup_from(m)
    }
}

/// A sequence that is periodic in combos.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarSeq {
    pub classes: Vec<Combo>,
}

impl ScalarSeq {
    pub fn from_combo(c: Combo) -> Self {
        ScalarSeq { classes: vec![c] }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_combo(Combo::constant(c))
    }

    pub fn period(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn class_of(&self, k: u64) -> usize {
        ((k - 1) % self.period()) as usize
    }

    pub fn eval(&self, k: u64) -> Q {
        self.classes[self.class_of(k)].eval(k)
    }

    fn combine(&self, other: &ScalarSeq, f: impl Fn(&Combo, &Combo) -> Combo) -> ScalarSeq {
        let p = lcm(self.period(), other.period());
        let classes = (0..p)
            .map(|c| f(&self.classes[(c % self.period()) as usize], &other.classes[(c % other.period()) as usize]))
            .collect();
        ScalarSeq { classes }.compact()
    }

    pub fn add(&self, other: &ScalarSeq) -> ScalarSeq {
        self.combine(other, Combo::add)
    }

    pub fn sub(&self, other: &ScalarSeq) -> ScalarSeq {
        self.combine(other, Combo::sub)
    }

    pub fn scale(&self, t: &Q) -> ScalarSeq {
        ScalarSeq { classes: self.classes.iter().map(|c| c.scale(t)).collect() }.compact()
    }

    /// `k -> self(k + k0)`.
    pub fn shift(&self, k0: u64) -> ScalarSeq {
        let p = self.period();
        let classes = (0..p)
            .map(|c| self.classes[((c + k0) % p) as usize].reindex(1, k0 as i64))
            .collect();
        ScalarSeq { classes }.compact()
    }

    /// `k -> self(stride·k + offset)`.
    pub fn subseq(&self, stride: u64, offset: u64) -> ScalarSeq {
        assert!(stride >= 1);
        let p = self.period();
        let classes = (0..p)
            .map(|c| {
                let idx = (stride * (c + 1) + offset - 1) % p;
                self.classes[idx as usize].reindex(stride as i64, offset as i64)
            })
            .collect();
        ScalarSeq { classes }.compact()
    }

    /// `k -> members[selector[(k - 1) mod p]](k)`.
    pub fn braid(selector: &[usize], members: &[ScalarSeq]) -> ScalarSeq {
        let p = members.iter().fold(selector.len() as u64, |acc, m| lcm(acc, m.period()));
        let classes = (0..p)
            .map(|c| {
                let m = &members[selector[(c % selector.len() as u64) as usize]];
                m.classes[(c % m.period()) as usize].clone()
            })
            .collect();
        ScalarSeq { classes }.compact()
    }

    /// Shortest period that describes the same classes.
    pub fn compact(mut self) -> ScalarSeq {
        let p = self.classes.len();
        for d in 1..p {
            if p % d == 0 && (0..p).all(|i| self.classes[i] == self.classes[i % d]) {
                self.classes.truncate(d);
                return self;
            }
        }
        self
    }

    /// Class `c` as a sequence of its own: `j -> self(P·j + c + 1 - P)`.
    pub fn class_seq(&self, c: usize) -> Combo {
        let p = self.period() as i64;
        self.classes[c].reindex(p, c as i64 + 1 - p)
    }

    /// The limit, when every class tends to the same constant.
    pub fn limit(&self) -> Option<Q> {
        let first = &self.classes[0].constant;
        self.classes.iter().all(|c| &c.constant == first).then(|| first.clone())
    }

    pub fn limsup(&self) -> Q {
        self.classes.iter().map(|c| c.constant.clone()).reduce(max).expect("nonempty")
    }

    pub fn liminf(&self) -> Q {
        self.classes.iter().map(|c| c.constant.clone()).reduce(super::rational::min).expect("nonempty")
    }

    /// First class index `j` whose term index is at least `m`.
    fn first_j(&self, c: usize, m: u64) -> u64 {
        let p = self.period();
        // P·j + c + 1 - P >= m
        let need = m as i64 - c as i64 - 1 + p as i64;
        (need.max(p as i64) as u64).div_ceil(p)
    }

    /// Exact `sup_{k >= m} self(k)`.
    pub fn sup_from(&self, m: u64) -> Q {
        (0..self.classes.len())
            .map(|c| self.class_seq(c).sup_from(self.first_j(c, m.max(1))))
            .reduce(max)
            .expect("nonempty")
    }

    /// Exact `inf_{k >= m} self(k)`.
    pub fn inf_from(&self, m: u64) -> Q {
        -self.scale(&q(-1)).sup_from(m)
    }

    /// Exact `sup_{k >= m} |self(k)|`.
    pub fn abs_sup_from(&self, m: u64) -> Q {
        self.abs_sup_from_frac(m).to_q()
    }

    /// Whether `sup_{k >= m} |self(k)|` is `<= t`, or `< t` when `strict`.
    pub fn abs_bounded_from(&self, m: u64, t: &Frac, strict: bool) -> bool {
        let neg = self.scale(&q(-1));
        (0..self.classes.len()).all(|c| {
            let j = self.first_j(c, m.max(1));
            self.class_seq(c).bounded_from(j, t, strict) && neg.class_seq(c).bounded_from(j, t, strict)
        })
    }

    /// [`ScalarSeq::abs_sup_from`] without the final reduction.
    pub fn abs_sup_from_frac(&self, m: u64) -> Frac {
        let neg = self.scale(&q(-1));
        (0..self.classes.len())
            .flat_map(|c| {
                let j = self.first_j(c, m.max(1));
                [self.class_seq(c).sup_from_frac(j), neg.class_seq(c).sup_from_frac(j)]
            })
            .reduce(frac_max)
            .expect("nonempty")
    }

    /// `Σ_c D_c(k)`: nonincreasing, tends to zero, and bounds
    /// `|self(k) - constant of its class|` for every `k`.
    pub fn deviation_envelope(&self) -> Combo {
        self.classes.iter().fold(Combo::default(), |acc, c| acc.add(&c.deviation()))
    }

    /// Whether every term is `>= 0`, decided from eventual signs plus a
    /// finite scan.
    pub fn is_nonneg(&self) -> bool {
        (0..self.classes.len()).all(|c| {
            let g = self.class_seq(c);
            let (s, k) = g.eventual_sign();
            s >= 0 && (1..k).all(|j| !g.eval(j).is_negative())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vlattice::rational::qf;
    use proptest::prelude::*;

    fn sample_combo(c: i64, a: i64, r: (i64, i64), b: i64, key: (i64, i64)) -> Combo {
        let mut x = Combo::constant(q(c)).add(&Combo::geom(q(a), qf(r.0, r.1)));
        x.add_harmonic(key.0, key.1, q(b));
        x
    }

    #[test]
    fn harmonic_keys_reduce() {
        let mut a = Combo::default();
        a.add_harmonic(2, 0, q(1));
        assert_eq!(a, Combo::harmonic(qf(1, 2)));
        let mut b = Combo::default();
        b.add_harmonic(2, 2, q(3));
        assert_eq!(b.harmonics.get(&(1, 1)), Some(&qf(3, 2)));
        assert_eq!(b.eval(1), qf(3, 4));
    }

    #[test]
    fn reindex_matches_eval() {
        let x = sample_combo(1, 3, (2, 3), -5, (2, 1));
        for (s, o) in [(1, 0), (1, 4), (3, 2), (2, -1), (5, -4)] {
            let y = x.reindex(s, o);
            for k in 1..20u64 {
                assert_eq!(y.eval(k), x.eval((s * k as i64 + o) as u64));
            }
        }
    }

    #[test]
    fn eventual_sign_cases() {
        // 1/k - 1/(k+1) > 0 always; geometric tail 10·(1/2)^k must be beaten.
        let mut h = Combo::harmonic(q(1));
        h.add_harmonic(1, 1, q(-1));
        assert_eq!(h.eventual_sign().0, 1);
        let x = h.add(&Combo::geom(q(-10), qf(1, 2)));
        let (s, k) = x.eventual_sign();
        assert_eq!(s, 1);
        for j in k..k + 200 {
            assert!(x.eval(j).is_positive());
        }
        assert!(x.eval(1).is_negative());
        // Geometric only: (1/3)^k - (1/2)^k < 0.
        let g = Combo::geom(q(1), qf(1, 3)).add(&Combo::geom(q(-1), qf(1, 2)));
        assert_eq!(g.eventual_sign().0, -1);
        assert_eq!(Combo::default().eventual_sign(), (0, 1));
    }

    #[test]
    fn sup_inf_from() {
        // (1/2)^k on k >= 1: sup 1/2, inf 0.
        let g = Combo::geom(q(1), qf(1, 2));
        assert_eq!(g.sup_from(1), qf(1, 2));
        assert_eq!(g.inf_from(1), q(0));
        assert_eq!(g.sup_from(3), qf(1, 8));
        // 1 - 1/k: sup 1 (not attained), inf 0.
        let h = Combo::constant(q(1)).add(&Combo::harmonic(q(-1)));
        assert_eq!(h.sup_from(1), q(1));
        assert_eq!(h.inf_from(1), q(0));
    }

    #[test]
    fn periodic_ops() {
        let a = ScalarSeq::constant(q(0));
        let b = ScalarSeq::constant(q(1));
        let alt = ScalarSeq::braid(&[0, 1], &[a.clone(), b.clone()]);
        assert_eq!(alt.eval(1), q(0));
        assert_eq!(alt.eval(2), q(1));
        assert_eq!(alt.limit(), None);
        assert_eq!(alt.limsup(), q(1));
        assert_eq!(alt.shift(1).eval(1), q(1));
        assert_eq!(alt.subseq(2, 0), b);
        assert_eq!(alt.subseq(2, 1), a);
        assert_eq!(alt.sup_from(5), q(1));
        assert_eq!(alt.inf_from(5), q(0));
        let same = ScalarSeq::braid(&[0, 0, 0], &[b.clone()]);
        assert_eq!(same.period(), 1);
    }

    fn arb_combo() -> impl Strategy<Value = Combo> {
        (
            -5i64..5,
            prop::collection::vec((-5i64..5, 1i64..6, 2i64..7), 0..3),
            prop::collection::vec((-5i64..5, 1i64..4, -1i64..4), 0..3),
        )
            .prop_map(|(c, gs, hs)| {
                let mut x = Combo::constant(q(c));
                for (a, n, d) in gs {
                    if n < d {
                        x.add_geom(qf(n, d), q(a));
                    }
                }
                for (b, s, m) in hs {
                    if s + m >= 1 {
                        x.add_harmonic(s, m, q(b));
                    }
                }
                x
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eventual_sign_holds_on_window(x in arb_combo()) {
            let (s, k) = x.eventual_sign();
            for j in k..k + 60 {
                prop_assert_eq!(sign(&x.eval(j)), s);
            }
        }

        #[test]
        fn sup_dominates_and_is_tight(x in arb_combo(), m in 1u64..6) {
            let sup = x.sup_from(m);
            let inf = x.inf_from(m);
            let vals: Vec<Q> = (m..m + 80).map(|k| x.eval(k)).collect();
            prop_assert!(vals.iter().all(|v| v <= &sup && v >= &inf));
            // The sup is either attained in the window or equals the limit.
            prop_assert!(vals.contains(&sup) || sup == x.constant);
            prop_assert!(vals.contains(&inf) || inf == x.constant);
        }

        #[test]
        fn bounded_from_matches_sup(x in arb_combo(), m in 1u64..6, shift in -2i64..=2) {
            let sup = x.sup_from(m);
            for t in [sup.clone() + qf(shift, 7), x.constant.clone() + qf(shift, 7)] {
                let f = Frac::from_q(&t);
                prop_assert_eq!(x.bounded_from(m, &f, false), sup <= t);
                prop_assert_eq!(x.bounded_from(m, &f, true), sup < t);
            }
        }

        #[test]
        fn deviation_bounds(x in arb_combo()) {
            let d = x.deviation();
            for k in 1..40u64 {
                prop_assert!((x.eval(k) - &x.constant).abs() <= d.eval(k));
                prop_assert!(d.eval(k + 1) <= d.eval(k));
            }
        }
    }
}
