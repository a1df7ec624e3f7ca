//! Deciders for order convergence, relative uniform convergence, the Mackey
//! modification and order boundedness on the sequence language.
//!
//! Every positive answer carries a certificate that can be re-checked by
//! evaluating the term directly.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::normal::{monotone_search, Combo, ScalarSeq};
use super::rational::{max, q, Frac, Q};
use super::term::{Layout, SeqTerm, Shape};
use super::vector::{Ambient, LatticeVector, SparseSeq, StepFn};
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Yes(T),
    No,
    /// Outside what the closed forms decide.
    Undecided,
}

impl<T> Verdict<T> {
    pub fn yes(self) -> Option<T> {
        match self {
            Verdict::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_yes(&self) -> Option<&T> {
        match self {
            Verdict::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

/// A dominating sequence `u_k` indexed by `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominator {
    /// `u_k` has coordinate `i` equal to `envelopes[i](k)`.
    Coords { layout: Layout, envelopes: Vec<Combo> },
    /// `u_k = 1_{{i >= stride·k + offset}}` in `ℓ∞`.
    UnitTail { stride: u64, offset: u64 },
}

impl Dominator {
    pub fn at(&self, k: u64) -> Result<LatticeVector> {
        match self {
            Dominator::Coords { layout, envelopes } => layout.vector(envelopes.iter().map(|e| e.eval(k)).collect()),
            Dominator::UnitTail { stride, offset } => {
                let n = stride * k + offset;
                let entries: BTreeMap<u64, Q> = (1..n).map(|i| (i, Q::zero())).collect();
                Ok(LatticeVector::Seq(SparseSeq::new(Ambient::Linf, entries, Q::one())?))
            }
        }
    }

    /// Symbolic check that `u_k` decreases with infimum zero.
    ///
    /// Combos with no constant and nonnegative coefficients decrease to
    /// zero coordinatewise. On the lexicographic plane the first
    /// coordinate must vanish: otherwise the lower bounds `(0, t)` have no
    /// supremum.
    pub fn decreases_to_zero(&self) -> bool {
        match self {
            Dominator::Coords { layout, envelopes } => {
                let nonneg = envelopes.iter().all(|e| {
                    e.constant.is_zero()
                        && e.geoms.values().all(|a| !a.is_negative())
                        && e.harmonics.values().all(|b| !b.is_negative())
                });
                let lex_ok = *layout != Layout::Lex || envelopes[0].is_zero();
                nonneg && lex_ok
            }
            Dominator::UnitTail { stride, .. } => *stride >= 1,
        }
    }
}

/// Order limit with its dominating sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OLimit {
    pub limit: LatticeVector,
    pub dominator: Dominator,
}

impl OLimit {
    /// `|x_k - x| <= u_k` and `u_{k+1} <= u_k` for `k <= horizon`, plus the
    /// symbolic check that `u_k` decreases to zero.
    pub fn verify(&self, t: &SeqTerm, horizon: u64) -> Result<bool> {
        if !self.dominator.decreases_to_zero() {
            return Ok(false);
        }
        if let Dominator::Coords { layout: Layout::QVec(_), envelopes } = &self.dominator {
            if let Some(holds) = self.verify_qvec(t, envelopes, horizon)? {
                return Ok(holds);
            }
        }
        let mut prev = self.dominator.at(1)?;
        for k in 1..=horizon {
            let u = self.dominator.at(k)?;
            if k > 1 && !u.le(&prev)? {
                return Ok(false);
            }
            if !t.eval(k)?.sub(&self.limit)?.abs().le(&u)? {
                return Ok(false);
            }
            prev = u;
        }
        Ok(true)
    }

    /// The same check in `Q^n`, on unreduced fractions.
    fn verify_qvec(&self, t: &SeqTerm, envelopes: &[Combo], horizon: u64) -> Result<Option<bool>> {
        let LatticeVector::QVec(limit) = &self.limit else { return Ok(None) };
        let limit: Vec<Frac> = limit.iter().map(Frac::from_q).collect();
        let mut prev: Option<Vec<Frac>> = None;
        for k in 1..=horizon {
            let Some(x) = t.eval_qvec_frac(k)? else { return Ok(None) };
            let u: Vec<Frac> = envelopes.iter().map(|e| e.eval_frac(k)).collect();
            if let Some(p) = &prev {
                if !u.iter().zip(p).all(|(a, b)| a.le(b)) {
                    return Ok(Some(false));
                }
            }
            if !x.iter().zip(&limit).zip(&u).all(|((xi, li), ui)| xi.sub(li).abs().le(ui)) {
                return Ok(Some(false));
            }
            prev = Some(u);
        }
        Ok(Some(true))
    }

    /// `||x_k| - |x|| <= |x_k - x| <= u_k` for `k <= horizon`: the
    /// certificate that `|x_k|` order converges to `|x|`.
    pub fn verify_abs(&self, t: &SeqTerm, horizon: u64) -> Result<bool> {
        let xa = self.limit.abs();
        for k in 1..=horizon {
            let xk = t.eval(k)?;
            let d = xk.abs().sub(&xa)?.abs();
            if !d.le(&xk.sub(&self.limit)?.abs())? || !d.le(&self.dominator.at(k)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `|x_k - limit| <= bound`. Terms in `Q^n` skip reduction.
fn within(t: &SeqTerm, k: u64, limit: &LatticeVector, bound: &LatticeVector) -> Result<bool> {
    if let (LatticeVector::QVec(l), LatticeVector::QVec(b)) = (limit, bound) {
        if let Some(x) = t.eval_qvec_frac(k)? {
            return Ok(x
                .iter()
                .zip(l.iter().zip(b))
                .all(|(xi, (li, bi))| xi.sub(&Frac::from_q(li)).abs().le(&Frac::from_q(bi))));
        }
    }
    t.eval(k)?.sub(limit)?.abs().le(bound)
}

fn limits(coords: &[ScalarSeq]) -> Option<Vec<Q>> {
    coords.iter().map(ScalarSeq::limit).collect()
}

fn envelopes(coords: &[ScalarSeq]) -> Vec<Combo> {
    coords.iter().map(ScalarSeq::deviation_envelope).collect()
}

/// The first lexicographic coordinate must equal its limit exactly: a
/// nonzero combo keeps a sign forever, so "eventually equal" means every
/// class is the pure constant.
fn lex_o_limit(coords: &[ScalarSeq]) -> Option<(Q, Q)> {
    let c1 = coords[0].limit()?;
    let exact = coords[0].classes.iter().all(Combo::is_constant);
    let c2 = coords[1].limit()?;
    exact.then_some((c1, c2))
}

pub fn o_limit(t: &SeqTerm) -> Result<Verdict<OLimit>> {
    Ok(match t.normalize()? {
        Shape::Coords { layout, coords } => {
            if layout == Layout::Lex {
                match lex_o_limit(&coords) {
                    Some((c1, c2)) => Verdict::Yes(OLimit {
                        limit: LatticeVector::LexR2(c1, c2),
                        dominator: Dominator::Coords {
                            layout,
                            envelopes: vec![Combo::default(), coords[1].deviation_envelope()],
                        },
                    }),
                    None => Verdict::No,
                }
            } else {
                match limits(&coords) {
                    Some(c) => Verdict::Yes(OLimit {
                        limit: layout.vector(c)?,
                        dominator: Dominator::Coords { envelopes: envelopes(&coords), layout },
                    }),
                    None => Verdict::No,
                }
            }
        }
        Shape::Units { ambient: Ambient::Linf, stride, offset } => Verdict::Yes(OLimit {
            limit: LatticeVector::zero(super::vector::Carrier::Seq(Ambient::Linf)),
            dominator: Dominator::UnitTail { stride, offset },
        }),
        Shape::Units { ambient: Ambient::C0, .. } => Verdict::No,
        Shape::Typewriter { .. } => Verdict::Undecided,
    })
}

/// `Σ |a| + Σ |b|/(s + m)`: bounds `D(k)` for every `k >= 1` and equals
/// `|v|` for a single geometric term `r^k·v`.
fn envelope_weight(d: &Combo) -> Q {
    let g: Q = d.geoms.values().map(|a| a.abs()).sum();
    let h: Q = d.harmonics.iter().map(|(&(s, m), b)| b.abs() / q(s + m)).sum();
    g + h
}

/// A relative uniform limit: `|x_k - x| <= ε·e` from `threshold(ε)` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuLimit {
    pub limit: LatticeVector,
    pub e: LatticeVector,
    layout: Layout,
    envelopes: Vec<Combo>,
}

impl RuLimit {
    /// Least `k0` for which the closed-form envelope already gives
    /// `|x_k - x| <= ε·e` at every `k >= k0`.
    pub fn threshold(&self, eps: &Q) -> u64 {
        assert!(eps.is_positive(), "ε must be positive");
        if self.layout == Layout::Lex {
            // |x_k - x| <= ε(1, 0) once the first coordinate is within ε strictly.
            return self.envelopes[0].deviation_below(eps, true, 1);
        }
        self.envelopes
            .iter()
            .zip(self.layout.coords(&self.e))
            .map(|(d, ei)| if d.is_zero() { 1 } else { d.deviation_below(&(eps * ei), false, 1) })
            .max()
            .unwrap_or(1)
    }

    /// For each ε, checks `|x_k - x| <= ε·e` on `threshold(ε) .. + window`.
    pub fn verify(&self, t: &SeqTerm, eps: &[Q], window: u64) -> Result<bool> {
        for e in eps {
            let k0 = self.threshold(e);
            let bound = self.e.scale(e);
            for k in k0..k0 + window {
                if !within(t, k, &self.limit, &bound)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// On the lexicographic plane limits are not unique: anything on the same
/// vertical line works. The canonical choice keeps the second coordinate's
/// limit when there is one and uses zero otherwise.
fn lex_canonical(coords: &[ScalarSeq]) -> Option<(Q, Q)> {
    let c1 = coords[0].limit()?;
    Some((c1, coords[1].limit().unwrap_or_else(Q::zero)))
}

pub fn ru_limit(t: &SeqTerm) -> Result<Verdict<RuLimit>> {
    Ok(match t.normalize()? {
        Shape::Coords { layout, coords } => {
            if layout == Layout::Lex {
                match lex_canonical(&coords) {
                    Some((c1, c2)) => Verdict::Yes(RuLimit {
                        limit: LatticeVector::LexR2(c1, c2),
                        e: LatticeVector::LexR2(Q::one(), Q::zero()),
                        envelopes: envelopes(&coords[..1]),
                        layout,
                    }),
                    None => Verdict::No,
                }
            } else {
                match limits(&coords) {
                    Some(c) => {
                        let env = envelopes(&coords);
                        Verdict::Yes(RuLimit {
                            limit: layout.vector(c)?,
                            e: layout.vector(env.iter().map(envelope_weight).collect())?,
                            envelopes: env,
                            layout,
                        })
                    }
                    None => Verdict::No,
                }
            }
        }
        Shape::Units { .. } => Verdict::No,
        Shape::Typewriter { .. } => Verdict::Undecided,
    })
}

/// Certificate that `e_k` is not relatively uniformly null for a candidate
/// `e`: for every `k <= horizon`, `e_k` is outside the ideal of `e` or has
/// `‖e_k‖_e >= 1/‖e‖_∞`.
pub fn unit_vectors_ru_obstruction(e: &SparseSeq, horizon: u64) -> Result<bool> {
    let sup = e.explicit().map(|(_, v)| v.abs()).fold(e.tail().abs(), max);
    let ev = LatticeVector::Seq(e.clone());
    for k in 1..=horizon {
        let uk = LatticeVector::Seq(SparseSeq::unit(e.ambient(), k));
        match super::vector::e_norm(&uk, &ev)? {
            super::vector::ENorm::NotInIdeal => {}
            super::vector::ENorm::Value(v) => {
                if v * &sup < Q::one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A Mackey limit: `x_k - x ∈ ε·[-w, w]` from `threshold(ε)` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyLimit {
    pub limit: LatticeVector,
    /// The bounded set is the interval `[-w, w]`.
    pub bound: LatticeVector,
    layout: Layout,
    /// `x_k - x` per coordinate.
    diffs: Vec<ScalarSeq>,
}

impl MackeyLimit {
    /// Least `m` with `sup_{k >= m} |x_k - x| <= ε·w` (strictly on the
    /// first lexicographic coordinate), from the exact tail envelopes.
    pub fn threshold(&self, eps: &Q) -> u64 {
        assert!(eps.is_positive(), "ε must be positive");
        let w = self.layout.coords(&self.bound);
        if self.layout == Layout::Lex {
            let target = Frac::from_q(&(eps * &w[0]));
            let d = &self.diffs[0];
            return monotone_search(1, |m| d.abs_bounded_from(m, &target, true));
        }
        self.diffs
            .iter()
            .zip(&w)
            .map(|(d, wi)| {
                let target = Frac::from_q(&(eps * wi));
                monotone_search(1, |m| d.abs_bounded_from(m, &target, false))
            })
            .max()
            .unwrap_or(1)
    }

    /// `x_k - x ∈ [-w, w]` for `k <= horizon`, and `x_k - x ∈ ε[-w, w]` on
    /// `threshold(ε) .. + window`.
    pub fn verify(&self, t: &SeqTerm, horizon: u64, eps: &[Q], window: u64) -> Result<bool> {
        for k in 1..=horizon {
            if !within(t, k, &self.limit, &self.bound)? {
                return Ok(false);
            }
        }
        for e in eps {
            let k0 = self.threshold(e);
            let b = self.bound.scale(e);
            for k in k0..k0 + window {
                if !within(t, k, &self.limit, &b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Searches bounded sets of the form `[-w, w]`; order intervals are cofinal
/// among bounded sets, so this loses nothing.
pub fn mackey_limit(t: &SeqTerm) -> Result<Verdict<MackeyLimit>> {
    Ok(match t.normalize()? {
        Shape::Coords { layout, coords } => {
            let lex = layout == Layout::Lex;
            let settled = |c: &ScalarSeq| (c.limsup() == c.liminf()).then(|| c.limsup());
            let Some(c1) = settled(&coords[0]) else {
                return Ok(Verdict::No);
            };
            let mut limit = vec![c1];
            for c in &coords[1..] {
                match settled(c) {
                    Some(v) => limit.push(v),
                    None if lex => limit.push(Q::zero()),
                    None => return Ok(Verdict::No),
                }
            }
            let diffs: Vec<ScalarSeq> =
                coords.iter().zip(&limit).map(|(c, v)| c.sub(&ScalarSeq::constant(v.clone()))).collect();
            let bound = if lex {
                vec![diffs[0].abs_sup_from(1) + Q::one(), Q::zero()]
            } else {
                diffs.iter().map(|d| d.abs_sup_from(1)).collect()
            };
            Verdict::Yes(MackeyLimit { limit: layout.vector(limit)?, bound: layout.vector(bound)?, layout, diffs })
        }
        // `e_k ∈ ε[-w, w]` needs `w_k >= 1/ε`, which no bounded `w` gives for
        // every ε.
        Shape::Units { .. } => Verdict::No,
        Shape::Typewriter { .. } => Verdict::Undecided,
    })
}

fn archimedean_coords(t: &SeqTerm, what: &str) -> Result<(Layout, Vec<ScalarSeq>)> {
    match t.normalize()? {
        Shape::Coords { layout, coords } if layout != Layout::Lex => Ok((layout, coords)),
        _ => Err(Error::Unsupported(format!("{what} needs a coordinate lattice term"))),
    }
}

/// `(sup_{k >= m} x_k, inf_{k >= m} x_k)`, exact.
pub fn tail_envelopes(t: &SeqTerm, m: u64) -> Result<(LatticeVector, LatticeVector)> {
    let (layout, coords) = archimedean_coords(t, "tail envelopes")?;
    let sup = coords.iter().map(|c| c.sup_from(m)).collect();
    let inf = coords.iter().map(|c| c.inf_from(m)).collect();
    Ok((layout.vector(sup)?, layout.vector(inf)?))
}

/// `inf_m sup_{k >= m} x_k` and `sup_m inf_{k >= m} x_k` agree exactly when
/// the sequence order converges; returns the common value.
pub fn o_limit_limsup(t: &SeqTerm) -> Result<Option<LatticeVector>> {
    if is_order_bounded(t)?.is_none() {
        return Err(Error::Domain("the sequence is not order bounded".into()));
    }
    let (layout, coords) = archimedean_coords(t, "limsup")?;
    let sup: Vec<Q> = coords.iter().map(ScalarSeq::limsup).collect();
    let inf: Vec<Q> = coords.iter().map(ScalarSeq::liminf).collect();
    Ok(if sup == inf { Some(layout.vector(sup)?) } else { None })
}

/// `sup_{j, k >= m} |x_j - x_k|` per coordinate.
pub fn cauchy_envelope(t: &SeqTerm, m: u64) -> Result<Vec<Q>> {
    let (_, coords) = archimedean_coords(t, "Cauchy envelope")?;
    Ok(coords.iter().map(|c| c.sup_from(m) - c.inf_from(m)).collect())
}

/// Whether the Cauchy envelope decreases to zero. It is nonincreasing in
/// `m`, and its limit is the spread between the largest and smallest class
/// limits.
pub fn is_order_cauchy(t: &SeqTerm) -> Result<bool> {
    let (_, coords) = archimedean_coords(t, "Cauchy check")?;
    Ok(coords.iter().all(|c| c.limsup() == c.liminf()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCertificate {
    pub direction: Option<Monotonicity>,
    pub bound: Option<LatticeVector>,
    pub cauchy: bool,
}

impl MonotoneCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.direction.is_some() && self.bound.is_some()
    }

    /// Monotone and order bounded implies order Cauchy.
    pub fn holds(&self) -> bool {
        !self.hypotheses_hold() || self.cauchy
    }
}

/// Monotonicity from the sign of `x_{k+1} - x_k`, boundedness from the exact
/// envelope, then the Cauchy check.
pub fn monotone_cauchy_check(t: &SeqTerm) -> Result<MonotoneCertificate> {
    let (_, coords) = archimedean_coords(t, "monotone check")?;
    let deltas: Vec<ScalarSeq> = coords.iter().map(|c| c.shift(1).sub(c)).collect();
    let up = deltas.iter().all(ScalarSeq::is_nonneg);
    let down = deltas.iter().all(|d| d.scale(&q(-1)).is_nonneg());
    let direction = match (up, down) {
        (true, true) => Some(Monotonicity::Constant),
        (true, false) => Some(Monotonicity::Increasing),
        (false, true) => Some(Monotonicity::Decreasing),
        (false, false) => None,
    };
    Ok(MonotoneCertificate { direction, bound: is_order_bounded(t)?, cauchy: is_order_cauchy(t)? })
}

/// `u` with `|a| <= u` for every listed vector.
pub fn order_bound_of_set(points: &[LatticeVector]) -> Result<LatticeVector> {
    let first = points.first().ok_or(Error::EmptyFamily)?;
    let mut u = first.abs();
    for p in &points[1..] {
        u = u.sup(&p.abs())?;
    }
    Ok(u)
}

/// `u` with `|x_k| <= u` for all `k`, when the range is order bounded.
pub fn is_order_bounded(t: &SeqTerm) -> Result<Option<LatticeVector>> {
    Ok(match t.normalize()? {
        Shape::Coords { layout, coords } => {
            let mut u: Vec<Q> = coords.iter().map(|c| c.abs_sup_from(1)).collect();
            if layout == Layout::Lex {
                // |(a, b)| <= (M, 0) as soon as |a| < M.
                u = vec![u[0].clone() + Q::one(), Q::zero()];
            }
            Some(layout.vector(u)?)
        }
        Shape::Units { ambient: Ambient::Linf, .. } => {
            Some(LatticeVector::Seq(SparseSeq::new(Ambient::Linf, BTreeMap::new(), Q::one())?))
        }
        Shape::Units { ambient: Ambient::C0, .. } => None,
        Shape::Typewriter { .. } => Some(LatticeVector::Step(StepFn::constant(Q::one()))),
    })
}

/// For every vertex `v` of `[-u, u]` and every sampled `λ ∈ [-1, 1]`,
/// `λ·v ∈ [-u, u]`: the circled hull of the interval is itself.
pub fn circled_hull_check(u: &[Q], lambdas: &[Q]) -> CheckReport {
    let mut r = CheckReport::default();
    let n = u.len();
    for bits in 0u64..(1 << n) {
        let v: Vec<Q> = (0..n).map(|i| if bits >> i & 1 == 1 { u[i].clone() } else { -u[i].clone() }).collect();
        for l in lambdas.iter().filter(|l| l.abs() <= Q::one()) {
            let inside = v.iter().zip(u).all(|(vi, ui)| (l * vi).abs() <= *ui);
            r.check(inside, || format!("{l}·{v:?} leaves [-u, u]"));
        }
    }
    r
}
