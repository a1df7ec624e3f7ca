//! Unions of rational boxes in `Q^n`, order neighborhoods, and order
//! intervals.

use num_traits::{One, Signed};

use super::decide::{o_limit, Verdict};
use super::rational::{q, qf, Q};
use super::term::SeqTerm;
use super::vector::LatticeVector;
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Unbounded,
    Closed(Q),
    Open(Q),
}

impl Endpoint {
    fn value(&self) -> Option<&Q> {
        match self {
            Endpoint::Unbounded => None,
            Endpoint::Closed(v) | Endpoint::Open(v) => Some(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn closed(a: Q, b: Q) -> Self {
        Interval { lo: Endpoint::Closed(a), hi: Endpoint::Closed(b) }
    }

    pub fn open(a: Q, b: Q) -> Self {
        Interval { lo: Endpoint::Open(a), hi: Endpoint::Open(b) }
    }

    pub fn all() -> Self {
        Interval { lo: Endpoint::Unbounded, hi: Endpoint::Unbounded }
    }

    fn is_nonempty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Endpoint::Closed(a), Endpoint::Closed(b)) => a <= b,
            (lo, hi) => match (lo.value(), hi.value()) {
                (Some(a), Some(b)) => a < b,
                _ => true,
            },
        }
    }

    pub fn contains(&self, t: &Q) -> bool {
        let lo = match &self.lo {
            Endpoint::Unbounded => true,
            Endpoint::Closed(a) => a <= t,
            Endpoint::Open(a) => a < t,
        };
        let hi = match &self.hi {
            Endpoint::Unbounded => true,
            Endpoint::Closed(b) => t <= b,
            Endpoint::Open(b) => t < b,
        };
        lo && hi
    }

    /// Which of the germs left of `x`, at `x`, right of `x` the interval
    /// contains entirely.
    fn germs(&self, x: &Q) -> [bool; 3] {
        let lo_below = self.lo.value().is_none_or(|a| a < x);
        let lo_at = self.lo.value().is_none_or(|a| a <= x);
        let hi_above = self.hi.value().is_none_or(|b| b > x);
        let hi_at = self.hi.value().is_none_or(|b| b >= x);
        [lo_below && hi_at, self.contains(x), lo_at && hi_above]
    }
}

/// A finite union of boxes in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxRegion {
    dim: usize,
    boxes: Vec<Vec<Interval>>,
}

impl BoxRegion {
    pub fn new(dim: usize, boxes: Vec<Vec<Interval>>) -> Result<Self> {
        for b in &boxes {
            if b.len() != dim {
                return Err(Error::SizeMismatch { expected: dim, actual: b.len() });
            }
            if let Some(i) = b.iter().find(|i| !i.is_nonempty()) {
                return Err(Error::Domain(format!("empty interval {i:?}")));
            }
        }
        Ok(BoxRegion { dim, boxes })
    }

    pub fn whole(dim: usize) -> Self {
        BoxRegion { dim, boxes: vec![vec![Interval::all(); dim]] }
    }

    pub fn point(x: &[Q]) -> Self {
        BoxRegion { dim: x.len(), boxes: vec![x.iter().map(|v| Interval::closed(v.clone(), v.clone())).collect()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        p.len() == self.dim && self.boxes.iter().any(|b| b.iter().zip(p).all(|(i, t)| i.contains(t)))
    }
}

/// A `δ > 0` with `[x - δ·1, x + δ·1] ⊆ U`, if one exists.
///
/// Below every positive distance from `x_i` to an endpoint, each box meets
/// the cube in a union of germ cells `{left, at, right}^n`, so the cube is
/// covered exactly when every cell lies in some single box.
pub fn order_neighborhood(u: &BoxRegion, x: &[Q]) -> Result<Option<Q>> {
    if x.len() != u.dim {
        return Err(Error::SizeMismatch { expected: u.dim, actual: x.len() });
    }
    let mut gap: Option<Q> = None;
    for b in &u.boxes {
        for (i, xi) in b.iter().zip(x) {
            for v in [i.lo.value(), i.hi.value()].into_iter().flatten() {
                let d = (v - xi).abs();
                if d.is_positive() && gap.as_ref().is_none_or(|g| d < *g) {
                    gap = Some(d);
                }
            }
        }
    }
    let delta = gap.map_or_else(Q::one, |g| g / q(2));
    let germs: Vec<Vec<[bool; 3]>> =
        u.boxes.iter().map(|b| b.iter().zip(x).map(|(i, xi)| i.germs(xi)).collect()).collect();
    let n = u.dim;
    let cells = 3usize.pow(n as u32);
    for cell in 0..cells {
        let dirs: Vec<usize> = (0..n).map(|i| cell / 3usize.pow(i as u32) % 3).collect();
        let covered = germs.iter().any(|g| dirs.iter().enumerate().all(|(i, &d)| g[i][d]));
        if !covered {
            return Ok(None);
        }
    }
    Ok(Some(delta))
}

fn box_le(a: &[Q], b: &[Q]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn inside(p: &[Q], a: &[Q], b: &[Q]) -> bool {
    box_le(a, p) && box_le(p, b)
}

/// Order closedness of `[a, b]` on a corpus of sequences inside it, and
/// convexity on vertices and their midpoints.
pub fn order_interval_properties(a: &[Q], b: &[Q]) -> Result<CheckReport> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { expected: a.len(), actual: b.len() });
    }
    if !box_le(a, b) {
        return Err(Error::Domain("interval bounds are not ordered".into()));
    }
    let n = a.len();
    let width: Vec<Q> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let mut report = CheckReport::default();

    // x_k = a + w ⊙ (λ + μ·r^k) with λ, μ >= 0 and λ + μ <= 1 per coordinate.
    let weights = [q(0), qf(1, 3), qf(1, 2), q(1)];
    let mut corpus = Vec::new();
    for (j, lam) in weights.iter().enumerate() {
        for mu in weights.iter().filter(|m| *m + lam <= Q::one()) {
            for r in [qf(1, 2), qf(2, 3)] {
                let skew = |i: usize| if (i + j) % 2 == 0 { Q::one() } else { qf(1, 2) };
                let base: Vec<Q> = (0..n).map(|i| &a[i] + &width[i] * lam * skew(i)).collect();
                let geo: Vec<Q> = (0..n).map(|i| &width[i] * mu * skew(i)).collect();
                let harm: Vec<Q> = (0..n).map(|i| &width[i] * mu * (Q::one() - skew(i))).collect();
                corpus.push(SeqTerm::Sum(vec![
                    SeqTerm::Const(LatticeVector::QVec(base)),
                    SeqTerm::Geom(LatticeVector::QVec(geo), r),
                    SeqTerm::Harmonic(LatticeVector::QVec(harm)),
                ]));
            }
        }
    }
    let braids: Vec<SeqTerm> =
        corpus.windows(2).map(|w| SeqTerm::alternate(w[0].clone(), w[1].clone())).collect();
    corpus.extend(braids);
    for t in &corpus {
        for k in 1..=20 {
            let LatticeVector::QVec(xk) = t.eval(k)? else { unreachable!("Q^n term") };
            report.check(inside(&xk, a, b), || format!("corpus term {t:?} leaves the interval at k = {k}"));
        }
        if let Verdict::Yes(o) = o_limit(t)? {
            let LatticeVector::QVec(x) = o.limit else { unreachable!("Q^n limit") };
            report.check(inside(&x, a, b), || format!("limit of {t:?} leaves the interval"));
        }
    }

    let vertices: Vec<Vec<Q>> = (0u64..(1 << n))
        .map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { b[i].clone() } else { a[i].clone() }).collect())
        .collect();
    for p in &vertices {
        for s in &vertices {
            let mid: Vec<Q> = p.iter().zip(s).map(|(x, y)| (x + y) / q(2)).collect();
            report.check(inside(&mid, a, b), || format!("midpoint of {p:?} and {s:?} leaves the interval"));
        }
    }
    Ok(report)
}

/// The order topology of `Q^n` against the product topology on a corpus:
/// `o_limit` exists exactly when every coordinate converges, with the same
/// value.
pub fn order_topology_equiv_check(corpus: &[SeqTerm]) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for t in corpus {
        let super::term::Shape::Coords { layout, coords } = t.normalize()? else {
            return Err(Error::Unsupported("the comparison runs on Q^n terms".into()));
        };
        if !matches!(layout, super::term::Layout::QVec(_)) {
            return Err(Error::Unsupported("the comparison runs on Q^n terms".into()));
        }
        // Coordinatewise: every class of every coordinate tends to one value.
        let coordinatewise: Option<Vec<Q>> = coords
            .iter()
            .map(|c| {
                let first = c.classes[0].constant.clone();
                c.classes.iter().all(|k| k.constant == first).then_some(first)
            })
            .collect();
        let order = o_limit(t)?.yes().map(|o| o.limit);
        let agree = match (&coordinatewise, &order) {
            (Some(c), Some(LatticeVector::QVec(o))) => c == o,
            (None, None) => true,
            _ => false,
        };
        report.check(agree, || format!("{t:?}: coordinatewise {coordinatewise:?}, order {order:?}"));
    }
    Ok(report)
}
