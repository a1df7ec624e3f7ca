//! Rational matrices acting on `Q^n` and on sequence terms.

use num_traits::{Signed, Zero};

use super::decide::{ru_limit, Verdict};
use super::rational::{qf, Q};
use super::term::SeqTerm;
use super::vector::LatticeVector;
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::Structural("a matrix needs at least one entry".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch { expected: cols, actual: r.len() });
        }
        Ok(RationalMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        RationalMatrix::new(rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n).map(|i| if i / n == i % n { qf(1, 1) } else { Q::zero() }).collect();
        RationalMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    /// Entrywise absolute value, the modulus of the operator on `Q^n`.
    pub fn abs(&self) -> RationalMatrix {
        RationalMatrix { entries: self.entries.iter().map(Q::abs).collect(), ..self.clone() }
    }

    pub fn apply_coords(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.cols {
            return Err(Error::SizeMismatch { expected: self.cols, actual: x.len() });
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum()).collect())
    }

    pub fn apply_vector(&self, v: &LatticeVector) -> Result<LatticeVector> {
        match v {
            LatticeVector::QVec(x) => Ok(LatticeVector::QVec(self.apply_coords(x)?)),
            _ => Err(Error::Unsupported("matrices act on Q^n".into())),
        }
    }
}

/// `T` applied to every term of the sequence; linearity lets it pass
/// through every constructor.
pub fn apply(t_op: &RationalMatrix, t: &SeqTerm) -> Result<SeqTerm> {
    Ok(match t {
        SeqTerm::Const(v) => SeqTerm::Const(t_op.apply_vector(v)?),
        SeqTerm::Geom(v, r) => SeqTerm::Geom(t_op.apply_vector(v)?, r.clone()),
        SeqTerm::Harmonic(v) => SeqTerm::Harmonic(t_op.apply_vector(v)?),
        SeqTerm::Sum(ts) => SeqTerm::Sum(ts.iter().map(|s| apply(t_op, s)).collect::<Result<_>>()?),
        SeqTerm::Shift(s, k0) => SeqTerm::Shift(Box::new(apply(t_op, s)?), *k0),
        SeqTerm::Subseq { term, stride, offset } => {
            SeqTerm::Subseq { term: Box::new(apply(t_op, term)?), stride: *stride, offset: *offset }
        }
        SeqTerm::Braid { period, selector, terms } => SeqTerm::Braid {
            period: *period,
            selector: selector.clone(),
            terms: terms.iter().map(|s| apply(t_op, s)).collect::<Result<_>>()?,
        },
        SeqTerm::UnitVectors(_) | SeqTerm::Typewriter => {
            return Err(Error::Unsupported("matrices act on Q^n terms".into()))
        }
    })
}

/// `|T|e`, which bounds `T[-e, e]`.
pub fn is_order_bounded_operator(t_op: &RationalMatrix, e: &[Q]) -> Result<Vec<Q>> {
    if e.iter().any(Q::is_negative) {
        return Err(Error::Domain("e must be positive".into()));
    }
    t_op.abs().apply_coords(e)
}

/// Checks `-b <= Tv <= b` at every vertex `v` of `[-e, e]`; the image of
/// the interval is the convex hull of these.
pub fn check_interval_image(t_op: &RationalMatrix, e: &[Q], b: &[Q]) -> Result<bool> {
    let n = e.len();
    for bits in 0u64..(1 << n) {
        let v: Vec<Q> = (0..n).map(|i| if bits >> i & 1 == 1 { e[i].clone() } else { -e[i].clone() }).collect();
        let tv = t_op.apply_coords(&v)?;
        if tv.iter().zip(b).any(|(x, bi)| x.abs() > *bi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every term with a relative uniform limit `x`: `x_k - x` is
/// relatively uniformly null, and so is `T(x_k - x)`, both by the decider
/// and by the direct bound `|T(x_k - x)| <= ε|T|e` past the threshold.
pub fn ru_continuity_check(t_op: &RationalMatrix, corpus: &[SeqTerm], eps: &[Q], window: u64) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    for t in corpus {
        let Verdict::Yes(r) = ru_limit(t)? else { continue };
        let null = SeqTerm::Sum(vec![t.clone(), SeqTerm::Const(r.limit.scale(&qf(-1, 1)))]);
        let image = apply(t_op, &null)?;
        let img = ru_limit(&image)?;
        let ok = match img.as_yes() {
            Some(ri) => ri.limit.is_zero() && ri.verify(&image, eps, window)?,
            None => false,
        };
        report.check(ok, || format!("T·({t:?} - limit) is not relatively uniformly null"));
        let LatticeVector::QVec(e) = &r.e else { unreachable!("Q^n term") };
        let te = is_order_bounded_operator(t_op, e)?;
        let mut direct = true;
        for ep in eps {
            let k0 = r.threshold(ep);
            for k in k0..k0 + window {
                let LatticeVector::QVec(xk) = null.eval(k)? else { unreachable!("Q^n term") };
                let y = t_op.apply_coords(&xk)?;
                direct &= y.iter().zip(&te).all(|(yi, bi)| yi.abs() <= ep * bi);
            }
        }
        report.check(direct, || format!("|T(x_k - x)| exceeds ε|T|e for {t:?}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vlattice::rational::q;

    #[test]
    fn shapes() {
        assert!(RationalMatrix::from_ints(&[&[1, 2], &[3]]).is_err());
        assert!(RationalMatrix::new(vec![]).is_err());
        let t = RationalMatrix::from_ints(&[&[1, 2, 0], &[0, 1, -1]]).unwrap();
        assert_eq!((t.rows(), t.cols()), (2, 3));
        assert_eq!(t.apply_coords(&[q(1), q(1), q(1)]).unwrap(), vec![q(3), q(0)]);
        assert!(t.apply_coords(&[q(1)]).is_err());
    }

    #[test]
    fn interval_images() {
        let id = RationalMatrix::identity(2);
        assert_eq!(is_order_bounded_operator(&id, &[q(1), q(3)]).unwrap(), vec![q(1), q(3)]);
        let t = RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        let b = is_order_bounded_operator(&t, &[q(1), q(1)]).unwrap();
        assert_eq!(b, vec![q(2), q(1)]);
        assert!(check_interval_image(&t, &[q(1), q(1)], &b).unwrap());
        assert!(!check_interval_image(&t, &[q(1), q(1)], &[q(1), q(1)]).unwrap());
    }

    #[test]
    fn apply_matches_pointwise() {
        let t = RationalMatrix::from_ints(&[&[2, -1], &[1, 3]]).unwrap();
        let s = SeqTerm::alternate(
            SeqTerm::Sum(vec![SeqTerm::Const(LatticeVector::qvec(&[1, 0])), SeqTerm::Harmonic(LatticeVector::qvec(&[0, 2]))]),
            SeqTerm::shift(SeqTerm::Geom(LatticeVector::qvec(&[4, 4]), qf(1, 3)), 2),
        );
        let ts = apply(&t, &s).unwrap();
        for k in 1..30 {
            assert_eq!(ts.eval(k).unwrap(), t.apply_vector(&s.eval(k).unwrap()).unwrap());
        }
    }

    #[test]
    fn continuity_on_small_corpus() {
        let t = RationalMatrix::from_ints(&[&[1, -2], &[3, 0]]).unwrap();
        let corpus = vec![
            SeqTerm::Geom(LatticeVector::qvec(&[1, 1]), qf(1, 2)),
            SeqTerm::Sum(vec![SeqTerm::Const(LatticeVector::qvec(&[5, -1])), SeqTerm::Harmonic(LatticeVector::qvec(&[1, -3]))]),
            SeqTerm::alternate(SeqTerm::Const(LatticeVector::qvec(&[0, 0])), SeqTerm::Const(LatticeVector::qvec(&[1, 0]))),
        ];
        let r = ru_continuity_check(&t, &corpus, &[qf(1, 2), qf(1, 20)], 10).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 4);
    }
}
