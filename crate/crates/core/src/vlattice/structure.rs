//! Strong units and failures of the Archimedean property.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::rational::{q, Q};
use super::vector::{Ambient, Carrier, LatticeVector, SparseSeq, StepFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongUnit {
    pub unit: LatticeVector,
    pub archimedean: bool,
}

/// A positive vector whose multiples dominate everything, if the carrier has
/// one. Sequences in `ℓ∞` are eventually constant here, so the constant one
/// sequence is a unit; finitely supported sequences have none.
pub fn strong_unit_check(c: Carrier) -> Option<StrongUnit> {
    match c {
        Carrier::QVec(n) => Some(StrongUnit { unit: LatticeVector::QVec(vec![Q::one(); n]), archimedean: true }),
        Carrier::LexR2 => Some(StrongUnit { unit: LatticeVector::lex(Q::one(), Q::zero()), archimedean: false }),
        Carrier::Seq(Ambient::Linf) => Some(StrongUnit {
            unit: LatticeVector::Seq(SparseSeq::new(Ambient::Linf, BTreeMap::new(), Q::one()).expect("ℓ∞ tail")),
            archimedean: true,
        }),
        Carrier::Seq(Ambient::C0) => None,
        Carrier::StepFn => Some(StrongUnit { unit: LatticeVector::Step(StepFn::constant(Q::one())), archimedean: true }),
    }
}

/// For a finitely supported candidate `u`, an index `k` where `e_k <= λu`
/// fails for every `λ`.
pub fn unit_escape(u: &SparseSeq) -> Option<u64> {
    let support = u.support()?;
    Some(support.last().map_or(1, |&m| m + 1))
}

/// `(x, u)` with `0 < x <= u/n` for every `n`, on a non-Archimedean carrier.
pub fn archimedean_witness(c: Carrier) -> Option<(LatticeVector, LatticeVector)> {
    match c {
        Carrier::LexR2 => Some((LatticeVector::lex(Q::zero(), Q::one()), LatticeVector::lex(Q::one(), Q::zero()))),
        _ => None,
    }
}

/// Direct check of `0 < x <= u/n` for `n <= n_max`.
pub fn check_witness_upto(x: &LatticeVector, u: &LatticeVector, n_max: u64) -> bool {
    let zero = LatticeVector::zero(x.carrier());
    if x == &zero || !zero.le(x).unwrap_or(false) {
        return false;
    }
    (1..=n_max).all(|n| x.le(&u.scale(&(Q::one() / q(n as i64)))).unwrap_or(false))
}

/// The same statement for every `n` at once on the lexicographic plane:
/// `u/n` keeps the positive first coordinate of `u`, which beats the zero
/// first coordinate of a positive `x`.
pub fn check_lex_witness_symbolic(x: &LatticeVector, u: &LatticeVector) -> bool {
    match (x, u) {
        (LatticeVector::LexR2(x0, x1), LatticeVector::LexR2(u0, _)) => x0.is_zero() && x1.is_positive() && u0.is_positive(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units() {
        assert_eq!(strong_unit_check(Carrier::QVec(3)).unwrap().unit, LatticeVector::qvec(&[1, 1, 1]));
        let lex = strong_unit_check(Carrier::LexR2).unwrap();
        assert_eq!(lex.unit, LatticeVector::lex(q(1), q(0)));
        assert!(!lex.archimedean);
        assert!(strong_unit_check(Carrier::Seq(Ambient::C0)).is_none());
    }

    #[test]
    fn finite_supports_escape() {
        let candidates = [
            SparseSeq::finite(Ambient::C0, [(1, q(5))]).unwrap(),
            SparseSeq::finite(Ambient::C0, [(2, q(1)), (7, q(3))]).unwrap(),
            SparseSeq::finite(Ambient::C0, []).unwrap(),
        ];
        for u in &candidates {
            let k = unit_escape(u).unwrap();
            let ek = LatticeVector::Seq(SparseSeq::unit(Ambient::C0, k));
            let uv = LatticeVector::Seq(u.clone());
            for lam in [1, 10, 1000] {
                assert!(!ek.le(&uv.scale(&q(lam))).unwrap());
            }
        }
    }

    #[test]
    fn lexicographic_witness() {
        let (x, u) = archimedean_witness(Carrier::LexR2).unwrap();
        assert_eq!((x.clone(), u.clone()), (LatticeVector::lex(q(0), q(1)), LatticeVector::lex(q(1), q(0))));
        assert!(check_witness_upto(&x, &u, 1000));
        assert!(check_lex_witness_symbolic(&x, &u));
        assert!(archimedean_witness(Carrier::QVec(2)).is_none());
        assert!(archimedean_witness(Carrier::StepFn).is_none());
        // In Q^2 the same pair fails at n = 2.
        assert!(!check_witness_upto(&LatticeVector::qvec(&[0, 1]), &LatticeVector::qvec(&[1, 0]), 2));
    }
}
