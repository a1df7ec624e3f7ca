//! Seeded random spaces, maps, matrices and sequence terms.

use convkit_core::vlattice::rational::{qf, Q};
use convkit_core::vlattice::{LatticeVector, RationalMatrix, SeqTerm};
use convkit_core::{ConvSpace, PointMap, PointSet};
use rand::Rng;

pub fn random_space(rng: &mut impl Rng, n: usize) -> ConvSpace {
    let v = (0..n).map(|x| PointSet(rng.gen_range(0..1u64 << n)).with(x)).collect();
    ConvSpace::new(v).expect("every point lies in its own kernel")
}

pub fn random_map(rng: &mut impl Rng, source: usize, target: usize) -> PointMap {
    PointMap::new((0..source).map(|_| rng.gen_range(0..target)).collect(), target).expect("images in range")
}

fn small_rational(rng: &mut impl Rng, num: i64, den: i64) -> Q {
    qf(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_qvec(rng: &mut impl Rng, n: usize) -> LatticeVector {
    LatticeVector::QVec((0..n).map(|_| small_rational(rng, 4, 3)).collect())
}

const RATIOS: [(i64, i64); 5] = [(1, 2), (1, 3), (2, 3), (3, 4), (1, 5)];

fn random_leaf(rng: &mut impl Rng, n: usize) -> SeqTerm {
    let v = random_qvec(rng, n);
    match rng.gen_range(0..3) {
        0 => SeqTerm::Const(v),
        1 => {
            let (a, b) = RATIOS[rng.gen_range(0..RATIOS.len())];
            SeqTerm::Geom(v, qf(a, b))
        }
        _ => SeqTerm::Harmonic(v),
    }
}

/// A term in `Q^n`. Braids pair a term with a perturbation of itself that
/// either vanishes (same limit) or is constant (usually a different one),
/// so the corpus mixes convergent and divergent sequences.
pub fn random_term(rng: &mut impl Rng, n: usize, depth: u32) -> SeqTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_leaf(rng, n);
    }
    match rng.gen_range(0..4) {
        0 => {
            let k = rng.gen_range(2..=3);
            SeqTerm::Sum((0..k).map(|_| random_term(rng, n, depth - 1)).collect())
        }
        1 => SeqTerm::shift(random_term(rng, n, depth - 1), rng.gen_range(1..5)),
        2 => SeqTerm::subseq(random_term(rng, n, depth - 1), rng.gen_range(1..=3), rng.gen_range(0..3)),
        _ => {
            let base = random_term(rng, n, depth - 1);
            let perturb = if rng.gen_bool(0.5) {
                let (a, b) = RATIOS[rng.gen_range(0..RATIOS.len())];
                SeqTerm::Geom(random_qvec(rng, n), qf(a, b))
            } else {
                SeqTerm::Const(random_qvec(rng, n))
            };
            let other = SeqTerm::Sum(vec![base.clone(), perturb]);
            let period = rng.gen_range(2..=3);
            let mut selector: Vec<usize> = (0..period).map(|_| rng.gen_range(0..2)).collect();
            selector[0] = 0;
            selector[period - 1] = 1;
            SeqTerm::Braid { period, selector, terms: vec![base, other] }
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    RationalMatrix::new((0..n).map(|_| (0..n).map(|_| small_rational(rng, 3, 2)).collect()).collect())
        .expect("square shape")
}

/// Entries in `[1/2, 3]`.
pub fn random_positive(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| qf(rng.gen_range(1..=6), 2)).collect()
}
