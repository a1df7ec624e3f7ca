//! The real line seen through `Q(√2)`: a pair `(a, b)` stands for `a + b√2`.
//! A sequence converges when it converges in the usual sense and has a tail
//! that is entirely rational or entirely irrational. Constants converge and
//! subsequences keep limits, but braiding a rational and an irrational null
//! sequence destroys convergence.

use super::normal::ScalarSeq;
use super::rational::{qf, Q};
use super::term::{Layout, SeqTerm, Shape};
use super::vector::LatticeVector;
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// `a + b√2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
}

impl Surd {
    pub fn is_rational(&self) -> bool {
        self.b == Q::from_integer(0.into())
    }
}

fn coords(t: &SeqTerm) -> Result<[ScalarSeq; 2]> {
    match t.normalize()? {
        Shape::Coords { layout: Layout::QVec(2), coords } => {
            let [a, b]: [ScalarSeq; 2] = coords.try_into().expect("two coordinates");
            Ok([a, b])
        }
        _ => Err(Error::Unsupported("tagged-line terms live in Q^2".into())),
    }
}

pub fn surd_at(t: &SeqTerm, k: u64) -> Result<Surd> {
    match t.eval(k)? {
        LatticeVector::QVec(v) if v.len() == 2 => Ok(Surd { a: v[0].clone(), b: v[1].clone() }),
        _ => Err(Error::Unsupported("tagged-line terms live in Q^2".into())),
    }
}

/// The limit under the tagged rule.
///
/// `1` and `√2` are independent over `Q`, so the real values converge iff
/// both coordinates do. A class whose `b` combo is nonzero keeps a sign
/// forever, so the tail is rational iff every class of `b` is zero and
/// irrational iff none is.
pub fn tagged_limit(t: &SeqTerm) -> Result<Option<Surd>> {
    let [a, b] = coords(t)?;
    let (Some(la), Some(lb)) = (a.limit(), b.limit()) else {
        return Ok(None);
    };
    let zeros = b.classes.iter().filter(|c| c.is_zero()).count();
    let uniform_tail = zeros == 0 || zeros == b.classes.len();
    Ok(uniform_tail.then_some(Surd { a: la, b: lb }))
}

#[derive(Clone, Debug)]
pub struct TaggedLineReport {
    /// Constant sequences converge to their value.
    pub n1: CheckReport,
    /// Shifts and subsequences of convergent sequences keep the limit.
    pub n2: CheckReport,
    pub rational_member: SeqTerm,
    pub irrational_member: SeqTerm,
    pub members_converge: bool,
    /// Whether the alternating braid of the two members converges.
    pub braid_converges: bool,
    /// Rational and irrational terms both recur in the braid.
    pub braid_mixes_tails: bool,
}

impl TaggedLineReport {
    /// The first two axioms hold and the third fails.
    pub fn reproduces_example(&self) -> bool {
        self.n1.passed() && self.n2.passed() && self.members_converge && !self.braid_converges && self.braid_mixes_tails
    }
}

fn pair(a: Q, b: Q) -> LatticeVector {
    LatticeVector::QVec(vec![a, b])
}

pub fn tagged_line_demo() -> Result<TaggedLineReport> {
    let vals = [qf(0, 1), qf(1, 1), qf(-3, 2), qf(2, 7)];
    let mut n1 = CheckReport::default();
    for a in &vals {
        for b in &vals {
            let v = pair(a.clone(), b.clone());
            let got = tagged_limit(&SeqTerm::Const(v))?;
            n1.check(got == Some(Surd { a: a.clone(), b: b.clone() }), || format!("constant ({a}, {b}) fails"));
        }
    }

    let half = qf(1, 2);
    let mut corpus = Vec::new();
    for a in &vals {
        for b in &vals {
            let c = SeqTerm::Const(pair(a.clone(), b.clone()));
            corpus.push(SeqTerm::Sum(vec![c.clone(), SeqTerm::Geom(pair(qf(1, 1), qf(0, 1)), half.clone())]));
            corpus.push(SeqTerm::Sum(vec![c.clone(), SeqTerm::Harmonic(pair(qf(0, 1), qf(1, 1)))]));
            corpus.push(SeqTerm::Sum(vec![c, SeqTerm::Geom(pair(qf(2, 1), qf(-1, 1)), qf(1, 3))]));
        }
    }
    let mut n2 = CheckReport::default();
    for t in &corpus {
        let Some(lim) = tagged_limit(t)? else { continue };
        for (stride, offset) in [(1, 0), (1, 5), (2, 0), (2, 1), (3, 2), (5, 4)] {
            let s = SeqTerm::subseq(t.clone(), stride, offset);
            let got = tagged_limit(&s)?;
            n2.check(got.as_ref() == Some(&lim), || format!("subsequence ({stride}, {offset}) of {t:?} gives {got:?}"));
        }
    }

    let rational_member = SeqTerm::Geom(pair(qf(1, 1), qf(0, 1)), half.clone());
    let irrational_member = SeqTerm::Geom(pair(qf(0, 1), qf(1, 1)), half);
    let zero = Some(Surd { a: qf(0, 1), b: qf(0, 1) });
    let members_converge = tagged_limit(&rational_member)? == zero && tagged_limit(&irrational_member)? == zero;
    let braid = SeqTerm::alternate(rational_member.clone(), irrational_member.clone());
    let braid_converges = tagged_limit(&braid)?.is_some();
    let tail: Vec<bool> = (40..60).map(|k| surd_at(&braid, k).map(|s| s.is_rational())).collect::<Result<_>>()?;
    let braid_mixes_tails = tail.iter().any(|&r| r) && tail.iter().any(|&r| !r);
    Ok(TaggedLineReport { n1, n2, rational_member, irrational_member, members_converge, braid_converges, braid_mixes_tails })
}
