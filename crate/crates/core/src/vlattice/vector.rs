//! Vectors in the concrete lattices: `Q^n`, the lexicographic plane,
//! eventually constant sequences inside `c0` or `ℓ∞`, and rational step
//! functions on `[0, 1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{format, max, min, q, Q};
use crate::error::{Error, Result};

/// Which sequence space a sparse sequence is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    C0,
    Linf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    QVec(usize),
    LexR2,
    Seq(Ambient),
    StepFn,
}

/// `x_i = entries[i]` where present, else `tail`, for `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseSeq {
    ambient: Ambient,
    entries: BTreeMap<u64, Q>,
    tail: Q,
}

impl SparseSeq {
    pub fn new(ambient: Ambient, entries: BTreeMap<u64, Q>, tail: Q) -> Result<Self> {
        if ambient == Ambient::C0 && !tail.is_zero() {
            return Err(Error::Domain("a c0 sequence must vanish at infinity".into()));
        }
        if entries.contains_key(&0) {
            return Err(Error::Domain("sequence coordinates start at 1".into()));
        }
        let entries = entries.into_iter().filter(|(_, v)| *v != tail).collect();
        Ok(SparseSeq { ambient, entries, tail })
    }

    /// Finitely supported sequence.
    pub fn finite(ambient: Ambient, entries: impl IntoIterator<Item = (u64, Q)>) -> Result<Self> {
        SparseSeq::new(ambient, entries.into_iter().collect(), Q::zero())
    }

    /// The unit vector `e_i`.
    pub fn unit(ambient: Ambient, i: u64) -> Self {
        SparseSeq::finite(ambient, [(i, q(1))]).expect("valid unit vector")
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn tail(&self) -> &Q {
        &self.tail
    }

    pub fn get(&self, i: u64) -> Q {
        self.entries.get(&i).cloned().unwrap_or_else(|| self.tail.clone())
    }

    /// Indices where the value differs from the tail.
    pub fn explicit(&self) -> impl Iterator<Item = (&u64, &Q)> {
        self.entries.iter()
    }

    /// Coordinates with a nonzero value, when there are finitely many.
    pub fn support(&self) -> Option<BTreeSet<u64>> {
        self.tail
            .is_zero()
            .then(|| self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(&i, _)| i).collect())
    }

    fn zip(&self, other: &SparseSeq, f: impl Fn(&Q, &Q) -> Q) -> SparseSeq {
        let keys: BTreeSet<u64> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        let tail = f(&self.tail, &other.tail);
        let entries = keys.into_iter().map(|i| (i, f(&self.get(i), &other.get(i)))).collect();
        SparseSeq::new(self.ambient, entries, tail).expect("pointwise op keeps the ambient")
    }

    fn map(&self, f: impl Fn(&Q) -> Q) -> SparseSeq {
        let entries = self.entries.iter().map(|(&i, v)| (i, f(v))).collect();
        SparseSeq::new(self.ambient, entries, f(&self.tail)).expect("pointwise op keeps the ambient")
    }
}

/// Values on right-open pieces `[breaks[i], breaks[i+1])`, last piece ending
/// at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFn {
    breaks: Vec<Q>,
    values: Vec<Q>,
}

impl StepFn {
    pub fn new(breaks: Vec<Q>, values: Vec<Q>) -> Result<Self> {
        if breaks.is_empty() || breaks.len() != values.len() {
            return Err(Error::SizeMismatch { expected: breaks.len(), actual: values.len() });
        }
        if !breaks[0].is_zero() {
            return Err(Error::Domain("first breakpoint must be 0".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) || breaks.last().is_some_and(|b| *b >= q(1)) {
            return Err(Error::Domain("breakpoints must increase strictly inside [0, 1)".into()));
        }
        Ok(StepFn { breaks, values }.merged())
    }

    pub fn constant(v: Q) -> Self {
        StepFn { breaks: vec![Q::zero()], values: vec![v] }
    }

    /// `v` on `[a, b)` and 0 elsewhere, for `0 <= a < b <= 1`.
    pub fn indicator(a: &Q, b: &Q, v: Q) -> Result<Self> {
        if a.is_negative() || a >= b || *b > q(1) {
            return Err(Error::Domain("indicator needs 0 <= a < b <= 1".into()));
        }
        let mut breaks = vec![Q::zero()];
        let mut values = vec![Q::zero()];
        if a.is_zero() {
            values[0] = v.clone();
        } else {
            breaks.push(a.clone());
            values.push(v.clone());
        }
        if *b < q(1) {
            breaks.push(b.clone());
            values.push(Q::zero());
        }
        StepFn::new(breaks, values)
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn eval(&self, t: &Q) -> Q {
        let i = self.breaks.partition_point(|b| b <= t);
        self.values[i.saturating_sub(1)].clone()
    }

    fn merged(self) -> StepFn {
        let mut breaks = vec![self.breaks[0].clone()];
        let mut values = vec![self.values[0].clone()];
        for (b, v) in self.breaks.into_iter().zip(self.values).skip(1) {
            if values.last() != Some(&v) {
                breaks.push(b);
                values.push(v);
            }
        }
        StepFn { breaks, values }
    }

    fn zip(&self, other: &StepFn, f: impl Fn(&Q, &Q) -> Q) -> StepFn {
        let breaks: Vec<Q> =
            self.breaks.iter().chain(&other.breaks).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let values = breaks.iter().map(|b| f(&self.eval(b), &other.eval(b))).collect();
        StepFn { breaks, values }.merged()
    }

    fn map(&self, f: impl Fn(&Q) -> Q) -> StepFn {
        StepFn { breaks: self.breaks.clone(), values: self.values.iter().map(f).collect() }.merged()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeVector {
    QVec(Vec<Q>),
    LexR2(Q, Q),
    Seq(SparseSeq),
    Step(StepFn),
}

fn lex_le(a: &(Q, Q), b: &(Q, Q)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

impl LatticeVector {
    pub fn qvec(v: &[i64]) -> Self {
        LatticeVector::QVec(v.iter().map(|&x| q(x)).collect())
    }

    pub fn lex(a: Q, b: Q) -> Self {
        LatticeVector::LexR2(a, b)
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            LatticeVector::QVec(v) => Carrier::QVec(v.len()),
            LatticeVector::LexR2(..) => Carrier::LexR2,
            LatticeVector::Seq(s) => Carrier::Seq(s.ambient),
            LatticeVector::Step(_) => Carrier::StepFn,
        }
    }

    pub fn zero(c: Carrier) -> Self {
        match c {
            Carrier::QVec(n) => LatticeVector::QVec(vec![Q::zero(); n]),
            Carrier::LexR2 => LatticeVector::LexR2(Q::zero(), Q::zero()),
            Carrier::Seq(a) => LatticeVector::Seq(SparseSeq { ambient: a, entries: BTreeMap::new(), tail: Q::zero() }),
            Carrier::StepFn => LatticeVector::Step(StepFn::constant(Q::zero())),
        }
    }

    fn same_carrier(&self, other: &LatticeVector) -> Result<()> {
        if self.carrier() == other.carrier() {
            Ok(())
        } else {
            Err(Error::Domain(format!("carrier mismatch: {:?} vs {:?}", self.carrier(), other.carrier())))
        }
    }

    /// Pointwise binary operation; on the lexicographic plane only the
    /// linear operations are pointwise.
    fn zip(&self, other: &LatticeVector, f: impl Fn(&Q, &Q) -> Q) -> Result<LatticeVector> {
        self.same_carrier(other)?;
        Ok(match (self, other) {
            (LatticeVector::QVec(a), LatticeVector::QVec(b)) => {
                LatticeVector::QVec(a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            }
            (LatticeVector::LexR2(a0, a1), LatticeVector::LexR2(b0, b1)) => LatticeVector::LexR2(f(a0, b0), f(a1, b1)),
            (LatticeVector::Seq(a), LatticeVector::Seq(b)) => LatticeVector::Seq(a.zip(b, f)),
            (LatticeVector::Step(a), LatticeVector::Step(b)) => LatticeVector::Step(a.zip(b, f)),
            _ => unreachable!("carriers checked"),
        })
    }

    fn map(&self, f: impl Fn(&Q) -> Q) -> LatticeVector {
        match self {
            LatticeVector::QVec(a) => LatticeVector::QVec(a.iter().map(f).collect()),
            LatticeVector::LexR2(a, b) => LatticeVector::LexR2(f(a), f(b)),
            LatticeVector::Seq(s) => LatticeVector::Seq(s.map(f)),
            LatticeVector::Step(s) => LatticeVector::Step(s.map(f)),
        }
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, t: &Q) -> LatticeVector {
        self.map(|a| a * t)
    }

    pub fn is_zero(&self) -> bool {
        *self == LatticeVector::zero(self.carrier())
    }

    pub fn le(&self, other: &LatticeVector) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(match (self, other) {
            (LatticeVector::LexR2(a0, a1), LatticeVector::LexR2(b0, b1)) => {
                lex_le(&(a0.clone(), a1.clone()), &(b0.clone(), b1.clone()))
            }
            _ => {
                let d = other.sub(self)?;
                d.abs() == d
            }
        })
    }

    pub fn sup(&self, other: &LatticeVector) -> Result<LatticeVector> {
        match (self, other) {
            (LatticeVector::LexR2(..), LatticeVector::LexR2(..)) => {
                Ok(if self.le(other)? { other.clone() } else { self.clone() })
            }
            _ => self.zip(other, |a, b| max(a.clone(), b.clone())),
        }
    }

    pub fn inf(&self, other: &LatticeVector) -> Result<LatticeVector> {
        match (self, other) {
            (LatticeVector::LexR2(..), LatticeVector::LexR2(..)) => {
                Ok(if self.le(other)? { self.clone() } else { other.clone() })
            }
            _ => self.zip(other, |a, b| min(a.clone(), b.clone())),
        }
    }

    pub fn abs(&self) -> LatticeVector {
        match self {
            LatticeVector::LexR2(..) => self.sup(&self.scale(&q(-1))).expect("same carrier"),
            _ => self.map(|a| a.abs()),
        }
    }

    pub fn pos(&self) -> LatticeVector {
        self.sup(&LatticeVector::zero(self.carrier())).expect("same carrier")
    }

    pub fn neg_part(&self) -> LatticeVector {
        self.scale(&q(-1)).pos()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Q]| v.iter().map(format).collect::<Vec<_>>().join(", ");
        match self {
            LatticeVector::QVec(v) => write!(f, "({})", list(v)),
            LatticeVector::LexR2(a, b) => write!(f, "lex({}, {})", format(a), format(b)),
            LatticeVector::Seq(s) => {
                let items: Vec<String> = s.entries.iter().map(|(i, v)| format!("{i}: {}", format(v))).collect();
                write!(f, "seq{{{}; else {}}}", items.join(", "), format(&s.tail))
            }
            LatticeVector::Step(s) => {
                let items: Vec<String> =
                    s.breaks.iter().zip(&s.values).map(|(b, v)| format!("[{}: {}", format(b), format(v))).collect();
                write!(f, "step{{{}}}", items.join(", "))
            }
        }
    }
}

/// Either `‖x‖_e` or the fact that `x` lies outside the ideal of `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ENorm {
    Value(Q),
    NotInIdeal,
}

/// `inf { λ >= 0 : |x| <= λ e }` on `Q^n` and on sequences.
pub fn e_norm(x: &LatticeVector, e: &LatticeVector) -> Result<ENorm> {
    x.same_carrier(e)?;
    match (x, e) {
        (LatticeVector::QVec(xs), LatticeVector::QVec(es)) => {
            if es.iter().any(|v| v.is_negative()) {
                return Err(Error::Domain("e must be positive".into()));
            }
            let mut best = Q::zero();
            for (xi, ei) in xs.iter().zip(es) {
                if ei.is_zero() {
                    if !xi.is_zero() {
                        return Ok(ENorm::NotInIdeal);
                    }
                } else {
                    best = max(best, xi.abs() / ei);
                }
            }
            Ok(ENorm::Value(best))
        }
        (LatticeVector::Seq(xs), LatticeVector::Seq(es)) => {
            if es.tail.is_negative() || es.entries.values().any(|v| v.is_negative()) {
                return Err(Error::Domain("e must be positive".into()));
            }
            let keys: BTreeSet<u64> = xs.entries.keys().chain(es.entries.keys()).copied().collect();
            let mut best = Q::zero();
            // Explicit coordinates, then the shared tail coordinates.
            let pairs = keys.iter().map(|&i| (xs.get(i), es.get(i))).chain(std::iter::once((xs.tail.clone(), es.tail.clone())));
            for (xi, ei) in pairs {
                if ei.is_zero() {
                    if !xi.is_zero() {
                        return Ok(ENorm::NotInIdeal);
                    }
                } else {
                    best = max(best, xi.abs() / ei);
                }
            }
            Ok(ENorm::Value(best))
        }
        _ => Err(Error::Unsupported("e-norm is defined here on Q^n and sequences".into())),
    }
}
