//! A small language of closed-form sequences `(x_k)_{k >= 1}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::normal::{Combo, ScalarSeq};
use super::rational::{q, Frac, Q};
use super::typewriter;
use super::vector::{Ambient, Carrier, LatticeVector, SparseSeq, StepFn};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqTerm {
    /// `x_k = v`
    Const(LatticeVector),
    /// `x_k = r^k·v`, `0 <= r < 1`
    Geom(LatticeVector, Q),
    /// `x_k = v / k`
    Harmonic(LatticeVector),
    Sum(Vec<SeqTerm>),
    /// `x_k = t_{k + k0}`
    Shift(Box<SeqTerm>, u64),
    /// `x_k = t_{stride·k + offset}`
    Subseq { term: Box<SeqTerm>, stride: u64, offset: u64 },
    /// `x_k = terms[selector[(k - 1) mod period]]_k`
    Braid { period: usize, selector: Vec<usize>, terms: Vec<SeqTerm> },
    /// `x_k = e_k`
    UnitVectors(Ambient),
    /// `x_k` is the indicator of the `k`-th typewriter set.
    Typewriter,
}

impl SeqTerm {
    pub fn constant(v: LatticeVector) -> Self {
        SeqTerm::Const(v)
    }

    pub fn shift(t: SeqTerm, k0: u64) -> Self {
        SeqTerm::Shift(Box::new(t), k0)
    }

    pub fn subseq(t: SeqTerm, stride: u64, offset: u64) -> Self {
        SeqTerm::Subseq { term: Box::new(t), stride, offset }
    }

    /// `a, b, a, b, ...` taken from the two terms.
    pub fn alternate(a: SeqTerm, b: SeqTerm) -> Self {
        SeqTerm::Braid { period: 2, selector: vec![0, 1], terms: vec![a, b] }
    }

    /// Checks shapes and returns the shared carrier.
    pub fn carrier(&self) -> Result<Carrier> {
        let same = |ts: &[SeqTerm]| -> Result<Carrier> {
            let first = ts.first().ok_or(Error::EmptyFamily)?.carrier()?;
            for t in &ts[1..] {
                let c = t.carrier()?;
                if c != first {
                    return Err(Error::Domain(format!("terms mix carriers {first:?} and {c:?}")));
                }
            }
            Ok(first)
        };
        match self {
            SeqTerm::Const(v) | SeqTerm::Harmonic(v) => Ok(v.carrier()),
            SeqTerm::Geom(v, r) => {
                if r.is_negative() || *r >= Q::one() {
                    return Err(Error::Domain("geometric ratio must lie in [0, 1)".into()));
                }
                Ok(v.carrier())
            }
            SeqTerm::Sum(ts) => same(ts),
            SeqTerm::Shift(t, _) => t.carrier(),
            SeqTerm::Subseq { term, stride, .. } => {
                if *stride == 0 {
                    return Err(Error::Domain("subsequence stride must be positive".into()));
                }
                term.carrier()
            }
            SeqTerm::Braid { period, selector, terms } => {
                if *period == 0 || selector.len() != *period {
                    return Err(Error::SizeMismatch { expected: *period, actual: selector.len() });
                }
                if let Some(&s) = selector.iter().find(|&&s| s >= terms.len()) {
                    return Err(Error::InvalidIndex { index: s, size: terms.len() });
                }
                same(terms)
            }
            SeqTerm::UnitVectors(a) => Ok(Carrier::Seq(*a)),
            SeqTerm::Typewriter => Ok(Carrier::StepFn),
        }
    }

    /// The `k`-th term, computed directly from the definition.
    pub fn eval(&self, k: u64) -> Result<LatticeVector> {
        if k == 0 {
            return Err(Error::Domain("sequences start at k = 1".into()));
        }
        self.carrier()?;
        self.eval_unchecked(k)
    }

    /// Coordinates of `x_k` as unreduced fractions, for terms in `Q^n`.
    /// `None` for any other carrier.
    pub fn eval_qvec_frac(&self, k: u64) -> Result<Option<Vec<Frac>>> {
        if k == 0 {
            return Err(Error::Domain("sequences start at k = 1".into()));
        }
        if !matches!(self.carrier()?, Carrier::QVec(_)) {
            return Ok(None);
        }
        Ok(Some(self.qvec_frac(k)))
    }

    fn qvec_frac(&self, k: u64) -> Vec<Frac> {
        let coords = |v: &LatticeVector| match v {
            LatticeVector::QVec(xs) => xs.clone(),
            _ => unreachable!("carrier checked"),
        };
        match self {
            SeqTerm::Const(v) => coords(v).iter().map(Frac::from_q).collect(),
            SeqTerm::Geom(v, r) => {
                let p = Frac::pow(r, k);
                coords(v).iter().map(|a| p.mul_q(a)).collect()
            }
            SeqTerm::Harmonic(v) => coords(v).iter().map(|a| Frac::from_q(a).div_int(k as i64)).collect(),
            SeqTerm::Sum(ts) => {
                let mut acc = ts[0].qvec_frac(k);
                for t in &ts[1..] {
                    acc = acc.iter().zip(t.qvec_frac(k)).map(|(a, b)| a.add(&b)).collect();
                }
                acc
            }
            SeqTerm::Shift(t, k0) => t.qvec_frac(k + k0),
            SeqTerm::Subseq { term, stride, offset } => term.qvec_frac(stride * k + offset),
            SeqTerm::Braid { period, selector, terms } => terms[selector[((k - 1) % *period as u64) as usize]].qvec_frac(k),
            _ => unreachable!("carrier checked"),
        }
    }

    fn eval_unchecked(&self, k: u64) -> Result<LatticeVector> {
        Ok(match self {
            SeqTerm::Const(v) => v.clone(),
            SeqTerm::Geom(v, r) => v.scale(&super::rational::pow(&r, k)),
            SeqTerm::Harmonic(v) => v.scale(&(Q::one() / q(k as i64))),
            SeqTerm::Sum(ts) => {
                let mut acc = ts[0].eval_unchecked(k)?;
                for t in &ts[1..] {
                    acc = acc.add(&t.eval_unchecked(k)?)?;
                }
                acc
            }
            SeqTerm::Shift(t, k0) => t.eval_unchecked(k + k0)?,
            SeqTerm::Subseq { term, stride, offset } => term.eval_unchecked(stride * k + offset)?,
            SeqTerm::Braid { period, selector, terms } => {
                terms[selector[((k - 1) % *period as u64) as usize]].eval_unchecked(k)?
            }
            SeqTerm::UnitVectors(a) => LatticeVector::Seq(SparseSeq::unit(*a, k)),
            SeqTerm::Typewriter => LatticeVector::Step(typewriter::indicator(k)),
        })
    }

    /// Reduces the term to one closed form per coordinate.
    pub fn normalize(&self) -> Result<Shape> {
        let carrier = self.carrier()?;
        if let Some(u) = self.unit_shape()? {
            return Ok(u);
        }
        let layout = Layout::collect(self, carrier)?;
        let coords = (0..layout.dim()).map(|i| self.coord_seq(&layout, i)).collect::<Result<Vec<_>>>()?;
        Ok(Shape::Coords { layout, coords })
    }

    /// Recognizes `e_{stride·k + offset}` and the typewriter under shifts and
    /// subsequences.
    fn unit_shape(&self) -> Result<Option<Shape>> {
        fn walk(t: &SeqTerm) -> Option<(SeqTerm, u64, u64)> {
            match t {
                SeqTerm::UnitVectors(_) | SeqTerm::Typewriter => Some((t.clone(), 1, 0)),
                SeqTerm::Shift(inner, k0) => walk(inner).map(|(b, s, o)| (b, s, o + s * k0)),
                SeqTerm::Subseq { term, stride, offset } => {
                    walk(term).map(|(b, s, o)| (b, s * stride, s * offset + o))
                }
                _ => None,
            }
        }
        if let Some((base, stride, offset)) = walk(self) {
            return Ok(Some(match base {
                SeqTerm::UnitVectors(a) => Shape::Units { ambient: a, stride, offset },
                _ => Shape::Typewriter { stride, offset },
            }));
        }
        if self.mentions_special() {
            return Err(Error::Unsupported(
                "unit vectors and the typewriter only combine with shifts and subsequences".into(),
            ));
        }
        Ok(None)
    }

    fn mentions_special(&self) -> bool {
        match self {
            SeqTerm::UnitVectors(_) | SeqTerm::Typewriter => true,
            SeqTerm::Sum(ts) | SeqTerm::Braid { terms: ts, .. } => ts.iter().any(SeqTerm::mentions_special),
            SeqTerm::Shift(t, _) | SeqTerm::Subseq { term: t, .. } => t.mentions_special(),
            _ => false,
        }
    }

    fn coord_seq(&self, layout: &Layout, i: usize) -> Result<ScalarSeq> {
        Ok(match self {
            SeqTerm::Const(v) => ScalarSeq::constant(layout.coord(v, i)),
            SeqTerm::Geom(v, r) => ScalarSeq::from_combo(Combo::geom(layout.coord(v, i), r.clone())),
            SeqTerm::Harmonic(v) => ScalarSeq::from_combo(Combo::harmonic(layout.coord(v, i))),
            SeqTerm::Sum(ts) => {
                let mut acc = ScalarSeq::constant(Q::zero());
                for t in ts {
                    acc = acc.add(&t.coord_seq(layout, i)?);
                }
                acc
            }
            SeqTerm::Shift(t, k0) => t.coord_seq(layout, i)?.shift(*k0),
            SeqTerm::Subseq { term, stride, offset } => term.coord_seq(layout, i)?.subseq(*stride, *offset),
            SeqTerm::Braid { selector, terms, .. } => {
                let members = terms.iter().map(|t| t.coord_seq(layout, i)).collect::<Result<Vec<_>>>()?;
                ScalarSeq::braid(selector, &members)
            }
            SeqTerm::UnitVectors(_) | SeqTerm::Typewriter => {
                return Err(Error::Unsupported("special sequence inside a combination".into()))
            }
        })
    }

    /// Every vector mentioned by the term.
    fn vectors(&self) -> Vec<&LatticeVector> {
        match self {
            SeqTerm::Const(v) | SeqTerm::Geom(v, _) | SeqTerm::Harmonic(v) => vec![v],
            SeqTerm::Sum(ts) | SeqTerm::Braid { terms: ts, .. } => ts.iter().flat_map(SeqTerm::vectors).collect(),
            SeqTerm::Shift(t, _) | SeqTerm::Subseq { term: t, .. } => t.vectors(),
            SeqTerm::UnitVectors(_) | SeqTerm::Typewriter => vec![],
        }
    }
}

/// How lattice vectors of a term map to finitely many scalar coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    QVec(usize),
    Lex,
    /// Explicit sequence coordinates, then one coordinate for the shared
    /// tail.
    Seq { ambient: Ambient, index: Vec<u64> },
    /// Pieces `[breaks[i], breaks[i+1])`.
    Step { breaks: Vec<Q> },
}

impl Layout {
    fn collect(t: &SeqTerm, carrier: Carrier) -> Result<Layout> {
        Ok(match carrier {
            Carrier::QVec(n) => Layout::QVec(n),
            Carrier::LexR2 => Layout::Lex,
            Carrier::Seq(ambient) => {
                let mut idx = BTreeSet::new();
                for v in t.vectors() {
                    if let LatticeVector::Seq(s) = v {
                        idx.extend(s.explicit().map(|(&i, _)| i));
                    }
                }
                Layout::Seq { ambient, index: idx.into_iter().collect() }
            }
            Carrier::StepFn => {
                let mut br = BTreeSet::new();
                for v in t.vectors() {
                    if let LatticeVector::Step(s) = v {
                        br.extend(s.breaks().iter().cloned());
                    }
                }
                Layout::Step { breaks: br.into_iter().collect() }
            }
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Layout::QVec(n) => *n,
            Layout::Lex => 2,
            Layout::Seq { index, .. } => index.len() + 1,
            Layout::Step { breaks } => breaks.len(),
        }
    }

    pub fn coord(&self, v: &LatticeVector, i: usize) -> Q {
        match (self, v) {
            (Layout::QVec(_), LatticeVector::QVec(xs)) => xs[i].clone(),
            (Layout::Lex, LatticeVector::LexR2(a, b)) => if i == 0 { a.clone() } else { b.clone() },
            (Layout::Seq { index, .. }, LatticeVector::Seq(s)) => match index.get(i) {
                Some(&j) => s.get(j),
                None => s.tail().clone(),
            },
            (Layout::Step { breaks }, LatticeVector::Step(s)) => s.eval(&breaks[i]),
            _ => panic!("vector does not match layout"),
        }
    }

    pub fn coords(&self, v: &LatticeVector) -> Vec<Q> {
        (0..self.dim()).map(|i| self.coord(v, i)).collect()
    }

    /// The vector with the given coordinates.
    pub fn vector(&self, coords: Vec<Q>) -> Result<LatticeVector> {
        Ok(match self {
            Layout::QVec(_) => LatticeVector::QVec(coords),
            Layout::Lex => {
                let mut it = coords.into_iter();
                LatticeVector::LexR2(it.next().expect("two coords"), it.next().expect("two coords"))
            }
            Layout::Seq { ambient, index } => {
                let tail = coords[index.len()].clone();
                let entries: BTreeMap<u64, Q> = index.iter().copied().zip(coords).collect();
                LatticeVector::Seq(SparseSeq::new(*ambient, entries, tail)?)
            }
            Layout::Step { breaks } => LatticeVector::Step(StepFn::new(breaks.clone(), coords)?),
        })
    }
}

/// A normalized term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Coords { layout: Layout, coords: Vec<ScalarSeq> },
    /// `x_k = e_{stride·k + offset}`
    Units { ambient: Ambient, stride: u64, offset: u64 },
    /// `x_k = 1_{A_{stride·k + offset}}`
    Typewriter { stride: u64, offset: u64 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vlattice::rational::qf;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::qvec(x)
    }

    fn corpus() -> Vec<SeqTerm> {
        let g = SeqTerm::Geom(v(&[3, 5]), qf(1, 2));
        let h = SeqTerm::Harmonic(v(&[1, -2]));
        vec![
            SeqTerm::Const(v(&[1, 2])),
            g.clone(),
            h.clone(),
            SeqTerm::Sum(vec![g.clone(), h.clone(), SeqTerm::Const(v(&[0, 1]))]),
            SeqTerm::shift(h.clone(), 3),
            SeqTerm::subseq(SeqTerm::alternate(g.clone(), h.clone()), 3, 2),
            SeqTerm::Braid { period: 3, selector: vec![1, 0, 1], terms: vec![g.clone(), SeqTerm::shift(h, 2)] },
            SeqTerm::shift(SeqTerm::alternate(g, SeqTerm::Const(v(&[1, 1]))), 1),
        ]
    }

    #[test]
    fn normal_form_matches_direct_evaluation() {
        for t in corpus() {
            let Shape::Coords { layout, coords } = t.normalize().unwrap() else { panic!() };
            for k in 1..40 {
                let direct = t.eval(k).unwrap();
                let via: Vec<Q> = coords.iter().map(|c| c.eval(k)).collect();
                assert_eq!(layout.coords(&direct), via, "{t:?} at {k}");
            }
        }
    }

    #[test]
    fn shapes() {
        let u = SeqTerm::subseq(SeqTerm::shift(SeqTerm::UnitVectors(Ambient::Linf), 2), 3, 1);
        assert_eq!(u.normalize().unwrap(), Shape::Units { ambient: Ambient::Linf, stride: 3, offset: 3 });
        assert_eq!(u.eval(1).unwrap(), LatticeVector::Seq(SparseSeq::unit(Ambient::Linf, 6)));
        let bad = SeqTerm::Sum(vec![SeqTerm::UnitVectors(Ambient::C0), SeqTerm::UnitVectors(Ambient::C0)]);
        assert!(matches!(bad.normalize(), Err(Error::Unsupported(_))));
        let mixed = SeqTerm::Sum(vec![SeqTerm::Const(v(&[1])), SeqTerm::Const(v(&[1, 2]))]);
        assert!(mixed.carrier().is_err());
        assert!(SeqTerm::Geom(v(&[1]), q(1)).carrier().is_err());
        let sel = SeqTerm::Braid { period: 2, selector: vec![0], terms: vec![SeqTerm::Const(v(&[1]))] };
        assert!(sel.carrier().is_err());
    }

    #[test]
    fn sequence_and_step_layouts() {
        let s = SparseSeq::finite(Ambient::C0, [(2, q(1)), (4, q(3))]).unwrap();
        let t = SeqTerm::Geom(LatticeVector::Seq(s), qf(1, 3));
        let Shape::Coords { layout, coords } = t.normalize().unwrap() else { panic!() };
        assert_eq!(layout.dim(), 3);
        assert_eq!(coords[1].eval(2), qf(3, 9));
        let step = StepFn::indicator(&qf(1, 3), &qf(2, 3), q(2)).unwrap();
        let t = SeqTerm::Harmonic(LatticeVector::Step(step));
        let Shape::Coords { layout, coords } = t.normalize().unwrap() else { panic!() };
        assert_eq!(layout.dim(), 3);
        assert_eq!(coords[1].eval(4), qf(1, 2));
    }
}
