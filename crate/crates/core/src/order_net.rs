//! Finite directed index sets, nets and the constructions built on them.
//!
//! Index sets are finite preorders that are directed: any two elements have
//! a common upper bound. Every such set has a cofinal "top" region, so the
//! tail filter of a net is always principal and every relation between nets
//! is decidable by enumeration.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::filter::PrincipalFilter;
use crate::pointset::{PointSet, MAX_POINTS};

/// A finite directed preorder on `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedIndex {
    size: usize,
    le: Vec<bool>,
}

/// Checks that `rows` is a square matrix describing a directed preorder.
///
/// Returns `Ok(false)` when the matrix is well formed but fails reflexivity,
/// transitivity or directedness, and an error when the shape is wrong.
pub fn validate_directed(rows: &[Vec<bool>]) -> Result<bool> {
    check_shape(rows)?;
    Ok(check_directed(rows).is_ok())
}

fn check_shape(rows: &[Vec<bool>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Structural("index set must be nonempty".into()));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Structural(format!(
            "row {i} has length {}, expected {n}",
            row.len()
        )));
    }
    Ok(n)
}

fn check_directed(rows: &[Vec<bool>]) -> Result<()> {
    let n = check_shape(rows)?;
    for i in 0..n {
        if !rows[i][i] {
            return Err(Error::NotDirected(format!("not reflexive at {i}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !rows[i][j] {
                continue;
            }
            for k in 0..n {
                if rows[j][k] && !rows[i][k] {
                    return Err(Error::NotDirected(format!(
                        "not transitive: {i} <= {j} <= {k} but not {i} <= {k}"
                    )));
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !(0..n).any(|k| rows[i][k] && rows[j][k]) {
                return Err(Error::NotDirected(format!("{i} and {j} have no common upper bound")));
            }
        }
    }
    Ok(())
}

impl DirectedIndex {
    /// Builds an index from a relation matrix, `rows[i][j]` meaning `i <= j`.
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        check_directed(&rows)?;
        let size = rows.len();
        Ok(DirectedIndex { size, le: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let rows = (0..size).map(|i| (0..size).map(|j| f(i, j)).collect()).collect();
        Self::new(rows)
    }

    /// Builds an index the caller has constructed to be a directed preorder.
    pub(crate) fn from_fn_unchecked(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut le = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                le.push(f(i, j));
            }
        }
        let index = DirectedIndex { size, le };
        debug_assert!(size > 24 || check_directed(&index.rows()).is_ok());
        index
    }

    pub fn singleton() -> Self {
        DirectedIndex { size: 1, le: vec![true] }
    }

    /// The chain `0 <= 1 <= .. <= n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0);
        Self::from_fn_unchecked(n, |i, j| i <= j)
    }

    /// `n` elements that are all mutually comparable in both directions.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0);
        Self::from_fn_unchecked(n, |_, _| true)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.le.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::InvalidIndex { index: a, size: self.size })
        }
    }

    /// Elements `b` with `a <= b`.
    pub fn up_set(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&b| self.le(a, b))
    }

    /// The elements lying above every element.
    pub fn top_class(&self) -> Vec<usize> {
        (0..self.size).filter(|&t| (0..self.size).all(|i| self.le(i, t))).collect()
    }

    /// The lowest-numbered element lying above every element.
    pub fn top(&self) -> usize {
        (0..self.size)
            .find(|&t| (0..self.size).all(|i| self.le(i, t)))
            .expect("finite directed preorder has a greatest element")
    }

    /// Componentwise order on `self x other`; the pair `(a, b)` has id
    /// `a * other.size() + b`.
    pub fn product(&self, other: &DirectedIndex) -> DirectedIndex {
        let m = other.size;
        DirectedIndex::from_fn_unchecked(self.size * m, |p, q| {
            self.le(p / m, q / m) && other.le(p % m, q % m)
        })
    }

    /// All directed preorders on `n` labelled elements.
    pub fn enumerate_all(n: usize) -> Vec<DirectedIndex> {
        assert!((1..=4).contains(&n), "enumeration supported for 1..=4 elements");
        let off: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        for mask in 0u32..1 << off.len() {
            let mut rows = vec![vec![false; n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = true;
            }
            for (bit, &(i, j)) in off.iter().enumerate() {
                rows[i][j] = mask >> bit & 1 == 1;
            }
            if check_directed(&rows).is_ok() {
                out.push(DirectedIndex::new(rows).expect("checked"));
            }
        }
        out
    }
}

/// A map from a directed index into a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Net {
    index: DirectedIndex,
    values: Vec<usize>,
    carrier_size: usize,
}

/// The set of tail sets of a net, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailFamily {
    pub sets: Vec<PointSet>,
}

impl TailFamily {
    /// The member contained in every other member.
    pub fn least(&self) -> Option<PointSet> {
        self.sets.iter().copied().find(|s| self.sets.iter().all(|t| s.is_subset(*t)))
    }
}

/// Which of two nets a braiding reads from at each index element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Selector(pub Vec<Choice>);

impl Selector {
    pub fn all(n: usize, c: Choice) -> Self {
        Selector(vec![c; n])
    }

    /// First, second, first, ... along the element ids.
    pub fn alternating(n: usize) -> Self {
        Selector((0..n).map(|i| if i % 2 == 0 { Choice::First } else { Choice::Second }).collect())
    }

    /// Every selector of length `n`.
    pub fn enumerate(n: usize) -> impl Iterator<Item = Selector> {
        (0u32..1 << n).map(move |m| {
            Selector((0..n).map(|i| if m >> i & 1 == 0 { Choice::First } else { Choice::Second }).collect())
        })
    }
}

impl Net {
    pub fn new(index: DirectedIndex, values: Vec<usize>, carrier_size: usize) -> Result<Self> {
        if carrier_size == 0 {
            return Err(Error::Domain("carrier must be nonempty".into()));
        }
        if carrier_size > MAX_POINTS {
            return Err(Error::CarrierTooLarge(carrier_size));
        }
        if values.len() != index.size() {
            return Err(Error::SizeMismatch { expected: index.size(), actual: values.len() });
        }
        if let Some(&p) = values.iter().find(|&&p| p >= carrier_size) {
            return Err(Error::InvalidPoint { point: p, size: carrier_size });
        }
        Ok(Net { index, values, carrier_size })
    }

    pub(crate) fn new_unchecked(index: DirectedIndex, values: Vec<usize>, carrier_size: usize) -> Self {
        debug_assert_eq!(values.len(), index.size());
        Net { index, values, carrier_size }
    }

    pub fn constant(index: DirectedIndex, value: usize, carrier_size: usize) -> Result<Self> {
        let values = vec![value; index.size()];
        Net::new(index, values, carrier_size)
    }

    /// A net over the chain `0 <= 1 <= ..` with the given values.
    pub fn sequence(values: Vec<usize>, carrier_size: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Structural("index set must be nonempty".into()));
        }
        Net::new(DirectedIndex::chain(values.len()), values, carrier_size)
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    /// The set of all values of the net.
    pub fn range(&self) -> PointSet {
        self.values.iter().copied().collect()
    }

    /// `{ x_b : b >= a0 }`.
    pub fn tail_set(&self, a0: usize) -> Result<PointSet> {
        self.index.check_element(a0)?;
        Ok(self.tail_set_unchecked(a0))
    }

    fn tail_set_unchecked(&self, a0: usize) -> PointSet {
        self.index.up_set(a0).map(|b| self.values[b]).collect()
    }

    pub fn tail_family(&self) -> TailFamily {
        let sets: BTreeSet<PointSet> =
            (0..self.index.size()).map(|a| self.tail_set_unchecked(a)).collect();
        TailFamily { sets: sets.into_iter().collect() }
    }

    /// The principal filter generated by the tail sets; its kernel is the
    /// tail at the lowest-numbered top element.
    pub fn tail_filter(&self) -> PrincipalFilter {
        let kernel = self.tail_set_unchecked(self.index.top());
        PrincipalFilter::from_kernel_unchecked(self.carrier_size, kernel)
    }

    pub fn kernel(&self) -> PointSet {
        self.tail_filter().kernel()
    }

    fn same_carrier(&self, other: &Net) -> Result<()> {
        if self.carrier_size == other.carrier_size {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: self.carrier_size, right: other.carrier_size })
        }
    }

    /// `x_a <= x_b` in `order` whenever `a <= b`.
    pub fn is_increasing(&self, order: &CarrierOrder) -> Result<bool> {
        if order.size() != self.carrier_size {
            return Err(Error::CarrierMismatch { left: order.size(), right: self.carrier_size });
        }
        let n = self.index.size();
        Ok((0..n).all(|a| (0..n).all(|b| !self.index.le(a, b) || order.le(self.values[a], self.values[b]))))
    }
}

/// `y` is a quasi-subnet of `x`: every tail set of `x` contains a tail set
/// of `y`. Decided directly from the tail sets.
pub fn is_quasi_subnet(y: &Net, x: &Net) -> Result<bool> {
    y.same_carrier(x)?;
    let y_tails: Vec<PointSet> = (0..y.index.size()).map(|b| y.tail_set_unchecked(b)).collect();
    Ok((0..x.index.size()).all(|a0| {
        let xt = x.tail_set_unchecked(a0);
        y_tails.iter().any(|yt| yt.is_subset(xt))
    }))
}

pub fn is_tail_equivalent(x: &Net, y: &Net) -> Result<bool> {
    Ok(is_quasi_subnet(x, y)? && is_quasi_subnet(y, x)?)
}

pub fn is_strongly_tail_equivalent(x: &Net, y: &Net) -> Result<bool> {
    x.same_carrier(y)?;
    Ok(x.tail_family() == y.tail_family())
}

/// A subnet of `x` tail-equivalent to a given quasi-subnet, with the
/// monotone cofinal index map into `x`'s index.
#[derive(Clone, Debug)]
pub struct SubnetWitness {
    pub net: Net,
    pub index_map: Vec<usize>,
}

impl SubnetWitness {
    pub fn map_is_monotone(&self, x: &Net) -> bool {
        let idx = self.net.index();
        let n = idx.size();
        (0..n).all(|p| (0..n).all(|q| !idx.le(p, q) || x.index().le(self.index_map[p], self.index_map[q])))
    }

    /// For every `a0` in `x`'s index some `c0` maps all of its up-set above `a0`.
    pub fn map_is_cofinal(&self, x: &Net) -> bool {
        let idx = self.net.index();
        (0..x.index().size()).all(|a0| {
            (0..idx.size()).any(|c0| idx.up_set(c0).all(|c| x.index().le(a0, self.index_map[c])))
        })
    }
}

/// Given a quasi-subnet `y` of `x`, builds the net over
/// `{(a, b) : x_a = y_b}` with the product order, valued by `x_a`.
pub fn subnet_witness(x: &Net, y: &Net) -> Result<SubnetWitness> {
    if !is_quasi_subnet(y, x)? {
        return Err(Error::Domain("second net is not a quasi-subnet of the first".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..x.index.size())
        .flat_map(|a| (0..y.index.size()).map(move |b| (a, b)))
        .filter(|&(a, b)| x.values[a] == y.values[b])
        .collect();
    let index = DirectedIndex::from_fn_unchecked(pairs.len(), |p, q| {
        x.index.le(pairs[p].0, pairs[q].0) && y.index.le(pairs[p].1, pairs[q].1)
    });
    let values = pairs.iter().map(|&(a, _)| x.values[a]).collect();
    let index_map = pairs.iter().map(|&(a, _)| a).collect();
    Ok(SubnetWitness { net: Net::new_unchecked(index, values, x.carrier_size), index_map })
}

/// Re-indexes both nets over the product of their index sets.
pub fn common_reindex(x: &Net, y: &Net) -> Result<(Net, Net)> {
    x.same_carrier(y)?;
    let m = y.index.size();
    let index = x.index.product(&y.index);
    let xs = (0..index.size()).map(|p| x.values[p / m]).collect();
    let ys = (0..index.size()).map(|p| y.values[p % m]).collect();
    Ok((
        Net::new_unchecked(index.clone(), xs, x.carrier_size),
        Net::new_unchecked(index, ys, x.carrier_size),
    ))
}

/// A partial order on carrier points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierOrder {
    size: usize,
    le: Vec<bool>,
}

impl CarrierOrder {
    pub fn new(size: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let le: Vec<bool> = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        let order = CarrierOrder { size, le };
        for i in 0..size {
            if !order.le(i, i) {
                return Err(Error::Domain(format!("carrier order not reflexive at {i}")));
            }
            for j in 0..size {
                if i != j && order.le(i, j) && order.le(j, i) {
                    return Err(Error::Domain(format!("carrier order not antisymmetric at {i}, {j}")));
                }
                for k in 0..size {
                    if order.le(i, j) && order.le(j, k) && !order.le(i, k) {
                        return Err(Error::Domain("carrier order not transitive".into()));
                    }
                }
            }
        }
        Ok(order)
    }

    /// The usual order on point ids.
    pub fn linear(size: usize) -> Self {
        CarrierOrder::new(size, |i, j| i <= j).expect("linear order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.size + j]
    }

    pub fn least(&self, set: PointSet) -> Option<usize> {
        set.iter().find(|&m| set.iter().all(|t| self.le(m, t)))
    }
}

/// For an increasing net, the net indexed by its tail sets under reverse
/// inclusion, valued by the least element of each tail set.
pub fn canonical_monotone(x: &Net, order: &CarrierOrder) -> Result<Net> {
    if !x.is_increasing(order)? {
        return Err(Error::Domain("net is not increasing".into()));
    }
    let tails = x.tail_family().sets;
    let values = tails
        .iter()
        .map(|&t| {
            order
                .least(t)
                .ok_or_else(|| Error::Invariant(format!("tail set {t:?} has no least element")))
        })
        .collect::<Result<Vec<_>>>()?;
    let index = DirectedIndex::from_fn_unchecked(tails.len(), |p, q| tails[q].is_subset(tails[p]));
    Ok(Net::new_unchecked(index, values, x.carrier_size))
}

/// `z_a = x_a` or `y_a` according to the selector.
pub fn braid(x: &Net, y: &Net, s: &Selector) -> Result<Net> {
    x.same_carrier(y)?;
    if x.index != y.index {
        return Err(Error::IndexMismatch);
    }
    if s.0.len() != x.index.size() {
        return Err(Error::SizeMismatch { expected: x.index.size(), actual: s.0.len() });
    }
    let values = s
        .0
        .iter()
        .enumerate()
        .map(|(a, c)| match c {
            Choice::First => x.values[a],
            Choice::Second => y.values[a],
        })
        .collect();
    Ok(Net::new_unchecked(x.index.clone(), values, x.carrier_size))
}

/// The mixing of two nets: index `{(a, b, z) : z in {x_a, y_b}}` ordered by
/// the first two components, valued by `z`.
pub fn mix2(x: &Net, y: &Net) -> Result<Net> {
    x.same_carrier(y)?;
    let mut elems = Vec::new();
    for a in 0..x.index.size() {
        for b in 0..y.index.size() {
            let (u, v) = (x.values[a], y.values[b]);
            elems.push((a, b, u));
            if v != u {
                elems.push((a, b, v));
            }
        }
    }
    let index = DirectedIndex::from_fn_unchecked(elems.len(), |p, q| {
        x.index.le(elems[p].0, elems[q].0) && y.index.le(elems[p].1, elems[q].1)
    });
    let values = elems.iter().map(|e| e.2).collect();
    Ok(Net::new_unchecked(index, values, x.carrier_size))
}

/// Element layout shared by mixings and reactions: `(tuple, j)` where
/// `tuple` picks one index element of every member net.
struct FamilyLayout {
    tuples: Vec<Vec<usize>>,
    members: usize,
}

impl FamilyLayout {
    fn new(nets: &[Net]) -> Self {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for n in nets {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..n.index.size()).map(move |a| {
                        let mut t = t.clone();
                        t.push(a);
                        t
                    })
                })
                .collect();
        }
        FamilyLayout { tuples, members: nets.len() }
    }

    fn size(&self) -> usize {
        self.tuples.len() * self.members
    }

    fn split(&self, p: usize) -> (&[usize], usize) {
        (&self.tuples[p / self.members], p % self.members)
    }

    fn tuples_le(&self, nets: &[Net], s: &[usize], t: &[usize]) -> bool {
        nets.iter().zip(s.iter().zip(t)).all(|(n, (&a, &b))| n.index.le(a, b))
    }

    fn values(&self, nets: &[Net]) -> Vec<usize> {
        (0..self.size())
            .map(|p| {
                let (t, j) = self.split(p);
                nets[j].values[t[j]]
            })
            .collect()
    }
}

fn shared_carrier(nets: &[Net]) -> Result<usize> {
    let first = nets.first().ok_or(Error::EmptyFamily)?;
    for n in &nets[1..] {
        first.same_carrier(n)?;
    }
    Ok(first.carrier_size)
}

/// The mixing of a family: index `(prod A_j) x J` preordered by the product
/// order on the first component only, valued by net `j` at the `j`-th
/// coordinate.
pub fn mix_family(nets: &[Net]) -> Result<Net> {
    let carrier = shared_carrier(nets)?;
    let layout = FamilyLayout::new(nets);
    let index = DirectedIndex::from_fn_unchecked(layout.size(), |p, q| {
        layout.tuples_le(nets, layout.split(p).0, layout.split(q).0)
    });
    Ok(Net::new_unchecked(index, layout.values(nets), carrier))
}

/// The reaction of a directed set `J` with a `J`-indexed family: same
/// elements and values as the mixing, ordered by the product order on the
/// first component and `J`'s order on the second.
pub fn reaction(j: &DirectedIndex, nets: &[Net]) -> Result<Net> {
    if nets.len() != j.size() {
        return Err(Error::SizeMismatch { expected: j.size(), actual: nets.len() });
    }
    let carrier = shared_carrier(nets)?;
    let layout = FamilyLayout::new(nets);
    let index = DirectedIndex::from_fn_unchecked(layout.size(), |p, q| {
        let (s, jp) = layout.split(p);
        let (t, jq) = layout.split(q);
        j.le(jp, jq) && layout.tuples_le(nets, s, t)
    });
    Ok(Net::new_unchecked(index, layout.values(nets), carrier))
}

/// The matryoshka of `x` along an increasing chain of index elements:
/// index `{(n, a) : a >= chain[n]}` preordered by `n`, valued by `x_a`.
pub fn matryoshka(x: &Net, chain: &[usize]) -> Result<Net> {
    if chain.is_empty() {
        return Err(Error::Domain("chain must be nonempty".into()));
    }
    for &c in chain {
        x.index.check_element(c)?;
    }
    if let Some(w) = chain.windows(2).find(|w| !x.index.le(w[0], w[1])) {
        return Err(Error::Domain(format!("chain is not increasing at {} -> {}", w[0], w[1])));
    }
    let elems: Vec<(usize, usize)> = chain
        .iter()
        .enumerate()
        .flat_map(|(n, &c)| x.index.up_set(c).map(move |a| (n, a)))
        .collect();
    let index = DirectedIndex::from_fn_unchecked(elems.len(), |p, q| elems[p].0 <= elems[q].0);
    let values = elems.iter().map(|&(_, a)| x.values[a]).collect();
    Ok(Net::new_unchecked(index, values, x.carrier_size))
}

/// Every net with index size at most `max_index` on a carrier of
/// `carrier_size` points, over every directed preorder of each size.
pub fn enumerate_nets(max_index: usize, carrier_size: usize) -> Vec<Net> {
    let mut out = Vec::new();
    for size in 1..=max_index {
        let total = carrier_size.pow(size as u32);
        for index in DirectedIndex::enumerate_all(size) {
            for code in 0..total {
                let mut c = code;
                let values = (0..size)
                    .map(|_| {
                        let v = c % carrier_size;
                        c /= carrier_size;
                        v
                    })
                    .collect();
                out.push(Net::new_unchecked(index.clone(), values, carrier_size));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[usize], n: usize) -> Net {
        Net::sequence(v.to_vec(), n).unwrap()
    }

    #[test]
    fn validate_directed_examples() {
        assert!(validate_directed(&[vec![true]]).unwrap());
        assert!(!validate_directed(&[vec![true, false], vec![false, true]]).unwrap());
        let total = DirectedIndex::chain(3).rows();
        assert!(validate_directed(&total).unwrap());
        assert!(matches!(validate_directed(&[vec![true, true]]), Err(Error::Structural(_))));
        assert!(matches!(validate_directed(&[]), Err(Error::Structural(_))));
    }

    #[test]
    fn directed_preorder_counts() {
        // 1, then {<=, >=, both}, then brute-force-checked 3-element count.
        assert_eq!(DirectedIndex::enumerate_all(1).len(), 1);
        assert_eq!(DirectedIndex::enumerate_all(2).len(), 3);
        let brute = (0u32..64)
            .filter(|m| {
                let mut rows = vec![vec![true; 3]; 3];
                let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
                for (b, &(i, j)) in off.iter().enumerate() {
                    rows[i][j] = m >> b & 1 == 1;
                }
                check_directed(&rows).is_ok()
            })
            .count();
        assert_eq!(DirectedIndex::enumerate_all(3).len(), brute);
    }

    #[test]
    fn tail_sets() {
        let c = Net::constant(DirectedIndex::chain(3), 1, 3).unwrap();
        assert_eq!(c.tail_set(0).unwrap(), PointSet::singleton(1));
        let x = seq(&[0, 1, 0], 2);
        assert_eq!(x.tail_set(1).unwrap(), PointSet::from_points([0, 1]));
        assert_eq!(x.tail_set(2).unwrap(), PointSet::singleton(0));
        assert!(matches!(x.tail_set(3), Err(Error::InvalidIndex { .. })));
        assert_eq!(
            x.tail_family().sets,
            vec![PointSet::singleton(0), PointSet::from_points([0, 1])]
        );
        assert_eq!(x.kernel(), PointSet::singleton(0));
        assert_eq!(c.tail_family().sets, vec![PointSet::singleton(1)]);
    }

    // Points: 0 = -1, 1 = 0, 2 = 1, 3 = 2.
    #[test]
    fn alternating_sign_sequences() {
        let x = seq(&[2, 1, 1], 4);
        let y = seq(&[0, 1, 1], 4);
        assert_eq!(x.kernel(), PointSet::singleton(1));
        assert_eq!(y.kernel(), PointSet::singleton(1));
        assert!(is_quasi_subnet(&x, &y).unwrap());
        assert!(is_quasi_subnet(&y, &x).unwrap());
        assert!(is_tail_equivalent(&x, &y).unwrap());
        assert!(!is_strongly_tail_equivalent(&x, &y).unwrap());
        let w = subnet_witness(&x, &y).unwrap();
        assert_eq!(w.net.kernel(), PointSet::singleton(1));
        assert!(is_tail_equivalent(&w.net, &y).unwrap());
        assert!(w.map_is_monotone(&x) && w.map_is_cofinal(&x));

        let a = seq(&[0, 1, 2, 3], 4);
        let b = seq(&[1, 0, 1, 2, 3], 4);
        assert!(is_strongly_tail_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn quasi_subnet_basic() {
        let a = Net::constant(DirectedIndex::chain(2), 0, 2).unwrap();
        let b = Net::constant(DirectedIndex::chain(2), 1, 2).unwrap();
        assert!(is_quasi_subnet(&a, &a).unwrap());
        assert!(!is_quasi_subnet(&a, &b).unwrap());
        let other = Net::constant(DirectedIndex::chain(2), 0, 3).unwrap();
        assert!(matches!(is_quasi_subnet(&a, &other), Err(Error::CarrierMismatch { .. })));
        assert!(matches!(subnet_witness(&a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn common_reindex_preserves_tails() {
        let x = seq(&[0, 1], 3);
        let y = seq(&[2, 0, 1], 3);
        let (x2, y2) = common_reindex(&x, &y).unwrap();
        assert_eq!(x2.index().size(), 6);
        assert!(is_strongly_tail_equivalent(&x, &x2).unwrap());
        assert!(is_strongly_tail_equivalent(&y, &y2).unwrap());
    }

    #[test]
    fn canonical_monotone_examples() {
        let order = CarrierOrder::linear(3);
        let x = seq(&[0, 1, 2], 3);
        let m = canonical_monotone(&x, &order).unwrap();
        assert_eq!(m.index().size(), 3);
        let mut pairs: Vec<_> = (0..3).map(|a| (m.tail_set(a).unwrap(), m.value(a))).collect();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                (PointSet::from_points([2]), 2),
                (PointSet::from_points([1, 2]), 1),
                (PointSet::from_points([0, 1, 2]), 0),
            ]
        );
        assert!(m.is_increasing(&order).unwrap());
        assert!(is_strongly_tail_equivalent(&m, &x).unwrap());

        let c = Net::constant(DirectedIndex::chain(4), 1, 3).unwrap();
        let mc = canonical_monotone(&c, &order).unwrap();
        assert_eq!(mc.index().size(), 1);
        assert_eq!(mc.value(0), 1);

        // 2,1,4,3 on the points 1..4 (ids 0..3).
        let inter = seq(&[1, 0, 3, 2], 4);
        assert!(matches!(canonical_monotone(&inter, &CarrierOrder::linear(4)), Err(Error::Domain(_))));
    }

    #[test]
    fn braid_examples() {
        let idx = DirectedIndex::chain(4);
        let x = Net::constant(idx.clone(), 0, 2).unwrap();
        let y = Net::constant(idx.clone(), 1, 2).unwrap();
        assert_eq!(braid(&x, &y, &Selector::all(4, Choice::First)).unwrap(), x);
        let z = braid(&x, &y, &Selector::alternating(4)).unwrap();
        assert_eq!(z.values(), &[0, 1, 0, 1]);
        let other = Net::constant(DirectedIndex::chain(3), 0, 2).unwrap();
        assert!(matches!(braid(&x, &other, &Selector::alternating(4)), Err(Error::IndexMismatch)));
    }

    #[test]
    fn mix2_examples() {
        let a = Net::constant(DirectedIndex::singleton(), 0, 2).unwrap();
        let b = Net::constant(DirectedIndex::singleton(), 1, 2).unwrap();
        let m = mix2(&a, &b).unwrap();
        assert_eq!(m.index().size(), 2);
        assert!(m.index().le(0, 1) && m.index().le(1, 0));
        assert_eq!(m.kernel(), PointSet::from_points([0, 1]));

        let c = Net::constant(DirectedIndex::chain(2), 1, 2).unwrap();
        let mc = mix2(&c, &c).unwrap();
        assert_eq!(mc.range(), PointSet::singleton(1));
    }

    #[test]
    fn mix_family_examples() {
        let x = seq(&[0, 1, 2], 3);
        let single = mix_family(std::slice::from_ref(&x)).unwrap();
        assert!(is_strongly_tail_equivalent(&single, &x).unwrap());
        let y = seq(&[2, 0], 3);
        let m = mix_family(&[x.clone(), y.clone()]).unwrap();
        assert!(is_tail_equivalent(&m, &mix2(&x, &y).unwrap()).unwrap());
        assert_eq!(m.kernel(), x.kernel() | y.kernel());
        assert!(matches!(mix_family(&[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn matryoshka_examples() {
        let x = seq(&[0, 1, 2, 1], 3);
        // A one-link chain keeps only the tail at that link.
        let m = matryoshka(&x, &[0]).unwrap();
        assert_eq!(m.tail_family().sets, vec![x.tail_set(0).unwrap()]);
        assert!(!is_tail_equivalent(&m, &x).unwrap());
        let c = seq(&[1, 1, 1], 3);
        assert!(is_strongly_tail_equivalent(&matryoshka(&c, &[0]).unwrap(), &c).unwrap());
        let m = matryoshka(&x, &[0, 2, 3]).unwrap();
        let expected: BTreeSet<PointSet> = [0, 2, 3].iter().map(|&a| x.tail_set(a).unwrap()).collect();
        let got: BTreeSet<PointSet> = m.tail_family().sets.into_iter().collect();
        assert_eq!(got, expected);
        let top = matryoshka(&x, &[3]).unwrap();
        assert_eq!(top.kernel(), x.tail_set(3).unwrap());
        assert!(matches!(matryoshka(&x, &[2, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn reaction_examples() {
        let a = Net::constant(DirectedIndex::chain(2), 0, 2).unwrap();
        let b = Net::constant(DirectedIndex::chain(2), 1, 2).unwrap();
        let fam = [a, b];
        let trivial = DirectedIndex::trivial(2);
        assert_eq!(reaction(&trivial, &fam).unwrap(), mix_family(&fam).unwrap());
        let r = reaction(&DirectedIndex::chain(2), &fam).unwrap();
        assert_eq!(r.kernel(), PointSet::singleton(1));
        assert!(is_quasi_subnet(&r, &mix_family(&fam).unwrap()).unwrap());
        assert!(matches!(reaction(&DirectedIndex::chain(3), &fam), Err(Error::SizeMismatch { .. })));
    }
}
