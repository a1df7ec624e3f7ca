//! The typewriter sequence: indicators of consecutive arcs of length `1/n`
//! laid around the circle `[0, 1)`, starting at the harmonic sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{frac, q, qf, Q};
use super::term::SeqTerm;
use super::vector::StepFn;
use crate::error::{Error, Result};

/// `A_n` as at most two right-open intervals inside `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypewriterSet {
    pub n: u64,
    pub pieces: Vec<(Q, Q)>,
}

impl TypewriterSet {
    fn from_start(n: u64, start: &Q) -> Self {
        let a = frac(start);
        let b = &a + Q::one() / q(n as i64);
        let pieces = if b <= Q::one() {
            vec![(a, b)]
        } else {
            vec![(Q::zero(), b - Q::one()), (a, Q::one())]
        };
        TypewriterSet { n, pieces }
    }

    pub fn measure(&self) -> Q {
        self.pieces.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, t: &Q) -> bool {
        self.pieces.iter().any(|(a, b)| a <= t && t < b)
    }

    pub fn indicator(&self) -> StepFn {
        let mut breaks: Vec<Q> = vec![Q::zero()];
        for (a, b) in &self.pieces {
            breaks.push(a.clone());
            if *b < Q::one() {
                breaks.push(b.clone());
            }
        }
        breaks.sort();
        breaks.dedup();
        let values = breaks.iter().map(|t| if self.contains(t) { Q::one() } else { Q::zero() }).collect();
        StepFn::new(breaks, values).expect("breakpoints inside [0, 1)")
    }
}

/// `A_n` over the common denominator `L = lcm(1..n)`: the arc starts at
/// `start/L` and has length `(L/n)/L`. Everything stays integral, so long
/// scans avoid rational normalization.
#[derive(Clone, Debug)]
pub struct Arc {
    pub n: u64,
    start: BigInt,
    den: BigInt,
    len: BigInt,
}

impl Arc {
    fn len(&self) -> &BigInt {
        &self.len
    }

    /// `t = p/q` in `[0, 1)` lies on the arc iff `p·L - q·start`, taken
    /// mod `q·L`, is below `q·len`. Both products lie in `[0, q·L)`, so one
    /// correction does the reduction.
    pub fn contains(&self, t: &Q) -> bool {
        let (p, qd) = (t.numer(), t.denom());
        let mut offset = p * &self.den - qd * &self.start;
        if offset.is_negative() {
            offset += qd * &self.den;
        }
        offset < qd * self.len()
    }

    /// `[lo, hi)` with `p/d` on the arc iff `p` or `p + d` lies in it, for
    /// `0 <= p < d`.
    pub fn window(&self, d: &BigInt) -> (BigInt, BigInt) {
        let ceil_div = |a: BigInt| a.div_ceil(&self.den);
        (ceil_div(&self.start * d), ceil_div((&self.start + &self.len) * d))
    }

    /// Total length of the pieces, computed from the endpoints.
    pub fn measure(&self) -> Q {
        let end = &self.start + self.len();
        let pieces = if end <= self.den {
            end - &self.start
        } else {
            (&end - &self.den) + (&self.den - &self.start)
        };
        Q::new(pieces, self.den.clone())
    }

    /// `measure = 1/n`, checked on integers.
    pub fn has_reciprocal_measure(&self) -> bool {
        let end = &self.start + self.len();
        let pieces = if end <= self.den {
            end - &self.start
        } else {
            (&end - &self.den) + (&self.den - &self.start)
        };
        pieces * BigInt::from(self.n) == self.den
    }

    pub fn to_set(&self) -> TypewriterSet {
        TypewriterSet::from_start(self.n, &Q::new(self.start.clone(), self.den.clone()))
    }
}

/// `A_1, A_2, ...` with the harmonic sum carried along exactly.
pub struct ArcIter {
    n: u64,
    /// `H_{n-1}·L` reduced mod `L`
    start: BigInt,
    den: BigInt,
}

impl Iterator for ArcIter {
    type Item = Arc;

    fn next(&mut self) -> Option<Arc> {
        self.n += 1;
        let n = BigInt::from(self.n);
        let rem = u64::try_from(&self.den % &n).expect("remainder below n");
        let grow = BigInt::from(self.n / self.n.gcd(&rem));
        self.den *= &grow;
        self.start *= &grow;
        let len = &self.den / &n;
        let arc = Arc { n: self.n, start: self.start.clone(), den: self.den.clone(), len: len.clone() };
        self.start += len;
        if self.start >= self.den {
            self.start -= &self.den;
        }
        Some(arc)
    }
}

pub fn typewriter_arcs() -> ArcIter {
    ArcIter { n: 0, start: BigInt::zero(), den: BigInt::one() }
}

pub fn typewriter_sets() -> impl Iterator<Item = TypewriterSet> {
    typewriter_arcs().map(|a| a.to_set())
}

/// `H_n = Σ_{k <= n} 1/k`.
pub fn harmonic_sum(n: u64) -> Q {
    (1..=n).map(|k| Q::one() / q(k as i64)).sum()
}

pub fn typewriter_set(n: u64) -> Result<TypewriterSet> {
    if n == 0 {
        return Err(Error::Domain("typewriter sets start at n = 1".into()));
    }
    Ok(TypewriterSet::from_start(n, &harmonic_sum(n - 1)))
}

pub fn indicator(n: u64) -> StepFn {
    typewriter_set(n).expect("n >= 1").indicator()
}

pub fn typewriter_term() -> SeqTerm {
    SeqTerm::Typewriter
}

/// Which subsequence of the typewriter to follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubseqRule {
    /// `n_k = 2^k` for `0 <= k <= max_k`.
    Pow2 { max_k: u32 },
}

impl SubseqRule {
    pub fn indices(&self) -> Vec<u64> {
        match self {
            SubseqRule::Pow2 { max_k } => (0..=*max_k).map(|k| 1u64 << k).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub sample: Q,
    /// `#{n < 100 : t ∈ A_n}`
    pub hits_below_100: u64,
    /// `#{100 <= n <= N : t ∈ A_n}`
    pub hits_from_100: u64,
    pub last_hit: Option<u64>,
    /// Positions `k` with `t ∈ A_{n_k}`.
    pub subseq_hits: Vec<usize>,
    /// First position after the last subsequence hit; the sample stays out
    /// of every later subsequence set inside the horizon.
    pub exit_position: usize,
}

impl SampleReport {
    pub fn hits(&self) -> u64 {
        self.hits_below_100 + self.hits_from_100
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AeReport {
    pub horizon: u64,
    /// Sets whose measure differs from `1/n`; empty when all agree.
    pub measure_failures: Vec<u64>,
    pub subseq: Vec<u64>,
    /// `Σ_k 1/n_k` over the subsequence.
    pub subseq_mass: Q,
    pub samples: Vec<SampleReport>,
}

/// Scans `A_1, .., A_N`, checks every measure, and records how each sample
/// point meets the full sequence and the chosen subsequence.
pub fn ae_sample_report(samples: &[Q], horizon: u64, rule: SubseqRule) -> Result<AeReport> {
    if horizon == 0 {
        return Err(Error::Domain("horizon must be positive".into()));
    }
    if let Some(t) = samples.iter().find(|t| *t < &Q::zero() || *t >= &Q::one()) {
        return Err(Error::Domain(format!("sample {t} outside [0, 1)")));
    }
    let subseq: Vec<u64> = rule.indices().into_iter().filter(|&n| n <= horizon).collect();
    let subseq_mass = subseq.iter().map(|&n| qf(1, n as i64)).sum();
    let mut measure_failures = Vec::new();
    // Samples over one common denominator.
    let common = samples.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
    let scaled: Vec<BigInt> = samples.iter().map(|t| t.numer() * (&common / t.denom())).collect();
    let mut reports: Vec<SampleReport> = samples
        .iter()
        .map(|t| SampleReport {
            sample: t.clone(),
            hits_below_100: 0,
            hits_from_100: 0,
            last_hit: None,
            subseq_hits: Vec::new(),
            exit_position: 0,
        })
        .collect();
    for set in typewriter_arcs().take(horizon as usize) {
        if !set.has_reciprocal_measure() {
            measure_failures.push(set.n);
        }
        let pos = subseq.iter().position(|&m| m == set.n);
        let (lo, hi) = set.window(&common);
        for (r, p) in reports.iter_mut().zip(&scaled) {
            if (&lo <= p && p < &hi) || (lo <= p + &common && p + &common < hi) {
                if set.n < 100 {
                    r.hits_below_100 += 1;
                } else {
                    r.hits_from_100 += 1;
                }
                r.last_hit = Some(set.n);
                if let Some(p) = pos {
                    r.subseq_hits.push(p);
                    r.exit_position = p + 1;
                }
            }
        }
    }
    Ok(AeReport { horizon, measure_failures, subseq, subseq_mass, samples: reports })
}

/// `(2i + 1) / (2m)` for `i < m`: midpoints of a uniform grid.
pub fn grid_samples(m: u64) -> Vec<Q> {
    (0..m).map(|i| qf(2 * i as i64 + 1, 2 * m as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sets() {
        let a1 = typewriter_set(1).unwrap();
        assert_eq!(a1.pieces, vec![(q(0), q(1))]);
        assert_eq!(a1.measure(), q(1));
        let a2 = typewriter_set(2).unwrap();
        assert_eq!(a2.pieces, vec![(q(0), qf(1, 2))]);
        // s_2 = 3/2, s_3 = 11/6: [1/2, 5/6).
        assert_eq!(typewriter_set(3).unwrap().pieces, vec![(qf(1, 2), qf(5, 6))]);
        // s_3 = 11/6, s_4 = 25/12: wraps.
        assert_eq!(typewriter_set(4).unwrap().pieces, vec![(q(0), qf(1, 12)), (qf(5, 6), q(1))]);
        assert!(typewriter_set(0).is_err());
    }

    #[test]
    fn iterator_matches_direct() {
        for (set, n) in typewriter_sets().zip(1..60) {
            assert_eq!(set, typewriter_set(n).unwrap());
            assert_eq!(set.measure(), qf(1, n as i64));
        }
    }

    #[test]
    fn arcs_match_sets() {
        for (arc, n) in typewriter_arcs().zip(1..80) {
            let set = typewriter_set(n).unwrap();
            assert_eq!(arc.measure(), set.measure());
            for i in 0..97 {
                let t = qf(i, 97);
                assert_eq!(arc.contains(&t), set.contains(&t), "n = {n}, t = {t}");
            }
            assert!(arc.has_reciprocal_measure());
        }
    }

    #[test]
    fn indicator_matches_membership() {
        let set = typewriter_set(4).unwrap();
        let f = set.indicator();
        for i in 0..48 {
            let t = qf(i, 48);
            assert_eq!(f.eval(&t) == q(1), set.contains(&t));
        }
    }

    #[test]
    fn small_report() {
        let r = ae_sample_report(&[qf(1, 3)], 10_000, SubseqRule::Pow2 { max_k: 13 }).unwrap();
        assert!(r.measure_failures.is_empty());
        assert_eq!(r.subseq_mass, q(2) - qf(1, 8192));
        let s = &r.samples[0];
        assert!(s.hits() >= 5 && s.hits_from_100 >= 1);
        assert!(ae_sample_report(&[q(1)], 10, SubseqRule::Pow2 { max_k: 3 }).is_err());
    }
}
