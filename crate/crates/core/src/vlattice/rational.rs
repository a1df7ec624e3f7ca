use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar used throughout the lattice module.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `r^e` for a possibly negative exponent.
pub fn powi(r: &Q, e: i64) -> Q {
    if e >= 0 {
        pow(r, e as u64)
    } else {
        pow(&r.recip(), e.unsigned_abs())
    }
}

/// `r^e`. Powers of coprime parts stay coprime, so no normalization.
pub fn pow(r: &Q, e: u64) -> Q {
    let e = u32::try_from(e).expect("exponent fits in u32");
    Q::new_raw(r.numer().pow(e), r.denom().pow(e))
}

/// A fraction kept unreduced. Reduction is a gcd, which on the large
/// powers met in certificate checks costs far more than the products used
/// here, so sums and comparisons are done by cross-multiplication instead.
#[derive(Clone, Debug)]
pub struct Frac {
    num: BigInt,
    /// Always positive.
    den: BigInt,
}

impl Frac {
    pub fn zero() -> Frac {
        Frac { num: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_q(a: &Q) -> Frac {
        Frac { num: a.numer().clone(), den: a.denom().clone() }
    }

    /// `r^e`.
    pub fn pow(r: &Q, e: u64) -> Frac {
        let e = u32::try_from(e).expect("exponent fits in u32");
        Frac { num: r.numer().pow(e), den: r.denom().pow(e) }
    }

    pub fn mul_q(&self, a: &Q) -> Frac {
        Frac { num: &self.num * a.numer(), den: &self.den * a.denom() }
    }

    /// `self / n` for a nonzero `n`.
    pub fn div_int(&self, n: i64) -> Frac {
        assert!(n != 0, "division by zero");
        let num = if n < 0 { -&self.num } else { self.num.clone() };
        Frac { num, den: &self.den * n.unsigned_abs() }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac { num: &self.num + &o.num, den: self.den.clone() };
        }
        Frac { num: &self.num * &o.den + &o.num * &self.den, den: &self.den * &o.den }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&Frac { num: -&o.num, den: o.den.clone() })
    }

    pub fn abs(&self) -> Frac {
        Frac { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn le(&self, o: &Frac) -> bool {
        &self.num * &o.den <= &o.num * &self.den
    }

    pub fn to_q(&self) -> Q {
        Q::new(self.num.clone(), self.den.clone())
    }
}

pub fn max(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn sign(a: &Q) -> i8 {
    if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(a: &Q) -> Q {
    a - a.floor()
}

/// Smallest integer `>= a`, as a `u64` clamped at 1.
pub fn ceil_index(a: &Q) -> u64 {
    let c = a.ceil().to_integer();
    if c < BigInt::one() {
        1
    } else {
        c.to_u64().unwrap_or(u64::MAX)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Domain(format!("not a rational: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format(a: &Q) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_format_roundtrip() {
        for s in ["0", "1/2", "-3/4", "7", "-12"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("2/4").unwrap(), qf(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(powi(&qf(1, 2), -2), q(4));
        assert_eq!(frac(&qf(-1, 3)), qf(2, 3));
        assert_eq!(ceil_index(&qf(5, 2)), 3);
        assert_eq!(ceil_index(&q(-4)), 1);
        assert_eq!(sign(&qf(-1, 7)), -1);
    }

    #[test]
    fn frac_matches_q() {
        let xs = [qf(1, 2), qf(-3, 4), q(0), qf(5, 3), qf(2, 6)];
        for a in &xs {
            for b in &xs {
                let (fa, fb) = (Frac::from_q(a), Frac::from_q(b));
                assert_eq!(fa.add(&fb).to_q(), a + b);
                assert_eq!(fa.sub(&fb).abs().to_q(), (a - b).abs());
                assert_eq!(fa.mul_q(b).to_q(), a * b);
                assert_eq!(fa.le(&fb), a <= b);
            }
            assert_eq!(Frac::from_q(a).div_int(3).to_q(), a / q(3));
            assert_eq!(Frac::from_q(a).div_int(-2).to_q(), a / q(-2));
            assert_eq!(Frac::pow(a, 3).to_q(), pow(a, 3));
        }
    }
}
