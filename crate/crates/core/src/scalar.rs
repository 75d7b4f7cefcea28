//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every number in the library is a [`Scalar`] tagged with its [`Field`].
//! There is deliberately no floating point anywhere: subspace dimensions and
//! axiom checks are yes/no questions, and exact arithmetic is what makes the
//! answers trustworthy.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

/// The coefficient field of an algebra: the rationals, or ℤ/p for a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

/// Upper bound (exclusive) on prime moduli so products of residues fit in
/// u64 without overflow: (p−1)² < 2⁶² for p < 2³¹.
pub const MAX_MODULUS: u64 = 1 << 31;

impl Field {
    /// Validates a prime-field modulus: prime, and small enough for u64
    /// residue arithmetic.
    pub fn fp(p: u64) -> Result<Field> {
        if p >= MAX_MODULUS {
            return Err(Error::InvalidParams(format!(
                "modulus {p} too large (must be below 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("modulus {p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { p, v: 1 % p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v: r }
            }
        }
    }

    /// The characteristic: 0 for ℚ, p for ℤ/p.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    /// Parses a scalar in this field. ℚ accepts "a" or "a/b" with optional
    /// sign; ℤ/p accepts a (possibly signed) decimal integer, reduced mod p.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Q => {
                let mk_err = || Error::Parse(format!("invalid rational {s:?}"));
                let (num_str, den_str) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (s, None),
                };
                let num: BigInt = num_str.parse().map_err(|_| mk_err())?;
                let den: BigInt = match den_str {
                    Some(d) => d.parse().map_err(|_| mk_err())?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Q(BigRational::new(num, den)))
            }
            Field::Fp(p) => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid residue {s:?}")))?;
                let r = n.rem_euclid(p as i128) as u64;
                Ok(Scalar::Fp { p, v: r })
            }
        }
    }
}

/// An exact field element. Rationals are kept reduced with a positive
/// denominator (num::BigRational maintains that); prime-field residues live
/// in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn check_same(&self, rhs: &Scalar) -> (Field, ()) {
        let f = self.field();
        assert_eq!(f, rhs.field(), "scalar arithmetic across distinct fields");
        (f, ())
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { p: *p, v: (a + b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { p: *p, v: (a + p - b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { p: *p, v: (a * b) % p }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: (p - v) % p },
        }
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: mod_inverse(*v, *p) },
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }

    /// Canonical text form: reduced "a/b" (or "a" when integral) over ℚ,
    /// the decimal residue over ℤ/p. This is the serialization format.
    pub fn render(&self) -> String {
        match self {
            // BigRational's Display already prints "numer/denom", or just
            // "numer" when the denominator is one.
            Scalar::Q(r) => r.to_string(),
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// Rational absolute-value-ish size used only for pivot selection
    /// heuristics in tests; exactness never depends on it.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Extended-Euclid inverse of v mod p (p prime, v ≠ 0).
fn mod_inverse(v: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, v as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{v} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Trial-division primality; moduli are capped below 2³¹ so this is cheap.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_reduces_and_renders_canonically() {
        let f = Field::Q;
        assert_eq!(f.parse("4/6").unwrap().render(), "2/3");
        assert_eq!(f.parse("-4/6").unwrap().render(), "-2/3");
        // Negative denominators normalize to a positive one.
        assert_eq!(f.parse("1/-2").unwrap().render(), "-1/2");
        assert_eq!(f.parse("7").unwrap().render(), "7");
        assert_eq!(f.parse("0/5").unwrap().render(), "0");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("a").is_err());
    }

    #[test]
    fn prime_field_arithmetic_wraps_correctly() {
        let f = Field::fp(7).unwrap();
        let a = f.parse("5").unwrap();
        let b = f.parse("-1").unwrap();
        assert_eq!(b.render(), "6");
        assert_eq!(a.add(&b).render(), "4");
        assert_eq!(a.mul(&b).render(), "2"); // 30 mod 7
        assert_eq!(a.inv().mul(&a), f.one());
        assert_eq!(a.sub(&a), f.zero());
    }

    #[test]
    fn modulus_validation_rejects_composites_and_huge_primes() {
        assert!(Field::fp(6).is_err());
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(2).is_ok());
        assert!(Field::fp((1 << 31) + 11).is_err());
    }

    #[test]
    fn inverse_roundtrips_over_both_fields() {
        let q = Field::Q.parse("-3/7").unwrap();
        assert!(q.mul(&q.inv()).is_one());
        let p = Field::fp(101).unwrap();
        for v in 1..101i64 {
            let x = p.from_i64(v);
            assert!(x.mul(&x.inv()).is_one(), "inverse failed at {v}");
        }
    }
}
