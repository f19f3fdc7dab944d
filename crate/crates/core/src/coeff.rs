//! Exact coefficient arithmetic over the three supported base rings:
//! arbitrary-precision rationals, arbitrary-precision integers, and prime
//! fields F_p with 2 <= p < 2^31.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("coefficient rings do not match: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime field characteristic {0} out of range (need 2 <= p < 2^31)")]
    CharacteristicOutOfRange(u64),
    #[error("no canonical coefficient map from {from} to {to}{detail}")]
    NoCanonicalMap {
        from: CoefficientRing,
        to: CoefficientRing,
        detail: String,
    },
    #[error("coefficient {0} is not representable in {1}")]
    NotRepresentable(String, CoefficientRing),
    #[error("division by zero in {0}")]
    DivisionByZero(CoefficientRing),
    #[error("{0} is not a field")]
    NotAField(CoefficientRing),
}

/// One of the supported exact coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    /// Arbitrary-precision rationals.
    Rationals,
    /// Arbitrary-precision integers.
    Integers,
    /// The prime field F_p, elements stored as least non-negative residues.
    PrimeField(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientRing {
    /// Builds F_p, validating primality and the 2 <= p < 2^31 range.
    pub fn prime_field(p: u64) -> Result<Self, CoeffError> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(CoeffError::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rational(BigRational::zero()),
            CoefficientRing::Integers => Coeff::Integer(BigInt::zero()),
            CoefficientRing::PrimeField(p) => Coeff::Prime { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rational(BigRational::one()),
            CoefficientRing::Integers => Coeff::Integer(BigInt::one()),
            CoefficientRing::PrimeField(p) => Coeff::Prime { value: 1 % p, modulus: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoefficientRing::Rationals => Coeff::Rational(BigRational::from(BigInt::from(n))),
            CoefficientRing::Integers => Coeff::Integer(BigInt::from(n)),
            CoefficientRing::PrimeField(p) => Coeff::Prime {
                value: (n.rem_euclid(*p as i64)) as u64,
                modulus: *p,
            },
        }
    }

    /// Interprets the literal `numer/denom` in this ring.
    pub fn from_fraction(&self, numer: &BigInt, denom: &BigInt) -> Result<Coeff, CoeffError> {
        if denom.is_zero() {
            return Err(CoeffError::DivisionByZero(*self));
        }
        match self {
            CoefficientRing::Rationals => {
                Ok(Coeff::Rational(BigRational::new(numer.clone(), denom.clone())))
            }
            CoefficientRing::Integers => {
                let (q, r) = num::Integer::div_rem(numer, denom);
                if r.is_zero() {
                    Ok(Coeff::Integer(q))
                } else {
                    Err(CoeffError::NotRepresentable(
                        format!("{numer}/{denom}"),
                        *self,
                    ))
                }
            }
            CoefficientRing::PrimeField(p) => {
                let n = bigint_mod(numer, *p);
                let d = bigint_mod(denom, *p);
                if d == 0 {
                    return Err(CoeffError::NotRepresentable(
                        format!("{numer}/{denom}"),
                        *self,
                    ));
                }
                Ok(Coeff::Prime {
                    value: mul_mod(n, inv_mod(d, *p), *p),
                    modulus: *p,
                })
            }
        }
    }

    /// Checks that an element belongs to this ring; used by the polynomial layer.
    pub fn contains(&self, c: &Coeff) -> bool {
        matches!(
            (self, c),
            (CoefficientRing::Rationals, Coeff::Rational(_))
                | (CoefficientRing::Integers, Coeff::Integer(_))
        ) || matches!((self, c), (CoefficientRing::PrimeField(p), Coeff::Prime { modulus, .. }) if p == modulus)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "QQ"),
            CoefficientRing::Integers => write!(f, "ZZ"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // p < 2^31, so the product of two residues fits in u64.
    (a * b) % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// An element of one of the supported coefficient rings.
///
/// Arithmetic panics on mixed ring kinds; callers that mix rings are expected
/// to check ring equality first (the polynomial layer does).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Integer(BigInt),
    Prime { value: u64, modulus: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Integer(n) => n.is_zero(),
            Coeff::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Integer(n) => n.is_one(),
            Coeff::Prime { value, modulus } => *value == 1 % *modulus,
        }
    }

    pub fn add(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Integer(a), Coeff::Integer(b)) => Coeff::Integer(a + b),
            (Coeff::Prime { value: a, modulus: p }, Coeff::Prime { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Coeff::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn sub(&self, rhs: &Coeff) -> Coeff {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Integer(a) => Coeff::Integer(-a),
            Coeff::Prime { value, modulus } => Coeff::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Integer(a), Coeff::Integer(b)) => Coeff::Integer(a * b),
            (Coeff::Prime { value: a, modulus: p }, Coeff::Prime { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Coeff::Prime { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("mixed coefficient kinds"),
        }
    }

    /// Multiplicative inverse; defined only over fields.
    pub fn inv(&self) -> Result<Coeff, CoeffError> {
        match self {
            Coeff::Rational(a) => {
                if a.is_zero() {
                    Err(CoeffError::DivisionByZero(CoefficientRing::Rationals))
                } else {
                    Ok(Coeff::Rational(a.recip()))
                }
            }
            Coeff::Integer(_) => Err(CoeffError::NotAField(CoefficientRing::Integers)),
            Coeff::Prime { value, modulus } => {
                if *value == 0 {
                    Err(CoeffError::DivisionByZero(CoefficientRing::PrimeField(*modulus)))
                } else {
                    Ok(Coeff::Prime { value: inv_mod(*value, *modulus), modulus: *modulus })
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(a.pow(exp as i32)),
            Coeff::Integer(a) => Coeff::Integer(a.pow(exp)),
            Coeff::Prime { value, modulus } => Coeff::Prime {
                value: pow_mod(*value, exp as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Maps this element along the canonical map into `target`, when one exists.
    pub fn map_into(&self, target: CoefficientRing) -> Result<Coeff, CoeffError> {
        let source = match self {
            Coeff::Rational(_) => CoefficientRing::Rationals,
            Coeff::Integer(_) => CoefficientRing::Integers,
            Coeff::Prime { modulus, .. } => CoefficientRing::PrimeField(*modulus),
        };
        match (self, target) {
            _ if target.contains(self) => Ok(self.clone()),
            (Coeff::Integer(n), CoefficientRing::Rationals) => {
                Ok(Coeff::Rational(BigRational::from(n.clone())))
            }
            (Coeff::Integer(n), CoefficientRing::PrimeField(p)) => {
                Ok(Coeff::Prime { value: bigint_mod(n, p), modulus: p })
            }
            (Coeff::Rational(r), CoefficientRing::PrimeField(p)) => {
                let d = bigint_mod(r.denom(), p);
                if d == 0 {
                    return Err(CoeffError::NoCanonicalMap {
                        from: source,
                        to: target,
                        detail: format!(": denominator of {r} is divisible by {p}"),
                    });
                }
                let n = bigint_mod(r.numer(), p);
                Ok(Coeff::Prime { value: mul_mod(n, inv_mod(d, p), p), modulus: p })
            }
            _ => Err(CoeffError::NoCanonicalMap {
                from: source,
                to: target,
                detail: String::new(),
            }),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => write!(f, "{r}"),
            Coeff::Integer(n) => write!(f, "{n}"),
            Coeff::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(CoefficientRing::prime_field(7).is_ok());
        assert_eq!(CoefficientRing::prime_field(6), Err(CoeffError::NotPrime(6)));
        assert_eq!(
            CoefficientRing::prime_field(1),
            Err(CoeffError::CharacteristicOutOfRange(1))
        );
        assert_eq!(
            CoefficientRing::prime_field(1 << 31),
            Err(CoeffError::CharacteristicOutOfRange(1 << 31))
        );
        // largest prime below 2^31
        assert!(CoefficientRing::prime_field(2147483647).is_ok());
    }

    #[test]
    fn residues_are_canonical() {
        let f5 = CoefficientRing::PrimeField(5);
        assert_eq!(f5.from_i64(-3), f5.from_i64(2));
        assert_eq!(f5.from_i64(7).add(&f5.from_i64(3)), f5.zero());
    }

    #[test]
    fn fraction_literals() {
        let qq = CoefficientRing::Rationals;
        let half = qq.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half.add(&half), qq.one());

        let zz = CoefficientRing::Integers;
        assert_eq!(zz.from_fraction(&BigInt::from(6), &BigInt::from(3)).unwrap(), zz.from_i64(2));
        assert!(zz.from_fraction(&BigInt::from(1), &BigInt::from(2)).is_err());

        let f5 = CoefficientRing::PrimeField(5);
        // 1/2 = 3 mod 5
        assert_eq!(
            f5.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            f5.from_i64(3)
        );
        assert!(f5.from_fraction(&BigInt::from(1), &BigInt::from(5)).is_err());
    }

    #[test]
    fn canonical_maps() {
        let three = CoefficientRing::Integers.from_i64(3);
        assert!(three.map_into(CoefficientRing::PrimeField(3)).unwrap().is_zero());
        assert_eq!(
            three.map_into(CoefficientRing::Rationals).unwrap(),
            CoefficientRing::Rationals.from_i64(3)
        );

        let half = CoefficientRing::Rationals
            .from_fraction(&BigInt::from(1), &BigInt::from(2))
            .unwrap();
        assert!(half.map_into(CoefficientRing::PrimeField(2)).is_err());
        assert_eq!(
            half.map_into(CoefficientRing::PrimeField(3)).unwrap(),
            CoefficientRing::PrimeField(3).from_i64(2)
        );

        // no map out of a prime field
        let e = CoefficientRing::PrimeField(3).from_i64(1);
        assert!(e.map_into(CoefficientRing::Integers).is_err());
    }

    #[test]
    fn field_inverse() {
        let f7 = CoefficientRing::PrimeField(7);
        for v in 1..7 {
            let c = f7.from_i64(v);
            assert!(c.mul(&c.inv().unwrap()).is_one());
        }
        assert!(CoefficientRing::Integers.from_i64(2).inv().is_err());
    }
}
