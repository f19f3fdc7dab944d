//! Finite rings for brute-force enumeration: the prime field F_p and the
//! truncated polynomial ring F_p[t]/(t^{m+1}).
//!
//! Elements are coefficient vectors of u64 residues (length 1 for the prime
//! field), indexed so that element #n of F_p[t]/(t^{m+1}) has digits
//! n = c_0 + c_1 p + ... + c_m p^m with c_0 the constant term. This gives a
//! total, duplicate-free, deterministic enumeration.

use crate::coeff::{is_prime, pow_mod, Coeff, CoefficientRing};
use crate::series::Carrier;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiniteRingError {
    #[error("{0} is not prime; only prime fields are supported")]
    NotPrime(u64),
}

/// F_p, or F_p[t]/(t^{m+1}) for truncation order m >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteRing {
    Prime { p: u64 },
    TruncatedPoly { p: u64, order: u32 },
}

impl FiniteRing {
    pub fn prime(p: u64) -> Result<Self, FiniteRingError> {
        if !is_prime(p) {
            return Err(FiniteRingError::NotPrime(p));
        }
        Ok(FiniteRing::Prime { p })
    }

    pub fn truncated(p: u64, order: u32) -> Result<Self, FiniteRingError> {
        if !is_prime(p) {
            return Err(FiniteRingError::NotPrime(p));
        }
        Ok(FiniteRing::TruncatedPoly { p, order })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FiniteRing::Prime { p } | FiniteRing::TruncatedPoly { p, .. } => *p,
        }
    }

    /// Number of coefficient slots per element.
    pub fn slots(&self) -> u32 {
        match self {
            FiniteRing::Prime { .. } => 1,
            FiniteRing::TruncatedPoly { order, .. } => order + 1,
        }
    }

    /// Total number of elements: p^slots.
    pub fn size(&self) -> u128 {
        let p = self.characteristic() as u128;
        (0..self.slots()).fold(1u128, |acc, _| acc * p)
    }

    pub fn zero(&self) -> FiniteElem {
        FiniteElem { p: self.characteristic(), digits: vec![0; self.slots() as usize] }
    }

    pub fn one(&self) -> FiniteElem {
        let mut e = self.zero();
        e.digits[0] = 1 % e.p;
        e
    }

    /// The element with the given enumeration index (0 <= n < size).
    pub fn element(&self, mut n: u128) -> FiniteElem {
        let p = self.characteristic();
        let mut digits = Vec::with_capacity(self.slots() as usize);
        for _ in 0..self.slots() {
            digits.push((n % p as u128) as u64);
            n /= p as u128;
        }
        FiniteElem { p, digits }
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FiniteElem> + '_ {
        (0..self.size()).map(move |n| self.element(n))
    }

    /// Embeds a prime-field residue as a constant of this ring.
    pub fn from_residue(&self, value: u64) -> FiniteElem {
        let mut e = self.zero();
        e.digits[0] = value % e.p;
        e
    }

    /// Builds an element from explicit digits (one per slot).
    pub fn from_digits(&self, digits: Vec<u64>) -> FiniteElem {
        assert_eq!(digits.len(), self.slots() as usize);
        let p = self.characteristic();
        FiniteElem { p, digits: digits.into_iter().map(|d| d % p).collect() }
    }

    /// Interprets an exact coefficient in this ring via the canonical map.
    pub fn from_coeff(&self, c: &Coeff) -> Result<FiniteElem, crate::coeff::CoeffError> {
        let mapped = c.map_into(CoefficientRing::PrimeField(self.characteristic()))?;
        match mapped {
            Coeff::Prime { value, .. } => Ok(self.from_residue(value)),
            _ => unreachable!("map_into a prime field returns a residue"),
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteRing::Prime { p } => write!(f, "F{p}"),
            FiniteRing::TruncatedPoly { p, order } => {
                write!(f, "F{p}[t]/(t^{})", order + 1)
            }
        }
    }
}

/// An element of a [`FiniteRing`]: residue digits c_0..c_m, slot j holding
/// the t^j coefficient. Multiplication is convolution truncated to the slot
/// count, which for a single slot is plain multiplication mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteElem {
    p: u64,
    digits: Vec<u64>,
}

impl FiniteElem {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn constant_digit(&self) -> u64 {
        self.digits[0]
    }

    /// The enumeration index of this element in its ring.
    pub fn index(&self) -> u128 {
        let mut n: u128 = 0;
        for &d in self.digits.iter().rev() {
            n = n * self.p as u128 + d as u128;
        }
        n
    }

    pub fn pow(&self, exp: u32) -> FiniteElem {
        if self.digits.len() == 1 {
            return FiniteElem {
                p: self.p,
                digits: vec![pow_mod(self.digits[0], exp as u64, self.p)],
            };
        }
        let mut acc = {
            let mut one = FiniteElem { p: self.p, digits: vec![0; self.digits.len()] };
            one.digits[0] = 1 % self.p;
            one
        };
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Truncates to a smaller slot count (dropping high t-powers).
    pub fn truncate(&self, slots: u32) -> FiniteElem {
        assert!(slots as usize <= self.digits.len());
        FiniteElem { p: self.p, digits: self.digits[..slots as usize].to_vec() }
    }
}

impl Carrier for FiniteElem {
    fn zero_like(&self) -> Self {
        FiniteElem { p: self.p, digits: vec![0; self.digits.len()] }
    }

    fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        assert_eq!(self.digits.len(), rhs.digits.len(), "mixed slot counts");
        FiniteElem {
            p: self.p,
            digits: self
                .digits
                .iter()
                .zip(&rhs.digits)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        assert_eq!(self.digits.len(), rhs.digits.len(), "mixed slot counts");
        let n = self.digits.len();
        let mut digits = vec![0u64; n];
        for (i, &a) in self.digits.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.digits.iter().take(n - i).enumerate() {
                if b == 0 {
                    continue;
                }
                digits[i + j] = (digits[i + j] + a * b) % self.p;
            }
        }
        FiniteElem { p: self.p, digits }
    }
}

impl FiniteElem {
    pub fn neg(&self) -> FiniteElem {
        FiniteElem {
            p: self.p,
            digits: self
                .digits
                .iter()
                .map(|&d| if d == 0 { 0 } else { self.p - d })
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FiniteElem) -> FiniteElem {
        self.add(&rhs.neg())
    }
}

impl fmt::Display for FiniteElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.len() == 1 {
            return write!(f, "{}", self.digits[0]);
        }
        let mut first = true;
        for (j, &d) in self.digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{d}")?,
                1 => {
                    if d == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "{d}*t")?
                    }
                }
                _ => {
                    if d == 1 {
                        write!(f, "t^{j}")?
                    } else {
                        write!(f, "{d}*t^{j}")?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
