//! Arithmetic in R[t]/(t^{m+1}) over a generic coefficient carrier.
//!
//! The same code serves symbolic prolongation (polynomial coefficients) and
//! truncated-arc evaluation (finite-ring coefficients).

use crate::coeff::Coeff;
use crate::poly::Polynomial;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders do not match: {0} vs {1}")]
    OrderMismatch(u32, u32),
}

/// Ring operations a series coefficient must support. `zero_like` supplies a
/// zero of the same ring context as `self`.
pub trait Carrier: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl Carrier for Coeff {
    fn zero_like(&self) -> Self {
        match self {
            Coeff::Rational(_) => Coeff::Rational(num::rational::BigRational::from_integer(0.into())),
            Coeff::Integer(_) => Coeff::Integer(0.into()),
            Coeff::Prime { modulus, .. } => Coeff::Prime { value: 0, modulus: *modulus },
        }
    }

    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        Coeff::add(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Coeff::mul(self, rhs)
    }
}

impl Carrier for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.ring())
    }

    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// An element of R[t]/(t^{m+1}): exactly m+1 coefficient slots, slot j holding
/// the t^j coefficient. Equality is slot-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<C: Carrier> {
    coeffs: Vec<C>,
}

impl<C: Carrier> TruncatedSeries<C> {
    /// Builds a series from its coefficient list; the order is the length
    /// minus one.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the t^0 slot");
        TruncatedSeries { coeffs }
    }

    /// The constant series `c` at truncation order `order`.
    pub fn constant(c: C, order: u32) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![c];
        coeffs.resize(order as usize + 1, zero);
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coefficient(&self, j: u32) -> &C {
        &self.coeffs[j as usize]
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.coeffs.len() != rhs.coeffs.len() {
            Err(SeriesError::OrderMismatch(self.order(), rhs.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Convolution product truncated at t^{m+1}.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        let n = self.coeffs.len();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = {
            // build 1 + 0t + ... without requiring a one() on the carrier:
            // repeated multiplication starting from self when exp > 0
            match exp {
                0 => panic!("series pow 0 needs a multiplicative unit; callers avoid it"),
                _ => self.clone(),
            }
        };
        for _ in 1..exp {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// The substitution t -> z*t: slot j becomes z^j * a_j.
    pub fn scale_t(&self, z: &C) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut z_pow: Option<C> = None;
        for a in &self.coeffs {
            match &z_pow {
                None => {
                    out.push(a.clone());
                    z_pow = Some(z.clone());
                }
                Some(p) => {
                    out.push(p.mul(a));
                    z_pow = Some(p.mul(z));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Evaluation at t = 0: the constant slot.
    pub fn eval_at_zero(&self) -> C {
        self.coeffs[0].clone()
    }

    /// Restricts to a lower truncation order by discarding high slots.
    pub fn truncate(&self, order: u32) -> Self {
        assert!(order <= self.order());
        TruncatedSeries { coeffs: self.coeffs[..=order as usize].to_vec() }
    }
}

impl<C: Carrier + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::monomial::JetVariable;

    fn qq() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    fn qsec(vals: &[i64]) -> TruncatedSeries<Coeff> {
        TruncatedSeries::new(vals.iter().map(|&v| qq().from_i64(v)).collect())
    }

    #[test]
    fn truncating_product() {
        // (1 + t)(1 - t) = 1 at order 1, 1 - t^2 at order 2
        let a1 = qsec(&[1, 1]);
        let b1 = qsec(&[1, -1]);
        assert_eq!(a1.mul(&b1).unwrap(), qsec(&[1, 0]));

        let a2 = qsec(&[1, 1, 0]);
        let b2 = qsec(&[1, -1, 0]);
        assert_eq!(a2.mul(&b2).unwrap(), qsec(&[1, 0, -1]));
    }

    #[test]
    fn order_mismatch() {
        assert_eq!(
            qsec(&[1, 1]).mul(&qsec(&[1, 1, 1])).unwrap_err(),
            SeriesError::OrderMismatch(1, 2)
        );
    }

    #[test]
    fn polynomial_carrier_square_matches_leibniz() {
        // (x + d1x t + d2x t^2)^2 = x^2 + 2x d1x t + (d1x^2 + 2x d2x) t^2
        let var = |k| Polynomial::variable(qq(), JetVariable::new("x", k));
        let s = TruncatedSeries::new(vec![var(0), var(1), var(2)]);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coefficient(0), &var(0).pow(2));
        assert_eq!(sq.coefficient(1), &(&var(0) * &var(1)).scale(&qq().from_i64(2)));
        let expected2 = &var(1).pow(2) + &(&var(0) * &var(2)).scale(&qq().from_i64(2));
        assert_eq!(sq.coefficient(2), &expected2);
    }

    #[test]
    fn scale_t_examples() {
        let a = qsec(&[1, 2, 3]);
        assert_eq!(a.scale_t(&qq().one()), a);
        assert_eq!(a.scale_t(&qq().zero()), qsec(&[1, 0, 0]));

        // 1 + t + t^2 under t -> 2t over F_5 gives 1 + 2t + 4t^2
        let f5 = CoefficientRing::prime_field(5).unwrap();
        let b = TruncatedSeries::new(vec![f5.one(), f5.one(), f5.one()]);
        let scaled = b.scale_t(&f5.from_i64(2));
        assert_eq!(
            scaled,
            TruncatedSeries::new(vec![f5.one(), f5.from_i64(2), f5.from_i64(4)])
        );
    }

    #[test]
    fn eval_at_zero_is_constant_slot() {
        assert_eq!(qsec(&[1, 1]).eval_at_zero(), qq().one());
        assert_eq!(qsec(&[0, 0]).eval_at_zero(), qq().zero());
    }

    #[test]
    fn scale_t_composes() {
        let a = qsec(&[3, 1, 4]);
        let z = qq().from_i64(2);
        let w = qq().from_i64(5);
        let zw = z.mul(&w);
        assert_eq!(a.scale_t(&z).scale_t(&w), a.scale_t(&zw));
    }
}
