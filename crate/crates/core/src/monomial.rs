//! Jet-indexed variables and sparse monomials.
//!
//! A jet variable `d_k x` is a base name plus a non-negative order `k`; its
//! weight equals its order, and order 0 is the base variable itself. The
//! canonical storage order on monomials compares weighted degree first and
//! breaks ties reverse-lexicographically with respect to the canonical
//! variable enumeration (base name, then order, ascending).

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A variable `d_k x`, identified by base name and jet order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JetVariable {
    base: String,
    order: u32,
}

impl JetVariable {
    pub fn new(base: impl Into<String>, order: u32) -> Self {
        JetVariable { base: base.into(), order }
    }

    /// The base variable itself (order 0).
    pub fn base_var(base: impl Into<String>) -> Self {
        JetVariable::new(base, 0)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Weight in the jet grading; always equal to the order.
    pub fn weight(&self) -> u64 {
        self.order as u64
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "d{}{}", self.order, self.base)
        }
    }
}

/// A sparse monomial: finite map from jet variables to positive exponents.
///
/// The `Ord` impl is the canonical storage order (weighted degree, then
/// reverse lexicographic); it is total and deterministic, which is all that
/// canonical printing needs. Groebner computations use their own orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exponents: BTreeMap<JetVariable, u32>,
}

impl Monomial {
    /// The unit monomial (empty exponent map).
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: JetVariable) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(v, 1);
        Monomial { exponents }
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (JetVariable, u32)>) -> Self {
        let mut exponents = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *exponents.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exponents }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, v: &JetVariable) -> u32 {
        self.exponents.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&JetVariable, u32)> {
        self.exponents.iter().map(|(v, e)| (v, *e))
    }

    pub fn variables(&self) -> impl Iterator<Item = &JetVariable> {
        self.exponents.keys()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.values().map(|&e| e as u64).sum()
    }

    /// Weighted degree: sum of exponent times variable weight.
    pub fn weighted_degree(&self) -> u64 {
        self.exponents.iter().map(|(v, &e)| v.weight() * e as u64).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (v, e) in &rhs.exponents {
            *exponents.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exponents }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exponents: self.exponents.iter().map(|(v, e)| (v.clone(), e * n)).collect(),
        }
    }

    /// Component-wise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// Quotient monomial; caller must ensure divisibility.
    pub fn div(&self, rhs: &Monomial) -> Monomial {
        debug_assert!(rhs.divides(self));
        let mut exponents = BTreeMap::new();
        for (v, e) in &self.exponents {
            let q = e - rhs.exponent(v);
            if q > 0 {
                exponents.insert(v.clone(), q);
            }
        }
        Monomial { exponents }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (v, e) in &rhs.exponents {
            let slot = exponents.entry(v.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Monomial { exponents }
    }

    /// True when lcm(self, rhs) = self * rhs (no common variable).
    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.exponents.keys().all(|v| rhs.exponent(v) == 0)
    }

    /// Reverse-lexicographic tie-break: the rightmost (largest under the
    /// canonical variable enumeration) differing exponent decides, smaller
    /// exponent winning.
    fn cmp_revlex(&self, other: &Monomial) -> Ordering {
        let mut a = self.exponents.iter().rev().peekable();
        let mut b = other.exponents.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `va` comes later in the enumeration: only self has it.
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return if ea < eb { Ordering::Greater } else { Ordering::Less };
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weighted_degree()
            .cmp(&other.weighted_degree())
            .then_with(|| self.cmp_revlex(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str, order: u32) -> JetVariable {
        JetVariable::new(name, order)
    }

    #[test]
    fn variable_enumeration() {
        // base name lexicographic, then order ascending
        let mut vars = vec![v("y", 0), v("x", 1), v("x", 0), v("y", 1)];
        vars.sort();
        assert_eq!(vars, vec![v("x", 0), v("x", 1), v("y", 0), v("y", 1)]);
    }

    #[test]
    fn weighted_degree() {
        // x^2 * d1x has weighted degree 1
        let m = Monomial::from_exponents([(v("x", 0), 2), (v("x", 1), 1)]);
        assert_eq!(m.weighted_degree(), 1);
        assert_eq!(m.total_degree(), 3);
    }

    #[test]
    fn storage_order_prefers_weight() {
        let d2x = Monomial::var(v("x", 2));
        let d1x_sq = Monomial::var(v("x", 1)).pow(2);
        let x = Monomial::var(v("x", 0));
        assert!(d2x.weighted_degree() == d1x_sq.weighted_degree());
        assert!(x < d2x);
        // equal weight: rightmost difference, smaller exponent is larger;
        // d1x^2 differs from d2x at d2x (later variable), where it has 0
        assert!(d1x_sq > d2x);
    }

    #[test]
    fn revlex_tiebreak_on_weight_zero() {
        // all weights zero: y^2 vs x^3 differ at y, where x^3 has 0 < 2
        let y2 = Monomial::var(v("y", 0)).pow(2);
        let x3 = Monomial::var(v("x", 0)).pow(3);
        assert!(x3 > y2);
    }

    #[test]
    fn mul_div_lcm() {
        let a = Monomial::from_exponents([(v("x", 0), 2), (v("y", 0), 1)]);
        let b = Monomial::from_exponents([(v("x", 0), 1)]);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b), Monomial::from_exponents([(v("x", 0), 1), (v("y", 0), 1)]));
        assert_eq!(b.lcm(&a), a);
        assert!(!a.coprime(&b));
        assert!(Monomial::var(v("x", 0)).coprime(&Monomial::var(v("y", 0))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Monomial::one().to_string(), "1");
        let m = Monomial::from_exponents([(v("x", 0), 2), (v("x", 1), 1)]);
        assert_eq!(m.to_string(), "x^2*d1x");
    }
}
