//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! Terms are stored in a map keyed by the canonical monomial order, with no
//! zero coefficients, so two polynomials are equal iff their term maps are.
//! Binary operator impls panic on mismatched coefficient rings; the `try_*`
//! variants report the mismatch as an error instead.

use crate::coeff::{Coeff, CoeffError, CoefficientRing};
use crate::monomial::{JetVariable, Monomial};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient rings do not match: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Reports whether a polynomial is weighted-homogeneous and of which weight.
///
/// The zero polynomial is homogeneous of every weight, reported as a `None`
/// weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homogeneity {
    pub is_homogeneous: bool,
    pub weight: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: CoefficientRing) -> Self {
        Polynomial { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoefficientRing) -> Self {
        Polynomial::constant(ring, ring.one())
    }

    pub fn constant(ring: CoefficientRing, c: Coeff) -> Self {
        debug_assert!(ring.contains(&c));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { ring, terms }
    }

    pub fn from_i64(ring: CoefficientRing, n: i64) -> Self {
        Polynomial::constant(ring, ring.from_i64(n))
    }

    pub fn variable(ring: CoefficientRing, v: JetVariable) -> Self {
        Polynomial::from_terms(ring, [(Monomial::var(v), ring.one())])
    }

    /// Builds a polynomial from term pairs, combining duplicates and dropping
    /// zero coefficients.
    pub fn from_terms(
        ring: CoefficientRing,
        pairs: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut terms: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in pairs {
            debug_assert!(ring.contains(&c), "coefficient outside {ring}");
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// The constant term.
    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one())
    }

    /// All variables that occur, in canonical enumeration order.
    pub fn variables(&self) -> Vec<JetVariable> {
        let mut out: Vec<JetVariable> = Vec::new();
        for m in self.terms.keys() {
            for v in m.variables() {
                out.push(v.clone());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn max_total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    fn check_ring(&self, rhs: &Polynomial) -> Result<(), PolyError> {
        if self.ring != rhs.ring {
            Err(PolyError::RingMismatch(self.ring, rhs.ring))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(rhs)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(Polynomial { ring: self.ring, terms })
    }

    pub fn try_sub(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&rhs.negate())
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(rhs)?;
        let mut terms: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !c.is_zero() {
                            e.insert(c);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&c);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(Polynomial { ring: self.ring, terms })
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter_map(|(mm, cc)| {
                    let prod = cc.mul(c);
                    (!prod.is_zero()).then(|| (mm.mul(m), prod))
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    /// Substitutes polynomials for variables; variables without an image map
    /// to themselves. Ring-homomorphic by construction.
    pub fn substitute(
        &self,
        images: &BTreeMap<JetVariable, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for img in images.values() {
            self.check_ring(img)?;
        }
        let mut acc = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.ring, c.clone());
            for (v, e) in m.iter() {
                let factor = match images.get(v) {
                    Some(img) => img.pow(e),
                    None => Polynomial::from_terms(
                        self.ring,
                        [(Monomial::var(v.clone()).pow(e), self.ring.one())],
                    ),
                };
                term = term.try_mul(&factor)?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Weighted-homogeneity report; see [`Homogeneity`].
    pub fn weighted_degree_info(&self) -> Homogeneity {
        let mut weights = self.terms.keys().map(Monomial::weighted_degree);
        match weights.next() {
            None => Homogeneity { is_homogeneous: true, weight: None },
            Some(w) => {
                if weights.all(|u| u == w) {
                    Homogeneity { is_homogeneous: true, weight: Some(w) }
                } else {
                    Homogeneity { is_homogeneous: false, weight: None }
                }
            }
        }
    }

    /// Largest weighted degree among the terms.
    pub fn max_weighted_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::weighted_degree).max().unwrap_or(0)
    }

    /// Applies the canonical coefficient map into `target` term-wise; terms
    /// whose coefficient maps to zero are dropped.
    pub fn map_coefficients(&self, target: CoefficientRing) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mapped = c.map_into(target)?;
            if !mapped.is_zero() {
                terms.insert(m.clone(), mapped);
            }
        }
        Ok(Polynomial { ring: target, terms })
    }

    /// Evaluates at a full point given by coefficients (every variable of the
    /// polynomial must have a value).
    pub fn evaluate(&self, point: &BTreeMap<JetVariable, Coeff>) -> Result<Coeff, PolyError> {
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                let val = point
                    .get(v)
                    .unwrap_or_else(|| panic!("no value for variable {v}"));
                debug_assert!(self.ring.contains(val));
                term = term.mul(&val.pow(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

/// Canonical printing: terms in descending canonical order, explicit `*`
/// between factors, rationals as `p/q`, prime-field residues in `0..p`.
/// The zero polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, magnitude) = match c {
                Coeff::Rational(r) if r < &num::rational::BigRational::from_integer(0.into()) => {
                    ("-", c.neg())
                }
                Coeff::Integer(n) if n < &num::bigint::BigInt::from(0) => ("-", c.neg()),
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
