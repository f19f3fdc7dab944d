//! The universal prolongation operator d_k.
//!
//! d_k f is computed as the t^k coefficient of f evaluated at
//! x -> x + d1x*t + ... + dmx*t^m for each active variable (constants are
//! left alone), with the arithmetic done in a truncated series ring over
//! polynomials. The divided Leibniz rule then holds by construction and is
//! re-checked as a property rather than assumed.

use crate::coeff::CoefficientRing;
use crate::monomial::JetVariable;
use crate::poly::Polynomial;
use crate::series::TruncatedSeries;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProlongError {
    #[error("prolongation index {index} exceeds the jet order {order}")]
    IndexOutOfRange { index: u32, order: u32 },
    #[error("polynomial mentions the order-{} variable {var}; only order-0 inputs can be prolonged", var.order())]
    HigherOrderVariable { var: JetVariable },
    #[error("variable {var} is neither active nor a declared constant")]
    UnknownVariable { var: JetVariable },
    #[error("active variables and constants overlap on `{0}`")]
    ActiveConstantOverlap(String),
}

/// Which symbols are differentiated and which are annihilated by d_k, k >= 1.
#[derive(Debug, Clone)]
pub struct ProlongationContext {
    jet_order: u32,
    active: BTreeSet<String>,
    constants: BTreeSet<String>,
}

impl ProlongationContext {
    pub fn new(
        jet_order: u32,
        active: impl IntoIterator<Item = String>,
        constants: impl IntoIterator<Item = String>,
    ) -> Result<Self, ProlongError> {
        let active: BTreeSet<String> = active.into_iter().collect();
        let constants: BTreeSet<String> = constants.into_iter().collect();
        if let Some(shared) = active.intersection(&constants).next() {
            return Err(ProlongError::ActiveConstantOverlap(shared.clone()));
        }
        Ok(ProlongationContext { jet_order, active, constants })
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    pub fn active(&self) -> impl Iterator<Item = &String> {
        self.active.iter()
    }

    pub fn constants(&self) -> impl Iterator<Item = &String> {
        self.constants.iter()
    }

    fn check_input(&self, f: &Polynomial, k: u32) -> Result<(), ProlongError> {
        if k > self.jet_order {
            return Err(ProlongError::IndexOutOfRange { index: k, order: self.jet_order });
        }
        for v in f.variables() {
            if v.order() > 0 {
                return Err(ProlongError::HigherOrderVariable { var: v });
            }
            if !self.active.contains(v.base()) && !self.constants.contains(v.base()) {
                return Err(ProlongError::UnknownVariable { var: v });
            }
        }
        Ok(())
    }

    /// The universal arc of an active variable: x + d1x*t + ... + dmx*t^m.
    fn universal_arc(&self, ring: CoefficientRing, base: &str) -> TruncatedSeries<Polynomial> {
        TruncatedSeries::new(
            (0..=self.jet_order)
                .map(|j| Polynomial::variable(ring, JetVariable::new(base, j)))
                .collect(),
        )
    }

    /// Evaluates `f` in the truncated series ring, substituting the universal
    /// arc for active variables and constant series for everything else.
    pub fn arc_expansion(&self, f: &Polynomial) -> Result<TruncatedSeries<Polynomial>, ProlongError> {
        self.check_input(f, 0)?;
        let ring = f.ring();
        let mut acc = TruncatedSeries::constant(Polynomial::zero(ring), self.jet_order);
        for (m, c) in f.terms() {
            let mut term =
                TruncatedSeries::constant(Polynomial::constant(ring, c.clone()), self.jet_order);
            for (v, e) in m.iter() {
                let factor = if self.active.contains(v.base()) {
                    self.universal_arc(ring, v.base()).pow(e)
                } else {
                    TruncatedSeries::constant(
                        Polynomial::variable(ring, v.clone()),
                        self.jet_order,
                    )
                    .pow(e)
                };
                term = term.mul(&factor).expect("orders agree");
            }
            acc = acc.add(&term).expect("orders agree");
        }
        Ok(acc)
    }
}

/// Computes d_k f: the t^k coefficient of the universal arc expansion of `f`.
pub fn prolong(f: &Polynomial, k: u32, ctx: &ProlongationContext) -> Result<Polynomial, ProlongError> {
    ctx.check_input(f, k)?;
    Ok(ctx.arc_expansion(f)?.coefficient(k).clone())
}

/// Outcome of a Leibniz-rule check; `difference` is zero exactly when the
/// rule holds.
#[derive(Debug, Clone)]
pub struct LeibnizVerdict {
    pub holds: bool,
    pub difference: Polynomial,
}

/// Checks d_k(f*g) = sum_{i+j=k} d_i f * d_j g.
pub fn leibniz_check(
    f: &Polynomial,
    g: &Polynomial,
    k: u32,
    ctx: &ProlongationContext,
) -> Result<LeibnizVerdict, ProlongError> {
    ctx.check_input(f, k)?;
    ctx.check_input(g, k)?;
    let product = prolong(&(f * g), k, ctx)?;
    let mut convolution = Polynomial::zero(f.ring());
    for i in 0..=k {
        let a = prolong(f, i, ctx)?;
        let b = prolong(g, k - i, ctx)?;
        convolution = &convolution + &(&a * &b);
    }
    let difference = &product - &convolution;
    Ok(LeibnizVerdict { holds: difference.is_zero(), difference })
}
