//! Higher derivations given by finite data, validated through the arc
//! criterion: the tuple (D_0,...,D_m) on the generators is a higher
//! derivation exactly when x -> D_0(x) + D_1(x)t + ... + D_m(x)t^m extends to
//! a ring homomorphism into R[t]/(t^{m+1}), i.e. when every relation vanishes
//! under that substitution. This is equivalent to checking the original
//! axioms on all element pairs, and far cheaper.

use crate::coeff::CoeffError;
use crate::finite::{FiniteElem, FiniteRing};
use crate::oracle::HomPoint;
use crate::presentation::{JetError, Presentation};
use crate::series::{Carrier, TruncatedSeries};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("derivations on presentations with constants are not supported")]
    ConstantsUnsupported,
    #[error("generator `{name}` has {found} component values, expected {expected}")]
    ComponentCount { name: String, found: usize, expected: usize },
    #[error("no components given for generator `{0}`")]
    MissingComponents(String),
    #[error("components given for `{0}`, which is not a generator")]
    ExtraComponents(String),
    #[error("component of `{name}` is not an element of {ring}")]
    ComponentOutsideTarget { name: String, ring: FiniteRing },
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Outcome of the arc-criterion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationVerdict {
    Accepted,
    Rejected {
        relation: String,
        t_power: u32,
        reason: String,
    },
}

impl DerivationVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self, DerivationVerdict::Accepted)
    }
}

/// Finite data (D_0,...,D_m) on the generators of a presented algebra, with
/// values in a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDerivation {
    order: u32,
    source: Presentation,
    target: FiniteRing,
    components: BTreeMap<String, Vec<FiniteElem>>,
}

impl HigherDerivation {
    pub fn new(
        source: Presentation,
        target: FiniteRing,
        order: u32,
        components: BTreeMap<String, Vec<FiniteElem>>,
    ) -> Result<Self, DerivationError> {
        if source.jet_order() != 0 {
            return Err(DerivationError::Jet(JetError::NotABasePresentation(
                source.jet_order(),
            )));
        }
        if !source.constants().is_empty() {
            return Err(DerivationError::ConstantsUnsupported);
        }
        for g in source.generators() {
            let vals = components
                .get(g.base())
                .ok_or_else(|| DerivationError::MissingComponents(g.base().to_string()))?;
            if vals.len() != order as usize + 1 {
                return Err(DerivationError::ComponentCount {
                    name: g.base().to_string(),
                    found: vals.len(),
                    expected: order as usize + 1,
                });
            }
            for v in vals {
                if v.characteristic() != target.characteristic()
                    || v.digits().len() != target.slots() as usize
                {
                    return Err(DerivationError::ComponentOutsideTarget {
                        name: g.base().to_string(),
                        ring: target,
                    });
                }
            }
        }
        for name in components.keys() {
            if !source.generators().iter().any(|g| g.base() == name) {
                return Err(DerivationError::ExtraComponents(name.clone()));
            }
        }
        Ok(HigherDerivation { order, source, target, components })
    }

    /// The derivation (D_0, 0, ..., 0) over a point D_0 of the source.
    pub fn constant_over_point(
        source: Presentation,
        target: FiniteRing,
        order: u32,
        point: &HomPoint,
    ) -> Result<Self, DerivationError> {
        let components = source
            .generators()
            .iter()
            .zip(point.values())
            .map(|(g, v)| {
                let mut vals = vec![target.zero(); order as usize + 1];
                vals[0] = v.clone();
                (g.base().to_string(), vals)
            })
            .collect();
        HigherDerivation::new(source, target, order, components)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> FiniteRing {
        self.target
    }

    pub fn components(&self) -> &BTreeMap<String, Vec<FiniteElem>> {
        &self.components
    }

    /// The arc of each generator: D_0(x) + D_1(x)t + ... + D_m(x)t^m, as a
    /// truncated series over the target.
    pub fn to_arc(&self) -> Vec<TruncatedSeries<FiniteElem>> {
        self.source
            .generators()
            .iter()
            .map(|g| TruncatedSeries::new(self.components[g.base()].clone()))
            .collect()
    }

    /// Reads a generator-indexed arc back into derivation data.
    pub fn from_arc(
        source: Presentation,
        target: FiniteRing,
        order: u32,
        arc: &[TruncatedSeries<FiniteElem>],
    ) -> Result<Self, DerivationError> {
        let components = source
            .generators()
            .iter()
            .zip(arc)
            .map(|(g, s)| (g.base().to_string(), s.coefficients().to_vec()))
            .collect();
        HigherDerivation::new(source, target, order, components)
    }

    /// Accepts iff the arc built from the components is a ring homomorphism:
    /// every relation vanishes in target[t]/(t^{m+1}). A failure at t^0 means
    /// D_0 is not a homomorphism; at t^k it names the violated higher axiom.
    pub fn check(&self) -> Result<DerivationVerdict, DerivationError> {
        let arcs: BTreeMap<&str, TruncatedSeries<FiniteElem>> = self
            .source
            .generators()
            .iter()
            .map(|g| (g.base(), TruncatedSeries::new(self.components[g.base()].clone())))
            .collect();
        let zero_slot = self.target.zero();
        for relation in self.source.relations() {
            let mut acc = TruncatedSeries::constant(zero_slot.clone(), self.order);
            for (mono, coeff) in relation.terms() {
                let embedded = self.target.from_coeff(coeff)?;
                let mut term = TruncatedSeries::constant(embedded, self.order);
                for (v, e) in mono.iter() {
                    term = term
                        .mul(&arcs[v.base()].pow(e))
                        .expect("orders agree");
                }
                acc = acc.add(&term).expect("orders agree");
            }
            if let Some(k) = (0..=self.order).find(|&k| !acc.coefficient(k).is_zero()) {
                let reason = if k == 0 {
                    "D_0 is not a ring homomorphism on this relation".to_string()
                } else {
                    format!("the order-{k} component violates the higher-derivation axioms")
                };
                return Ok(DerivationVerdict::Rejected {
                    relation: relation.to_string(),
                    t_power: k,
                    reason,
                });
            }
        }
        Ok(DerivationVerdict::Accepted)
    }

    /// Converts to an arc and back; exact recovery is the round-trip law.
    pub fn roundtrip_identical(&self) -> Result<bool, DerivationError> {
        let arc = self.to_arc();
        let back =
            HigherDerivation::from_arc(self.source.clone(), self.target, self.order, &arc)?;
        Ok(back == *self)
    }
}

/// Interprets an enumerated arc (a point over F_q[t]/(t^{m+1})) as derivation
/// data with values in F_q.
pub fn derivation_from_arc_point(
    source: &Presentation,
    q: u64,
    m: u32,
    arc: &HomPoint,
) -> Result<HigherDerivation, DerivationError> {
    let prime = FiniteRing::prime(q).expect("characteristic validated upstream");
    let components = source
        .generators()
        .iter()
        .zip(arc.values())
        .map(|(g, v)| {
            let vals = v.digits().iter().map(|&d| prime.from_residue(d)).collect();
            (g.base().to_string(), vals)
        })
        .collect();
    HigherDerivation::new(source.clone(), prime, m, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::oracle::{enumerate_arcs, enumerate_homs, DEFAULT_BUDGET};
    use crate::parse::parse_poly;

    fn nilpotent_line() -> Presentation {
        let ring = CoefficientRing::prime_field(2).unwrap();
        let free = Presentation::free(ring, &["x"]);
        let x2 = parse_poly("x^2", &free.scope(), ring).unwrap();
        Presentation::new(ring, Vec::new(), free.generators().to_vec(), vec![x2], 0).unwrap()
    }

    #[test]
    fn tangent_vector_on_the_nilpotent_line() {
        // D_0(x) = 0, D_1(x) = 1: the arc x -> t satisfies t^2 = 0
        let target = FiniteRing::prime(2).unwrap();
        let components =
            [("x".to_string(), vec![target.zero(), target.one()])].into();
        let d = HigherDerivation::new(nilpotent_line(), target, 1, components).unwrap();
        assert_eq!(d.check().unwrap(), DerivationVerdict::Accepted);
        assert!(d.roundtrip_identical().unwrap());
    }

    #[test]
    fn non_homomorphism_rejected_at_t0() {
        // D_0(x) = 1 is not a homomorphism: 1^2 != 0
        let target = FiniteRing::prime(2).unwrap();
        let components =
            [("x".to_string(), vec![target.one(), target.zero()])].into();
        let d = HigherDerivation::new(nilpotent_line(), target, 1, components).unwrap();
        match d.check().unwrap() {
            DerivationVerdict::Rejected { t_power, .. } => assert_eq!(t_power, 0),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn constant_derivations_over_points_accepted() {
        let zz = CoefficientRing::Integers;
        let free = Presentation::free(zz, &["x", "y"]);
        let cusp_rel = parse_poly("y^2 - x^3", &free.scope(), zz).unwrap();
        let cusp =
            Presentation::new(zz, Vec::new(), free.generators().to_vec(), vec![cusp_rel], 0)
                .unwrap();
        let target = FiniteRing::prime(3).unwrap();
        let mapped = cusp.map_coefficients(CoefficientRing::PrimeField(3)).unwrap();
        let pts = enumerate_homs(&mapped, target, DEFAULT_BUDGET).unwrap();
        for pt in &pts.points {
            let d =
                HigherDerivation::constant_over_point(cusp.clone(), target, 2, pt).unwrap();
            assert!(d.check().unwrap().accepted());
        }
    }

    #[test]
    fn arcs_and_derivations_correspond_on_the_free_line() {
        // all 9 arcs of F_3[x] into F_3[t]/(t^2) give 9 accepted derivations,
        // and the translation round-trips exactly
        let ring = CoefficientRing::prime_field(3).unwrap();
        let line = Presentation::free(ring, &["x"]);
        let arcs = enumerate_arcs(&line, 3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(arcs.count(), 9);
        let mut derivations = Vec::new();
        for arc in &arcs.points {
            let d = derivation_from_arc_point(&line, 3, 1, arc).unwrap();
            assert!(d.check().unwrap().accepted());
            assert!(d.roundtrip_identical().unwrap());
            derivations.push(d);
        }
        derivations.dedup();
        assert_eq!(derivations.len(), 9);
    }
}
