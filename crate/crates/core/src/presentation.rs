//! Finitely presented algebras and the jet constructions on them.
//!
//! A presentation holds a coefficient ring, constant symbols (the relative
//! base), an ordered list of jet variables, and relation polynomials. Jets,
//! relative jets, products, localizations, fibers, the first fundamental
//! sequence check, and the leading-form restriction all live here.

use crate::coeff::{Coeff, CoefficientRing};
use crate::groebner::{
    self, buchberger, ideal_equal, ideal_membership, normal_form, GroebnerError, MonomialOrder,
};
use crate::monomial::JetVariable;
use crate::parse::VariableScope;
use crate::poly::{PolyError, Polynomial};
use crate::prolong::{prolong, ProlongationContext, ProlongError};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JetError {
    #[error("duplicate generator {0}")]
    DuplicateGenerator(JetVariable),
    #[error("name `{0}` is declared both as a generator and as a constant")]
    GeneratorConstantClash(String),
    #[error("relation `{relation}` mentions undeclared variable {var}")]
    UndeclaredInRelation { relation: String, var: JetVariable },
    #[error("relation `{relation}` lives in {found}, presentation is over {expected}")]
    RelationRingMismatch { relation: String, found: CoefficientRing, expected: CoefficientRing },
    #[error("expected a presentation with jet order 0, found jet order {0}")]
    NotABasePresentation(u32),
    #[error("name collision on `{0}`")]
    NameCollision(String),
    #[error("point gives no value for generator `{0}`")]
    MissingPointValue(String),
    #[error("point mentions `{0}`, which is not an order-0 generator")]
    UnknownPointCoordinate(String),
    #[error("point value for `{name}` lies outside {ring}")]
    PointValueOutsideRing { name: String, ring: CoefficientRing },
    #[error("point violates base relation `{relation}` (evaluates to {value})")]
    PointOffVariety { relation: String, value: String },
    #[error(transparent)]
    Prolong(#[from] ProlongError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Generators-and-relations description of an algebra over a coefficient
/// ring. `jet_order` is 0 for a plain algebra and m for a jet presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ring: CoefficientRing,
    constants: Vec<String>,
    generators: Vec<JetVariable>,
    relations: Vec<Polynomial>,
    jet_order: u32,
}

impl Presentation {
    pub fn new(
        ring: CoefficientRing,
        constants: Vec<String>,
        generators: Vec<JetVariable>,
        relations: Vec<Polynomial>,
        jet_order: u32,
    ) -> Result<Self, JetError> {
        let mut constants = constants;
        constants.sort();
        constants.dedup();
        let mut seen: BTreeSet<&JetVariable> = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(JetError::DuplicateGenerator(g.clone()));
            }
            if constants.iter().any(|c| c == g.base()) {
                return Err(JetError::GeneratorConstantClash(g.base().to_string()));
            }
        }
        let declared: BTreeSet<JetVariable> = generators
            .iter()
            .cloned()
            .chain(constants.iter().map(JetVariable::base_var))
            .collect();
        // zero relations carry no information and are dropped, so that
        // base change commutes with jets relation-by-relation
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        for r in &relations {
            if r.ring() != ring {
                return Err(JetError::RelationRingMismatch {
                    relation: r.to_string(),
                    found: r.ring(),
                    expected: ring,
                });
            }
            for v in r.variables() {
                if !declared.contains(&v) {
                    return Err(JetError::UndeclaredInRelation {
                        relation: r.to_string(),
                        var: v,
                    });
                }
            }
        }
        Ok(Presentation { ring, constants, generators, relations, jet_order })
    }

    /// The free polynomial algebra on the given names.
    pub fn free(ring: CoefficientRing, names: &[&str]) -> Presentation {
        Presentation::new(
            ring,
            Vec::new(),
            names.iter().map(|n| JetVariable::base_var(*n)).collect(),
            Vec::new(),
            0,
        )
        .expect("free presentation is well formed")
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn generators(&self) -> &[JetVariable] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    /// Order-0 generators, in declaration order.
    pub fn base_generators(&self) -> Vec<JetVariable> {
        self.generators.iter().filter(|g| g.order() == 0).cloned().collect()
    }

    /// Generators of positive weight, in declaration order.
    pub fn positive_weight_generators(&self) -> Vec<JetVariable> {
        self.generators.iter().filter(|g| g.order() > 0).cloned().collect()
    }

    pub fn scope(&self) -> VariableScope {
        VariableScope::new(self.generators.iter().cloned(), self.constants.iter().cloned())
    }

    /// Prolongation context with this presentation's order-0 generators
    /// active and its constants annihilated.
    pub fn prolongation_context(&self, m: u32) -> Result<ProlongationContext, JetError> {
        if self.jet_order != 0 {
            return Err(JetError::NotABasePresentation(self.jet_order));
        }
        Ok(ProlongationContext::new(
            m,
            self.generators.iter().map(|g| g.base().to_string()),
            self.constants.iter().cloned(),
        )?)
    }

    /// Applies the canonical coefficient map to every relation; relations
    /// that vanish in the target ring are dropped.
    pub fn map_coefficients(&self, target: CoefficientRing) -> Result<Presentation, JetError> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.map_coefficients(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation {
            ring: target,
            constants: self.constants.clone(),
            generators: self.generators.clone(),
            relations: relations.into_iter().filter(|r| !r.is_zero()).collect(),
            jet_order: self.jet_order,
        })
    }

    /// A default Groebner order covering this presentation's variables.
    pub fn grevlex_order(&self) -> MonomialOrder {
        let mut vars: Vec<JetVariable> = self.generators.clone();
        vars.extend(self.constants.iter().map(JetVariable::base_var));
        vars.sort();
        MonomialOrder::new(groebner::OrderKind::GradedReverseLexicographic, vars)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.ring)?;
        if !self.constants.is_empty() {
            writeln!(f, "constants: {}", self.constants.join(", "))?;
        }
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{g} (weight {})", g.weight()))
            .collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        writeln!(f, "relations ({}):", self.relations.len())?;
        for r in &self.relations {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Constructs the jet presentation of order m: generators d_k x_i listed
/// weight-major, relations d_k f_j grouped by relation. Zero prolongations
/// are dropped. m = 0 returns the presentation unchanged.
pub fn jet_presentation(p: &Presentation, m: u32) -> Result<Presentation, JetError> {
    if p.jet_order != 0 {
        return Err(JetError::NotABasePresentation(p.jet_order));
    }
    if m == 0 {
        return Ok(p.clone());
    }
    let ctx = p.prolongation_context(m)?;
    let mut generators = Vec::new();
    for k in 0..=m {
        for g in &p.generators {
            generators.push(JetVariable::new(g.base(), k));
        }
    }
    let mut relations = Vec::new();
    for f in &p.relations {
        for k in 0..=m {
            let d = prolong(f, k, &ctx)?;
            if !d.is_zero() {
                relations.push(d);
            }
        }
    }
    Ok(Presentation {
        ring: p.ring,
        constants: p.constants.clone(),
        generators,
        relations,
        jet_order: m,
    })
}

/// A tower A -> B -> C: the inner presentation B and the full presentation of
/// C over A (inner generators and relations included).
#[derive(Debug, Clone)]
pub struct Tower {
    inner: Presentation,
    full: Presentation,
}

impl Tower {
    /// Builds the tower from B and the extra generators/relations of C.
    pub fn new(
        inner: Presentation,
        outer_generators: Vec<JetVariable>,
        outer_relations: Vec<Polynomial>,
    ) -> Result<Self, JetError> {
        if inner.jet_order != 0 {
            return Err(JetError::NotABasePresentation(inner.jet_order));
        }
        for g in &outer_generators {
            if inner.generators.contains(g) {
                return Err(JetError::NameCollision(g.base().to_string()));
            }
        }
        let mut generators = inner.generators.clone();
        generators.extend(outer_generators);
        let mut relations = inner.relations.clone();
        relations.extend(outer_relations);
        let full = Presentation::new(
            inner.ring,
            inner.constants.clone(),
            generators,
            relations,
            0,
        )?;
        Ok(Tower { inner, full })
    }

    pub fn inner(&self) -> &Presentation {
        &self.inner
    }

    pub fn full(&self) -> &Presentation {
        &self.full
    }

    /// The presentation of C with B's generators demoted to constants; its
    /// jets are the jets of C over B.
    pub fn relative_presentation(&self) -> Result<Presentation, JetError> {
        let mut constants = self.full.constants.clone();
        constants.extend(self.inner.generators.iter().map(|g| g.base().to_string()));
        let generators: Vec<JetVariable> = self
            .full
            .generators
            .iter()
            .filter(|g| !self.inner.generators.contains(g))
            .cloned()
            .collect();
        Presentation::new(self.full.ring, constants, generators, self.full.relations.clone(), 0)
    }
}

/// Jets of C over B: B's generators are treated as constants, so their jets
/// vanish.
pub fn relative_jet_presentation(tower: &Tower, m: u32) -> Result<Presentation, JetError> {
    jet_presentation(&tower.relative_presentation()?, m)
}

/// Outcome of the product construction: the product presentation and whether
/// its jets are literally the union of the factors' jets.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    pub product: Presentation,
    pub jet_of_product_equals_product_of_jets: bool,
}

fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    let mut candidate = format!("{base}_2");
    while taken.contains(&candidate) {
        candidate.push_str("_2");
    }
    candidate
}

/// Union of two presentations over the same ring, renaming second-factor
/// generators on collision. The verdict compares the jets of the product with
/// the union of the jets.
pub fn product_presentation(
    p1: &Presentation,
    p2: &Presentation,
    m: u32,
) -> Result<ProductCheck, JetError> {
    if p1.jet_order != 0 {
        return Err(JetError::NotABasePresentation(p1.jet_order));
    }
    if p2.jet_order != 0 {
        return Err(JetError::NotABasePresentation(p2.jet_order));
    }
    if p1.ring != p2.ring {
        return Err(JetError::Poly(PolyError::RingMismatch(p1.ring, p2.ring)));
    }
    let mut taken: BTreeSet<String> = p1.generators.iter().map(|g| g.base().to_string()).collect();
    taken.extend(p1.constants.iter().cloned());
    taken.extend(p2.constants.iter().cloned());

    let mut rename: BTreeMap<JetVariable, Polynomial> = BTreeMap::new();
    let mut p2_gens = Vec::new();
    for g in &p2.generators {
        let name = fresh_name(g.base(), &taken);
        taken.insert(name.clone());
        let renamed = JetVariable::base_var(&name);
        if &renamed != g {
            rename.insert(g.clone(), Polynomial::variable(p2.ring, renamed.clone()));
        }
        p2_gens.push(renamed);
    }
    let p2_relations: Vec<Polynomial> = p2
        .relations
        .iter()
        .map(|r| r.substitute(&rename))
        .collect::<Result<_, _>>()?;

    let mut constants = p1.constants.clone();
    constants.extend(p2.constants.clone());
    let mut generators = p1.generators.clone();
    generators.extend(p2_gens.clone());
    let mut relations = p1.relations.clone();
    relations.extend(p2_relations.clone());
    let product = Presentation::new(p1.ring, constants, generators, relations, 0)?;

    let jets_product = jet_presentation(&product, m)?;
    let jets_1 = jet_presentation(p1, m)?;
    let p2_renamed = Presentation::new(
        p2.ring,
        p2.constants.clone(),
        p2_gens,
        p2_relations,
        0,
    )?;
    let jets_2 = jet_presentation(&p2_renamed, m)?;

    let gens_union: BTreeSet<&JetVariable> =
        jets_1.generators.iter().chain(jets_2.generators.iter()).collect();
    let gens_product: BTreeSet<&JetVariable> = jets_product.generators.iter().collect();
    let mut rels_union: Vec<String> = jets_1
        .relations
        .iter()
        .chain(jets_2.relations.iter())
        .map(|r| r.to_string())
        .collect();
    rels_union.sort();
    let mut rels_product: Vec<String> =
        jets_product.relations.iter().map(|r| r.to_string()).collect();
    rels_product.sort();

    Ok(ProductCheck {
        product,
        jet_of_product_equals_product_of_jets: gens_union == gens_product
            && rels_union == rels_product,
    })
}

/// Adjoins an inverse of `s`: a fresh generator `inverse_name` with the
/// relation s*u - 1.
pub fn localize(
    p: &Presentation,
    s: &Polynomial,
    inverse_name: &str,
) -> Result<Presentation, JetError> {
    if p.jet_order != 0 {
        return Err(JetError::NotABasePresentation(p.jet_order));
    }
    if p.generators.iter().any(|g| g.base() == inverse_name)
        || p.constants.iter().any(|c| c == inverse_name)
    {
        return Err(JetError::NameCollision(inverse_name.to_string()));
    }
    let u = JetVariable::base_var(inverse_name);
    let relation = &(s * &Polynomial::variable(p.ring, u.clone())) - &Polynomial::one(p.ring);
    let mut generators = p.generators.clone();
    generators.push(u);
    let mut relations = p.relations.clone();
    relations.push(relation);
    Presentation::new(p.ring, p.constants.clone(), generators, relations, 0)
}

/// Substitutes field values for all order-0 generators of a jet presentation;
/// the result is a presentation in the positive-weight variables only, with
/// vanished relations dropped.
pub fn fiber_presentation(
    jp: &Presentation,
    point: &BTreeMap<String, Coeff>,
) -> Result<Presentation, JetError> {
    let base_gens = jp.base_generators();
    for name in point.keys() {
        if !base_gens.iter().any(|g| g.base() == name) {
            return Err(JetError::UnknownPointCoordinate(name.clone()));
        }
    }
    let mut images: BTreeMap<JetVariable, Polynomial> = BTreeMap::new();
    for g in &base_gens {
        let value = point
            .get(g.base())
            .ok_or_else(|| JetError::MissingPointValue(g.base().to_string()))?;
        if !jp.ring.contains(value) {
            return Err(JetError::PointValueOutsideRing {
                name: g.base().to_string(),
                ring: jp.ring,
            });
        }
        images.insert(g.clone(), Polynomial::constant(jp.ring, value.clone()));
    }
    let mut relations = Vec::new();
    for r in &jp.relations {
        let substituted = r.substitute(&images)?;
        if substituted.is_constant() {
            if !substituted.is_zero() {
                return Err(JetError::PointOffVariety {
                    relation: r.to_string(),
                    value: substituted.constant_term().to_string(),
                });
            }
        } else {
            relations.push(substituted);
        }
    }
    Presentation::new(
        jp.ring,
        jp.constants.clone(),
        jp.positive_weight_generators(),
        relations,
        jp.jet_order,
    )
}

/// Degree data for the projectivized jet space: Proj of a jet algebra of
/// order 0 is empty, and for m >= 1 the smallest twist that is a line sheaf
/// is lcm(1,...,m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjDegree {
    EmptyScheme,
    LineSheafDegree(u64),
}

pub fn gg_line_sheaf_degree(m: u32) -> ProjDegree {
    if m == 0 {
        return ProjDegree::EmptyScheme;
    }
    let mut acc: u64 = 1;
    for k in 2..=m as u64 {
        acc = num::integer::lcm(acc, k);
    }
    ProjDegree::LineSheafDegree(acc)
}

/// Result of the first fundamental sequence check: whether the kernel of
/// jets(C/A) -> jets(C/B) equals the ideal generated by the positive-weight
/// jets of B's generators, with both generator lists for the report.
#[derive(Debug, Clone)]
pub struct FirstSequenceReport {
    pub holds: bool,
    pub kernel_generators: Vec<Polynomial>,
    pub absolute_side: Vec<Polynomial>,
    pub relative_side: Vec<Polynomial>,
}

/// Verifies the kernel identity for the tower A -> B -> C at jet order m, as
/// an ideal equality in the polynomial carrier of the jets of C over A.
pub fn first_sequence_check(tower: &Tower, m: u32) -> Result<FirstSequenceReport, JetError> {
    let jets_full = jet_presentation(tower.full(), m)?;
    let jets_relative = relative_jet_presentation(tower, m)?;
    let kernel_generators: Vec<Polynomial> = tower
        .inner()
        .generators
        .iter()
        .flat_map(|g| {
            (1..=m).map(|i| Polynomial::variable(tower.full().ring(), JetVariable::new(g.base(), i)))
        })
        .collect();

    let mut absolute_side = jets_full.relations.clone();
    absolute_side.extend(kernel_generators.clone());
    let mut relative_side = jets_relative.relations.clone();
    relative_side.extend(kernel_generators.clone());

    let order = jets_full.grevlex_order();
    let holds = ideal_equal(&absolute_side, &relative_side, &order)?;
    Ok(FirstSequenceReport { holds, kernel_generators, absolute_side, relative_side })
}

#[derive(Debug, Error)]
pub enum LeadingFormError {
    #[error("ambient presentation must be a free polynomial algebra (smooth chart)")]
    NotSmoothChart,
    #[error("`{0}` is not an order-0 generator of the ambient presentation")]
    UnknownEVariable(String),
    #[error("input does not lie in the {m}-th power of the ideal of E")]
    NotInPowerIdeal { m: u32 },
    #[error("survivor assertion failed: restriction is `{survivor}`, which is not of degree {m} in the first-order jets of E")]
    SurvivorAssertion { survivor: String, m: u32 },
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Restricts the m-th prolongation of `b` to the vanishing locus of the
/// E-variables. Requires b in (E)^m (Groebner-certified); asserts that the
/// survivor involves only first-order jets of E-variables, homogeneously of
/// degree m, with coefficients in the remaining order-0 variables.
pub fn leading_form_restriction(
    ambient: &Presentation,
    b: &Polynomial,
    e_vars: &[String],
    m: u32,
) -> Result<Polynomial, LeadingFormError> {
    if ambient.jet_order() != 0 || !ambient.relations.is_empty() {
        return Err(LeadingFormError::NotSmoothChart);
    }
    let base_names: BTreeSet<&str> = ambient.generators.iter().map(|g| g.base()).collect();
    for e in e_vars {
        if !base_names.contains(e.as_str()) {
            return Err(LeadingFormError::UnknownEVariable(e.clone()));
        }
    }
    let e_set: BTreeSet<&str> = e_vars.iter().map(String::as_str).collect();

    // membership in (E)^m, over the fraction field when the ring is ZZ
    let field = match ambient.ring() {
        CoefficientRing::Integers => CoefficientRing::Rationals,
        other => other,
    };
    let b_field = b.map_coefficients(field).map_err(JetError::from)?;
    let e_gens: Vec<Polynomial> = e_vars
        .iter()
        .map(|e| Polynomial::variable(field, JetVariable::base_var(e)))
        .collect();
    let powers = groebner::power_ideal(field, &e_gens, m);
    let order = ambient.grevlex_order();
    if !ideal_membership(&b_field, &powers, &order).map_err(JetError::from)? {
        return Err(LeadingFormError::NotInPowerIdeal { m });
    }

    let ctx = ambient.prolongation_context(m)?;
    let d_m = prolong(b, m, &ctx).map_err(JetError::from)?;
    let zeroed: BTreeMap<JetVariable, Polynomial> = e_vars
        .iter()
        .map(|e| (JetVariable::base_var(e), Polynomial::zero(ambient.ring())))
        .collect();
    let survivor = d_m.substitute(&zeroed).map_err(JetError::from)?;

    for (mono, _) in survivor.terms() {
        let mut e_jet_degree: u64 = 0;
        for (v, exp) in mono.iter() {
            let in_e = e_set.contains(v.base());
            match (v.order(), in_e) {
                (0, false) => {}
                (1, true) => e_jet_degree += exp as u64,
                _ => {
                    return Err(LeadingFormError::SurvivorAssertion {
                        survivor: survivor.to_string(),
                        m,
                    })
                }
            }
        }
        if e_jet_degree != m as u64 {
            return Err(LeadingFormError::SurvivorAssertion {
                survivor: survivor.to_string(),
                m,
            });
        }
    }
    Ok(survivor)
}

/// Certifies that `f` lies in the relation ideal of `p`, lifting to the
/// fraction field when the coefficients are integers.
pub fn in_relation_ideal(f: &Polynomial, p: &Presentation) -> Result<bool, JetError> {
    let (f, relations) = match p.ring() {
        CoefficientRing::Integers => {
            let qq = CoefficientRing::Rationals;
            let fq = f.map_coefficients(qq)?;
            let rels = p
                .relations
                .iter()
                .map(|r| r.map_coefficients(qq))
                .collect::<Result<Vec<_>, _>>()?;
            (fq, rels)
        }
        _ => (f.clone(), p.relations.clone()),
    };
    if relations.is_empty() {
        return Ok(f.is_zero());
    }
    let mut order_polys: Vec<&Polynomial> = relations.iter().collect();
    order_polys.push(&f);
    let order = MonomialOrder::grevlex_for(order_polys);
    let gb = buchberger(&relations, &order)?;
    Ok(normal_form(&f, &gb).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn qq() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    pub(crate) fn cusp(ring: CoefficientRing) -> Presentation {
        let free = Presentation::free(ring, &["x", "y"]);
        let relation = parse_poly("y^2 - x^3", &free.scope(), ring).unwrap();
        Presentation::new(
            ring,
            Vec::new(),
            free.generators().to_vec(),
            vec![relation],
            0,
        )
        .unwrap()
    }

    fn jet_scope(p: &Presentation, m: u32) -> VariableScope {
        let mut vars = Vec::new();
        for g in p.generators() {
            for k in 0..=m {
                vars.push(JetVariable::new(g.base(), k));
            }
        }
        VariableScope::new(vars, p.constants().to_vec())
    }

    #[test]
    fn free_algebra_has_free_jets() {
        let p = Presentation::free(qq(), &["x"]);
        let j = jet_presentation(&p, 3).unwrap();
        assert_eq!(j.generators().len(), 4);
        assert!(j.relations().is_empty());
    }

    #[test]
    fn cusp_jets_match_known_relations() {
        let c = cusp(qq());
        let sc = jet_scope(&c, 2);
        let j1 = jet_presentation(&c, 1).unwrap();
        assert_eq!(
            j1.relations(),
            &[
                parse_poly("y^2 - x^3", &sc, qq()).unwrap(),
                parse_poly("2*y*d1y - 3*x^2*d1x", &sc, qq()).unwrap(),
            ]
        );
        let j2 = jet_presentation(&c, 2).unwrap();
        assert_eq!(j2.relations().len(), 3);
        assert_eq!(
            j2.relations()[2],
            parse_poly("d1y^2 + 2*y*d2y - 3*x*d1x^2 - 3*x^2*d2x", &sc, qq()).unwrap()
        );
        // generators listed weight-major
        let names: Vec<String> = j2.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["x", "y", "d1x", "d1y", "d2x", "d2y"]);
    }

    #[test]
    fn jet_order_zero_echoes() {
        let c = cusp(qq());
        assert_eq!(jet_presentation(&c, 0).unwrap(), c);
    }

    #[test]
    fn relative_jets_kill_inner_generators() {
        // A = k, B = k[x], C = k[x,y]/(y^2 - x^3)
        let inner = Presentation::free(qq(), &["x"]);
        let scope = VariableScope::new(
            [JetVariable::base_var("x"), JetVariable::base_var("y")],
            [],
        );
        let relation = parse_poly("y^2 - x^3", &scope, qq()).unwrap();
        let tower = Tower::new(inner, vec![JetVariable::base_var("y")], vec![relation]).unwrap();
        let rel = relative_jet_presentation(&tower, 1).unwrap();
        let sc = jet_scope(tower.full(), 1);
        assert_eq!(
            rel.relations(),
            &[
                parse_poly("y^2 - x^3", &sc, qq()).unwrap(),
                parse_poly("2*y*d1y", &sc, qq()).unwrap(),
            ]
        );
        // only y gets jets; x is constant
        assert_eq!(
            rel.generators(),
            &[JetVariable::base_var("y"), JetVariable::new("y", 1)]
        );
    }

    #[test]
    fn relative_jets_of_trivial_extension() {
        // C = B: no new generators, jets are C itself
        let inner = cusp(qq());
        let tower = Tower::new(inner.clone(), Vec::new(), Vec::new()).unwrap();
        let rel = relative_jet_presentation(&tower, 2).unwrap();
        assert!(rel.generators().is_empty());
        assert_eq!(rel.relations(), inner.relations());
    }

    #[test]
    fn tower_name_collisions_rejected() {
        let inner = Presentation::free(qq(), &["x"]);
        assert!(matches!(
            Tower::new(inner, vec![JetVariable::base_var("x")], Vec::new()),
            Err(JetError::NameCollision(_))
        ));
    }

    #[test]
    fn product_of_free_algebras() {
        let p1 = Presentation::free(qq(), &["x"]);
        let p2 = Presentation::free(qq(), &["y"]);
        let check = product_presentation(&p1, &p2, 2).unwrap();
        assert!(check.jet_of_product_equals_product_of_jets);
        assert_eq!(check.product.generators().len(), 2);
    }

    #[test]
    fn product_renames_collisions() {
        let p1 = Presentation::free(qq(), &["x"]);
        let check = product_presentation(&p1, &p1, 1).unwrap();
        let names: Vec<String> =
            check.product.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["x", "x_2"]);
        assert!(check.jet_of_product_equals_product_of_jets);
    }

    #[test]
    fn product_with_cusp_keeps_relations() {
        let c = cusp(qq());
        let line = Presentation::free(qq(), &["z"]);
        let check = product_presentation(&c, &line, 2).unwrap();
        assert!(check.jet_of_product_equals_product_of_jets);
        assert_eq!(check.product.relations().len(), 1);
    }

    #[test]
    fn localization_examples() {
        let line = Presentation::free(qq(), &["x"]);
        let x = Polynomial::variable(qq(), JetVariable::base_var("x"));
        let loc = localize(&line, &x, "u").unwrap();
        let sc = loc.scope();
        assert_eq!(
            loc.relations(),
            &[parse_poly("x*u - 1", &sc, qq()).unwrap()]
        );
        let jets = jet_presentation(&loc, 1).unwrap();
        let jsc = jet_scope(&loc, 1);
        assert_eq!(
            jets.relations(),
            &[
                parse_poly("x*u - 1", &jsc, qq()).unwrap(),
                parse_poly("x*d1u + u*d1x", &jsc, qq()).unwrap(),
            ]
        );
        // trivial localization at 1
        let triv = localize(&line, &Polynomial::one(qq()), "u").unwrap();
        assert_eq!(triv.relations()[0], parse_poly("u - 1", &sc, qq()).unwrap());
        // collision rejected
        assert!(matches!(localize(&line, &x, "x"), Err(JetError::NameCollision(_))));
    }

    #[test]
    fn cusp_fibers_at_origin() {
        let c = cusp(qq());
        let origin: BTreeMap<String, Coeff> =
            [("x".to_string(), qq().zero()), ("y".to_string(), qq().zero())].into();
        let f1 = fiber_presentation(&jet_presentation(&c, 1).unwrap(), &origin).unwrap();
        assert!(f1.relations().is_empty());
        assert_eq!(f1.generators().len(), 2);

        let f2 = fiber_presentation(&jet_presentation(&c, 2).unwrap(), &origin).unwrap();
        assert_eq!(f2.relations().len(), 1);
        assert_eq!(f2.relations()[0].to_string(), "d1y^2");
    }

    #[test]
    fn cusp_fiber_at_smooth_point() {
        let c = cusp(qq());
        let point: BTreeMap<String, Coeff> =
            [("x".to_string(), qq().one()), ("y".to_string(), qq().one())].into();
        let f1 = fiber_presentation(&jet_presentation(&c, 1).unwrap(), &point).unwrap();
        assert_eq!(f1.relations().len(), 1);
        assert_eq!(f1.relations()[0].to_string(), "-3*d1x + 2*d1y");
    }

    #[test]
    fn fiber_validates_point() {
        let c = cusp(qq());
        let j1 = jet_presentation(&c, 1).unwrap();
        let off: BTreeMap<String, Coeff> =
            [("x".to_string(), qq().zero()), ("y".to_string(), qq().one())].into();
        assert!(matches!(
            fiber_presentation(&j1, &off),
            Err(JetError::PointOffVariety { .. })
        ));
        let partial: BTreeMap<String, Coeff> = [("x".to_string(), qq().zero())].into();
        assert!(matches!(
            fiber_presentation(&j1, &partial),
            Err(JetError::MissingPointValue(_))
        ));
    }

    #[test]
    fn line_sheaf_degrees() {
        assert_eq!(gg_line_sheaf_degree(0), ProjDegree::EmptyScheme);
        assert_eq!(gg_line_sheaf_degree(1), ProjDegree::LineSheafDegree(1));
        assert_eq!(gg_line_sheaf_degree(2), ProjDegree::LineSheafDegree(2));
        assert_eq!(gg_line_sheaf_degree(4), ProjDegree::LineSheafDegree(12));
    }

    #[test]
    fn first_sequence_trivial_tower() {
        // B = A: both sides are the zero ideal
        let inner = Presentation::new(qq(), Vec::new(), Vec::new(), Vec::new(), 0).unwrap();
        let tower = Tower::new(inner, vec![JetVariable::base_var("x")], Vec::new()).unwrap();
        let report = first_sequence_check(&tower, 1).unwrap();
        assert!(report.holds);
        assert!(report.kernel_generators.is_empty());
    }

    #[test]
    fn first_sequence_plane_over_line() {
        let inner = Presentation::free(qq(), &["x"]);
        let tower = Tower::new(inner, vec![JetVariable::base_var("y")], Vec::new()).unwrap();
        let report = first_sequence_check(&tower, 1).unwrap();
        assert!(report.holds);
        assert_eq!(report.kernel_generators.len(), 1);
        assert_eq!(report.kernel_generators[0].to_string(), "d1x");
    }

    #[test]
    fn first_sequence_cusp_over_line() {
        let inner = Presentation::free(qq(), &["x"]);
        let scope = VariableScope::new(
            [JetVariable::base_var("x"), JetVariable::base_var("y")],
            [],
        );
        let relation = parse_poly("y^2 - x^3", &scope, qq()).unwrap();
        let tower = Tower::new(inner, vec![JetVariable::base_var("y")], vec![relation]).unwrap();
        for m in 1..=2 {
            let report = first_sequence_check(&tower, m).unwrap();
            assert!(report.holds, "kernel identity fails at m = {m}");
        }
    }

    #[test]
    fn leading_form_cases() {
        let ambient = Presentation::free(qq(), &["a", "x", "y"]);
        let sc = ambient.scope();
        let p = |t: &str| parse_poly(t, &sc, qq()).unwrap();

        let got = leading_form_restriction(&ambient, &p("x^2"), &["x".to_string()], 2).unwrap();
        assert_eq!(got.to_string(), "d1x^2");

        let got = leading_form_restriction(
            &ambient,
            &p("x*y"),
            &["x".to_string(), "y".to_string()],
            2,
        )
        .unwrap();
        assert_eq!(got.to_string(), "d1x*d1y");

        let got = leading_form_restriction(&ambient, &p("a*x^2"), &["x".to_string()], 2).unwrap();
        assert_eq!(got.to_string(), "a*d1x^2");
    }

    #[test]
    fn leading_form_requires_power_membership() {
        let ambient = Presentation::free(qq(), &["x", "y"]);
        let sc = ambient.scope();
        let b = parse_poly("x", &sc, qq()).unwrap();
        assert!(matches!(
            leading_form_restriction(&ambient, &b, &["x".to_string()], 2),
            Err(LeadingFormError::NotInPowerIdeal { m: 2 })
        ));
    }

    #[test]
    fn base_change_commutes_with_jets() {
        let zz = CoefficientRing::Integers;
        let c = cusp(zz);
        for p in [2u64, 3, 5] {
            let fp = CoefficientRing::prime_field(p).unwrap();
            let jet_then_map = jet_presentation(&c, 2).unwrap().map_coefficients(fp).unwrap();
            let map_then_jet = jet_presentation(&c.map_coefficients(fp).unwrap(), 2).unwrap();
            assert_eq!(jet_then_map.relations(), map_then_jet.relations());
        }
    }
}
