//! Brute-force ground truth over finite rings: point and truncated-arc
//! enumeration, the jet/arc bijection, point counting, surjectivity and
//! image computations at the point level, and dilation orbit data.
//!
//! Enumeration is depth-first over generators in declaration order with
//! target elements in canonical residue order; each relation is evaluated as
//! soon as its support is assigned. Budgets bound candidate assignments, not
//! points found, so runtime is predictable.

use crate::coeff::{pow_mod, CoeffError};
use crate::finite::{FiniteElem, FiniteRing, FiniteRingError};
use crate::maps::GradedAlgebraMap;
use crate::monomial::JetVariable;
use crate::poly::Polynomial;
use crate::presentation::{jet_presentation, localize, JetError, Presentation};
use crate::series::Carrier;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Default bound on candidate assignments per enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("enumeration needs {candidates} candidate assignments, over the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("enumeration requires a presentation without constants")]
    ConstantsUnsupported,
    #[error(transparent)]
    FiniteRing(#[from] FiniteRingError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error(transparent)]
    Map(#[from] crate::maps::MapError),
}

/// A point: one target element per generator, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomPoint {
    values: Vec<FiniteElem>,
}

impl HomPoint {
    pub fn values(&self) -> &[FiniteElem] {
        &self.values
    }

    /// Renders as `x=1, d1x=0` against a generator list.
    pub fn render(&self, gens: &[JetVariable]) -> String {
        gens.iter()
            .zip(&self.values)
            .map(|(g, v)| format!("{g}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// The full solution set of a presentation over a finite ring.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub generators: Vec<JetVariable>,
    pub ring: FiniteRing,
    pub points: Vec<HomPoint>,
}

impl Enumeration {
    pub fn count(&self) -> u128 {
        self.points.len() as u128
    }

    pub fn point_set(&self) -> BTreeSet<&HomPoint> {
        self.points.iter().collect()
    }
}

/// A polynomial compiled against a generator index for fast evaluation.
struct CompiledPoly {
    terms: Vec<(FiniteElem, Vec<(usize, u32)>)>,
    /// Largest generator index occurring, if any.
    max_gen: Option<usize>,
}

impl CompiledPoly {
    fn compile(
        f: &Polynomial,
        index: &BTreeMap<JetVariable, usize>,
        ring: FiniteRing,
    ) -> Result<Self, OracleError> {
        let mut terms = Vec::new();
        let mut max_gen = None;
        for (m, c) in f.terms() {
            let coeff = ring.from_coeff(c)?;
            let mut factors = Vec::new();
            for (v, e) in m.iter() {
                let gi = *index
                    .get(v)
                    .unwrap_or_else(|| panic!("relation variable {v} missing from generators"));
                factors.push((gi, e));
                max_gen = Some(max_gen.map_or(gi, |g: usize| g.max(gi)));
            }
            terms.push((coeff, factors));
        }
        Ok(CompiledPoly { terms, max_gen })
    }

    fn eval(&self, values: &[FiniteElem], ring: &FiniteRing) -> FiniteElem {
        let mut acc = ring.zero();
        for (coeff, factors) in &self.terms {
            let mut term = coeff.clone();
            for (gi, e) in factors {
                term = term.mul(&values[*gi].pow(*e));
            }
            acc = acc.add(&term);
        }
        acc
    }
}

fn checked_budget(ring: &FiniteRing, n_generators: usize, budget: u128) -> Result<(), OracleError> {
    let mut candidates: u128 = 1;
    for _ in 0..n_generators {
        candidates = match candidates.checked_mul(ring.size()) {
            Some(c) => c,
            None => {
                return Err(OracleError::BudgetExceeded { candidates: u128::MAX, budget })
            }
        };
    }
    if candidates > budget {
        return Err(OracleError::BudgetExceeded { candidates, budget });
    }
    Ok(())
}

/// Enumerates all coefficient-ring homomorphisms from `p` into `ring`:
/// exactly the assignments under which every relation vanishes, in
/// lexicographic assignment order.
pub fn enumerate_homs(
    p: &Presentation,
    ring: FiniteRing,
    budget: u128,
) -> Result<Enumeration, OracleError> {
    if !p.constants().is_empty() {
        return Err(OracleError::ConstantsUnsupported);
    }
    let gens = p.generators().to_vec();
    checked_budget(&ring, gens.len(), budget)?;
    let index: BTreeMap<JetVariable, usize> =
        gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut compiled = Vec::new();
    for r in p.relations() {
        compiled.push(CompiledPoly::compile(r, &index, ring)?);
    }

    // group relations by the depth at which their support is fully assigned
    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (ri, c) in compiled.iter().enumerate() {
        match c.max_gen {
            Some(g) => by_depth[g].push(ri),
            None => {
                // constant relation: nonzero means the empty solution set
                if !c.eval(&[], &ring).is_zero() {
                    return Ok(Enumeration { generators: gens, ring, points: Vec::new() });
                }
            }
        }
    }

    let elements: Vec<FiniteElem> = ring.elements().collect();
    let mut points = Vec::new();
    let mut values: Vec<FiniteElem> = Vec::with_capacity(gens.len());
    dfs(&mut values, gens.len(), &elements, &compiled, &by_depth, &ring, &mut points);
    Ok(Enumeration { generators: gens, ring, points })
}

fn dfs(
    values: &mut Vec<FiniteElem>,
    n: usize,
    elements: &[FiniteElem],
    compiled: &[CompiledPoly],
    by_depth: &[Vec<usize>],
    ring: &FiniteRing,
    points: &mut Vec<HomPoint>,
) {
    let depth = values.len();
    if depth == n {
        points.push(HomPoint { values: values.clone() });
        return;
    }
    for e in elements {
        values.push(e.clone());
        let ok = by_depth[depth]
            .iter()
            .all(|&ri| compiled[ri].eval(values, ring).is_zero());
        if ok {
            dfs(values, n, elements, compiled, by_depth, ring, points);
        }
        values.pop();
    }
}

/// Counts the points of `p` over F_q (the presentation's coefficients are
/// mapped into F_q first).
pub fn count_points(p: &Presentation, q: u64, budget: u128) -> Result<u128, OracleError> {
    let ring = FiniteRing::prime(q)?;
    let mapped = p.map_coefficients(crate::coeff::CoefficientRing::PrimeField(q))?;
    Ok(enumerate_homs(&mapped, ring, budget)?.count())
}

/// Enumerates all truncated arcs of a jet-order-0 presentation: its
/// homomorphisms into F_q[t]/(t^{m+1}).
pub fn enumerate_arcs(
    p: &Presentation,
    q: u64,
    m: u32,
    budget: u128,
) -> Result<Enumeration, OracleError> {
    if p.jet_order() != 0 {
        return Err(OracleError::Jet(JetError::NotABasePresentation(p.jet_order())));
    }
    let ring = FiniteRing::truncated(q, m)?;
    let mapped = p.map_coefficients(crate::coeff::CoefficientRing::PrimeField(q))?;
    enumerate_homs(&mapped, ring, budget)
}

/// Translates a point of the jet presentation into the arc sending each base
/// generator x to sum_k value(d_k x) t^k.
pub fn jet_point_to_arc(
    jet_gens: &[JetVariable],
    base_gens: &[JetVariable],
    m: u32,
    point: &HomPoint,
    q: u64,
) -> HomPoint {
    let index: BTreeMap<&JetVariable, usize> =
        jet_gens.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let ring = FiniteRing::truncated(q, m).expect("characteristic validated upstream");
    let values = base_gens
        .iter()
        .map(|g| {
            let digits = (0..=m)
                .map(|k| point.values[index[&JetVariable::new(g.base(), k)]].constant_digit())
                .collect();
            ring.from_digits(digits)
        })
        .collect();
    HomPoint { values }
}

/// Reads an arc back into a jet-presentation point: coordinate d_k x takes
/// the t^k digit of the arc value of x.
pub fn arc_to_jet_point(
    jet_gens: &[JetVariable],
    base_gens: &[JetVariable],
    arc: &HomPoint,
    q: u64,
) -> HomPoint {
    let prime = FiniteRing::prime(q).expect("characteristic validated upstream");
    let index: BTreeMap<&str, usize> =
        base_gens.iter().enumerate().map(|(i, g)| (g.base(), i)).collect();
    let values = jet_gens
        .iter()
        .map(|g| {
            let base_idx = index[g.base()];
            let digit = arc.values[base_idx].digits()[g.order() as usize];
            prime.from_residue(digit)
        })
        .collect();
    HomPoint { values }
}

/// Outcome of the jet/arc bijection check.
#[derive(Debug, Clone)]
pub struct DesideratumReport {
    pub jet_point_count: u128,
    pub arc_count: u128,
    pub counts_equal: bool,
    pub translations_mutually_inverse: bool,
}

impl DesideratumReport {
    pub fn bijective(&self) -> bool {
        self.counts_equal && self.translations_mutually_inverse
    }
}

/// Verifies that jet points and truncated arcs correspond bijectively under
/// the coefficient-readoff translations, both ways, point by point.
pub fn desideratum_check(
    p: &Presentation,
    q: u64,
    m: u32,
    budget: u128,
) -> Result<DesideratumReport, OracleError> {
    let jp = jet_presentation(p, m)?;
    let jets = enumerate_homs(
        &jp.map_coefficients(crate::coeff::CoefficientRing::PrimeField(q))?,
        FiniteRing::prime(q)?,
        budget,
    )?;
    let arcs = enumerate_arcs(p, q, m, budget)?;

    let arc_set: BTreeSet<&HomPoint> = arcs.points.iter().collect();
    let jet_set: BTreeSet<&HomPoint> = jets.points.iter().collect();
    let base_gens = p.generators().to_vec();

    let mut inverse = true;
    for pt in &jets.points {
        let arc = jet_point_to_arc(&jets.generators, &base_gens, m, pt, q);
        if !arc_set.contains(&arc) {
            inverse = false;
            break;
        }
        let back = arc_to_jet_point(&jets.generators, &base_gens, &arc, q);
        if &back != pt {
            inverse = false;
            break;
        }
    }
    if inverse {
        for arc in &arcs.points {
            let pt = arc_to_jet_point(&jets.generators, &base_gens, arc, q);
            if !jet_set.contains(&pt) {
                inverse = false;
                break;
            }
            let back = jet_point_to_arc(&jets.generators, &base_gens, m, &pt, q);
            if &back != arc {
                inverse = false;
                break;
            }
        }
    }

    Ok(DesideratumReport {
        jet_point_count: jets.count(),
        arc_count: arcs.count(),
        counts_equal: jets.count() == arcs.count(),
        translations_mutually_inverse: inverse,
    })
}

/// Point-level outcome of the truncation map J_j -> J_i.
#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub source_count: u128,
    pub target_count: u128,
    pub image_count: u128,
    pub surjective: bool,
    /// A target point with no lift, when not surjective.
    pub witness: Option<HomPoint>,
    pub target_generators: Vec<JetVariable>,
}

/// Checks whether every point of J_i lifts to J_j (i <= j) by arc truncation.
pub fn truncation_surjectivity(
    p: &Presentation,
    i: u32,
    j: u32,
    q: u64,
    budget: u128,
) -> Result<TruncationReport, OracleError> {
    assert!(i <= j, "truncation goes from higher to lower jet order");
    let fq = crate::coeff::CoefficientRing::PrimeField(q);
    let ring = FiniteRing::prime(q)?;
    let jets_i = enumerate_homs(&jet_presentation(p, i)?.map_coefficients(fq)?, ring, budget)?;
    let jets_j = enumerate_homs(&jet_presentation(p, j)?.map_coefficients(fq)?, ring, budget)?;

    // jet generators are listed weight-major, so the J_i coordinates are a
    // prefix of the J_j coordinates
    let prefix = jets_i.generators.len();
    debug_assert_eq!(&jets_j.generators[..prefix], &jets_i.generators[..]);
    let image: BTreeSet<Vec<FiniteElem>> = jets_j
        .points
        .iter()
        .map(|pt| pt.values[..prefix].to_vec())
        .collect();
    let witness = jets_i
        .points
        .iter()
        .find(|pt| !image.contains(&pt.values))
        .cloned();
    Ok(TruncationReport {
        source_count: jets_j.count(),
        target_count: jets_i.count(),
        image_count: image.len() as u128,
        surjective: witness.is_none(),
        witness,
        target_generators: jets_i.generators,
    })
}

/// Point-level image of the jet map induced by a base map phi: B -> B'.
/// Points of J_m(B') push forward to J_m(B) by precomposing arcs with phi.
#[derive(Debug, Clone)]
pub struct JetImageReport {
    pub target_count: u128,
    pub image_count: u128,
    pub surjective: bool,
    pub non_image: Vec<HomPoint>,
    pub target_generators: Vec<JetVariable>,
}

pub fn jet_map_image(
    phi: &GradedAlgebraMap,
    m: u32,
    q: u64,
    budget: u128,
) -> Result<JetImageReport, OracleError> {
    let fq = crate::coeff::CoefficientRing::PrimeField(q);
    let ring = FiniteRing::truncated(q, m)?;
    // arcs of the target algebra = points of the source scheme's jet space
    let arcs = enumerate_arcs(phi.target(), q, m, budget)?;

    // compile the generator images of phi over the truncated ring
    let index: BTreeMap<JetVariable, usize> = phi
        .target()
        .generators()
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let mut compiled = Vec::new();
    let base_gens = phi.source().generators().to_vec();
    for g in &base_gens {
        let image = phi.image_of(g).map_coefficients(fq)?;
        compiled.push(CompiledPoly::compile(&image, &index, ring)?);
    }

    let jp = jet_presentation(phi.source(), m)?;
    let jets = enumerate_homs(&jp.map_coefficients(fq)?, FiniteRing::prime(q)?, budget)?;

    let mut image_set: BTreeSet<HomPoint> = BTreeSet::new();
    for arc in &arcs.points {
        let composed = HomPoint {
            values: compiled.iter().map(|c| c.eval(&arc.values, &ring)).collect(),
        };
        image_set.insert(arc_to_jet_point(&jets.generators, &base_gens, &composed, q));
    }
    let non_image: Vec<HomPoint> = jets
        .points
        .iter()
        .filter(|pt| !image_set.contains(pt))
        .cloned()
        .collect();
    Ok(JetImageReport {
        target_count: jets.count(),
        image_count: image_set.len() as u128,
        surjective: non_image.is_empty(),
        non_image,
        target_generators: jets.generators,
    })
}

/// Applies the dilation z to a point: coordinate of weight w scales by z^w.
pub fn dilate_point(gens: &[JetVariable], point: &HomPoint, z: u64, q: u64) -> HomPoint {
    let ring = FiniteRing::prime(q).expect("characteristic validated upstream");
    let values = gens
        .iter()
        .zip(&point.values)
        .map(|(g, v)| {
            let factor = ring.from_residue(pow_mod(z, g.order() as u64, q));
            v.mul(&factor)
        })
        .collect();
    HomPoint { values }
}

/// One orbit of the multiplicative group acting by dilation.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub representative: HomPoint,
    pub size: u128,
    pub stabilizer_size: u128,
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub total_points: u128,
    pub zero_section_points: u128,
    pub orbit_count: u128,
    pub orbits: Vec<Orbit>,
    /// Every dilated point satisfied the relations (rechecked, not assumed).
    pub dilations_preserve_relations: bool,
    /// Every orbit size times its stabilizer size equals q - 1.
    pub orbit_sizes_divide_group: bool,
    pub generators: Vec<JetVariable>,
}

/// Partitions the points of a fiber presentation, minus the zero-section
/// locus (all positive-weight coordinates zero), into orbits of z in F_q^*
/// acting coordinate-wise by z^weight.
pub fn gm_orbits(fiber: &Presentation, q: u64, budget: u128) -> Result<OrbitReport, OracleError> {
    let fq = crate::coeff::CoefficientRing::PrimeField(q);
    let ring = FiniteRing::prime(q)?;
    let pts = enumerate_homs(&fiber.map_coefficients(fq)?, ring, budget)?;
    let gens = pts.generators.clone();
    let point_set: BTreeSet<&HomPoint> = pts.points.iter().collect();

    let is_zero_section = |pt: &HomPoint| {
        gens.iter()
            .zip(pt.values())
            .all(|(g, v)| g.order() == 0 || v.is_zero())
    };

    let mut dilations_preserve_relations = true;
    let mut orbit_sizes_divide_group = true;
    let mut visited: BTreeSet<&HomPoint> = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut zero_section_points = 0u128;

    for pt in &pts.points {
        if is_zero_section(pt) {
            zero_section_points += 1;
            continue;
        }
        if visited.contains(pt) {
            continue;
        }
        let mut orbit_members: BTreeSet<HomPoint> = BTreeSet::new();
        let mut stabilizer_size = 0u128;
        for z in 1..q {
            let moved = dilate_point(&gens, pt, z, q);
            if !point_set.contains(&moved) {
                dilations_preserve_relations = false;
            }
            if &moved == pt {
                stabilizer_size += 1;
            }
            orbit_members.insert(moved);
        }
        for member in &orbit_members {
            if let Some(original) = point_set.get(member) {
                visited.insert(original);
            }
        }
        let size = orbit_members.len() as u128;
        if size * stabilizer_size != (q - 1) as u128 {
            orbit_sizes_divide_group = false;
        }
        orbits.push(Orbit { representative: pt.clone(), size, stabilizer_size });
    }

    Ok(OrbitReport {
        total_points: pts.count(),
        zero_section_points,
        orbit_count: orbits.len() as u128,
        orbits,
        dilations_preserve_relations,
        orbit_sizes_divide_group,
        generators: gens,
    })
}

/// Point-level localization check: the jet points of the localization of `p`
/// at `s` must project bijectively onto the jet points of `p` whose base
/// point does not kill `s`.
#[derive(Debug, Clone)]
pub struct LocalizationReport {
    pub localized_count: u128,
    pub expected_count: u128,
    pub bijective: bool,
}

pub fn localization_check(
    p: &Presentation,
    s: &Polynomial,
    m: u32,
    q: u64,
    budget: u128,
) -> Result<LocalizationReport, OracleError> {
    let fq = crate::coeff::CoefficientRing::PrimeField(q);
    let ring = FiniteRing::prime(q)?;
    let mut inverse_name = "u".to_string();
    while p.generators().iter().any(|g| g.base() == inverse_name) {
        inverse_name.push('u');
    }
    let localized = localize(p, s, &inverse_name)?;
    let loc_jets = enumerate_homs(
        &jet_presentation(&localized, m)?.map_coefficients(fq)?,
        ring,
        budget,
    )?;
    let base_jets = enumerate_homs(
        &jet_presentation(p, m)?.map_coefficients(fq)?,
        ring,
        budget,
    )?;

    // compile s against p's base generators to test the base point
    let index: BTreeMap<JetVariable, usize> = base_jets
        .generators
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let s_compiled = CompiledPoly::compile(&s.map_coefficients(fq)?, &index, ring)?;

    let keep: Vec<&HomPoint> = base_jets
        .points
        .iter()
        .filter(|pt| !s_compiled.eval(&pt.values, &ring).is_zero())
        .collect();

    // project localized jet points onto p's jet coordinates
    let positions: Vec<usize> = base_jets
        .generators
        .iter()
        .map(|g| {
            loc_jets
                .generators
                .iter()
                .position(|h| h == g)
                .expect("localization keeps the original generators")
        })
        .collect();
    let mut projected: Vec<HomPoint> = loc_jets
        .points
        .iter()
        .map(|pt| HomPoint {
            values: positions.iter().map(|&i| pt.values[i].clone()).collect(),
        })
        .collect();
    projected.sort();
    let distinct = projected.windows(2).all(|w| w[0] != w[1]);
    let keep_set: BTreeSet<&HomPoint> = keep.iter().copied().collect();
    let projected_set: BTreeSet<&HomPoint> = projected.iter().collect();
    let bijective = distinct
        && projected.len() == keep.len()
        && keep_set.iter().all(|pt| projected_set.contains(*pt));

    Ok(LocalizationReport {
        localized_count: loc_jets.count(),
        expected_count: keep.len() as u128,
        bijective,
    })
}
