//! Implementations behind each subcommand: load, validate, dispatch to the
//! library, and assemble a typed report.

use crate::report::*;
use jetalg::coeff::{Coeff, CoefficientRing};
use jetalg::groebner::GroebnerError;
use jetalg::input::{load_from_path, InputError, LoadedInput};
use jetalg::maps::{dilation_map, induced_map, DilationScalar, GradedAlgebraMap, MapError, WeightRule};
use jetalg::oracle::{
    self, desideratum_check, dilate_point, enumerate_homs, gm_orbits, jet_map_image,
    localization_check, truncation_surjectivity, OracleError,
};
use jetalg::parse::parse_poly;
use jetalg::poly::Polynomial;
use jetalg::presentation::{
    fiber_presentation, first_sequence_check, gg_line_sheaf_degree, jet_presentation,
    leading_form_restriction, product_presentation, relative_jet_presentation, JetError,
    LeadingFormError, Presentation, ProjDegree,
};
use jetalg::prolong::{leibniz_check, prolong};
use jetalg::sample::PolySampler;
use jetalg::finite::FiniteRing;
use jetalg::{JetVariable, ParseError, VariableScope};
use std::collections::BTreeMap;
use std::path::Path;

/// Exit codes: 2 input parsing, 3 semantic, 4 budget exceeded.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError { exit_code: 2, message }
    }

    pub fn semantic(message: String) -> Self {
        CliError { exit_code: 3, message }
    }

    pub fn budget(message: String) -> Self {
        CliError { exit_code: 4, message }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Jet(_) | InputError::Coeff(_) => CliError::semantic(e.to_string()),
            _ => CliError::parse(e.to_string()),
        }
    }
}

impl From<JetError> for CliError {
    fn from(e: JetError) -> Self {
        match &e {
            JetError::Groebner(GroebnerError::PairLimitExceeded { .. }) => {
                CliError::budget(e.to_string())
            }
            _ => CliError::semantic(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match &e {
            OracleError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            _ => CliError::semantic(e.to_string()),
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        CliError::semantic(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match &e {
            GroebnerError::PairLimitExceeded { .. } => CliError::budget(e.to_string()),
            _ => CliError::semantic(e.to_string()),
        }
    }
}

impl From<LeadingFormError> for CliError {
    fn from(e: LeadingFormError) -> Self {
        CliError::semantic(e.to_string())
    }
}

fn parse_error_in_param(param: &str, e: ParseError) -> CliError {
    CliError::parse(format!("in {param}: {e}"))
}

pub fn load(file: &Path) -> Result<LoadedInput, CliError> {
    Ok(load_from_path(file)?)
}

fn file_name(file: &Path) -> String {
    file.display().to_string()
}

fn map_to_prime_field(p: &Presentation, q: u64) -> Result<Presentation, CliError> {
    let ring = CoefficientRing::prime_field(q).map_err(|e| CliError::semantic(e.to_string()))?;
    Ok(p.map_coefficients(ring)?)
}

/// Parses `x=0,y=1/2` into point coordinates over the presentation's ring.
fn parse_fiber_values(
    spec: &str,
    ring: CoefficientRing,
) -> Result<BTreeMap<String, Coeff>, CliError> {
    let empty = VariableScope::default();
    let mut out = BTreeMap::new();
    for part in spec.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::parse(format!("fiber coordinate `{part}` is not name=value")))?;
        let poly = parse_poly(value.trim(), &empty, ring)
            .map_err(|e| parse_error_in_param("--fiber", e))?;
        if !poly.is_constant() {
            return Err(CliError::parse(format!(
                "fiber value `{}` is not a constant",
                value.trim()
            )));
        }
        out.insert(name.trim().to_string(), poly.constant_term());
    }
    Ok(out)
}

pub fn cmd_jet(file: &Path, m: u32) -> Result<JetReport, CliError> {
    let input = load(file)?;
    let (jets, relative) = match &input.tower {
        Some(tower) => (relative_jet_presentation(tower, m)?, true),
        None => (jet_presentation(&input.presentation, m)?, false),
    };
    Ok(JetReport {
        command: "jet".to_string(),
        file: file_name(file),
        ring: jets.ring().to_string(),
        jet_order: m,
        relative_to_tower_base: relative,
        constants: jets.constants().to_vec(),
        generators: generator_infos(&jets),
        relations: jets.relations().iter().map(|r| r.to_string()).collect(),
    })
}

pub fn cmd_count(
    file: &Path,
    q: u64,
    m: Option<u32>,
    fiber: Option<&str>,
    budget: u128,
) -> Result<CountReport, CliError> {
    let input = load(file)?;
    let mut p = map_to_prime_field(&input.presentation, q)?;
    if let Some(m) = m {
        p = jet_presentation(&p, m)?;
    }
    let mut fiber_rendered = None;
    if let Some(spec) = fiber {
        let point = parse_fiber_values(spec, p.ring())?;
        fiber_rendered = Some(
            point
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", "),
        );
        p = fiber_presentation(&p, &point)?;
    }
    let ring = FiniteRing::prime(q).map_err(|e| CliError::semantic(e.to_string()))?;
    let enumeration = enumerate_homs(&p, ring, budget)?;
    Ok(CountReport {
        command: "count".to_string(),
        file: file_name(file),
        q,
        jet_order: m,
        fiber: fiber_rendered,
        generators: generator_infos(&p),
        count: enumeration.count() as u64,
    })
}

pub fn cmd_orbits(
    file: &Path,
    q: u64,
    m: Option<u32>,
    fiber: &str,
    budget: u128,
) -> Result<OrbitsReport, CliError> {
    let input = load(file)?;
    let mut p = map_to_prime_field(&input.presentation, q)?;
    if let Some(m) = m {
        p = jet_presentation(&p, m)?;
    }
    let point = parse_fiber_values(fiber, p.ring())?;
    let fiber_rendered = point
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ");
    let fiber_pres = fiber_presentation(&p, &point)?;
    let report = gm_orbits(&fiber_pres, q, budget)?;
    let line_sheaf_degree = match gg_line_sheaf_degree(p.jet_order()) {
        ProjDegree::EmptyScheme => None,
        ProjDegree::LineSheafDegree(d) => Some(d),
    };
    Ok(OrbitsReport {
        command: "orbits".to_string(),
        file: file_name(file),
        q,
        jet_order: m,
        fiber: fiber_rendered,
        total_points: report.total_points as u64,
        zero_section_points: report.zero_section_points as u64,
        orbit_count: report.orbit_count as u64,
        line_sheaf_degree,
        dilations_preserve_relations: report.dilations_preserve_relations,
        orbit_sizes_divide_group: report.orbit_sizes_divide_group,
        orbits: report
            .orbits
            .iter()
            .map(|o| OrbitEntry {
                representative: o.representative.render(&report.generators),
                size: o.size as u64,
                stabilizer_size: o.stabilizer_size as u64,
            })
            .collect(),
    })
}

/// Builds the endomorphism given by `--map` strings; generators without an
/// explicit image map to themselves.
fn build_base_map(p: &Presentation, specs: &[String]) -> Result<GradedAlgebraMap, CliError> {
    if p.jet_order() != 0 {
        return Err(CliError::semantic(
            "induced maps need a base presentation (jet order 0)".to_string(),
        ));
    }
    let scope = p.scope();
    let mut images: BTreeMap<JetVariable, Polynomial> = p
        .generators()
        .iter()
        .map(|g| (g.clone(), Polynomial::variable(p.ring(), g.clone())))
        .collect();
    for spec in specs {
        let (name, expr) = spec
            .split_once("->")
            .ok_or_else(|| CliError::parse(format!("map `{spec}` is not `gen -> expression`")))?;
        let name = name.trim();
        let gen = JetVariable::base_var(name);
        if !p.generators().contains(&gen) {
            return Err(CliError::semantic(format!(
                "`{name}` is not a generator of the presentation"
            )));
        }
        let image = parse_poly(expr.trim(), &scope, p.ring())
            .map_err(|e| parse_error_in_param("--map", e))?;
        images.insert(gen, image);
    }
    Ok(GradedAlgebraMap::new(p.clone(), p.clone(), images, WeightRule::Preserving)?)
}

pub fn cmd_induced(
    file: &Path,
    maps: &[String],
    q: u64,
    m: u32,
    budget: u128,
) -> Result<InducedReport, CliError> {
    let input = load(file)?;
    let phi = build_base_map(&input.presentation, maps)?;
    let jet_phi = induced_map(&phi, m)?;
    let induced_images: Vec<String> = jet_phi
        .source()
        .generators()
        .iter()
        .map(|g| format!("{g} -> {}", jet_phi.image_of(g)))
        .collect();
    let image_report = jet_map_image(&phi, m, q, budget)?;
    Ok(InducedReport {
        command: "induced".to_string(),
        file: file_name(file),
        map: maps.to_vec(),
        q,
        jet_order: m,
        induced_images,
        target_points: image_report.target_count as u64,
        image_points: image_report.image_count as u64,
        surjective: image_report.surjective,
        non_image: image_report
            .non_image
            .iter()
            .map(|p| p.render(&image_report.target_generators))
            .collect(),
    })
}

pub fn cmd_leading_form(
    file: &Path,
    b: &str,
    e_vars: &str,
    m: u32,
) -> Result<LeadingFormReport, CliError> {
    let input = load(file)?;
    let p = &input.presentation;
    let b_poly =
        parse_poly(b, &p.scope(), p.ring()).map_err(|e| parse_error_in_param("--b", e))?;
    let e_list: Vec<String> = e_vars.split(',').map(|s| s.trim().to_string()).collect();
    let survivor = leading_form_restriction(p, &b_poly, &e_list, m)?;
    Ok(LeadingFormReport {
        command: "leading-form".to_string(),
        file: file_name(file),
        b: b.to_string(),
        e_vars: e_list,
        jet_order: m,
        leading_form: survivor.to_string(),
    })
}

pub struct VerifyParams {
    pub q: Option<u64>,
    pub m: Option<u32>,
    pub i: Option<u32>,
    pub j: Option<u32>,
    pub seed: u64,
    pub budget: u128,
}

impl VerifyParams {
    fn require_q(&self) -> Result<u64, CliError> {
        self.q.ok_or_else(|| CliError::parse("this check needs --q <prime>".to_string()))
    }

    fn require_m(&self) -> Result<u32, CliError> {
        self.m.ok_or_else(|| CliError::parse("this check needs --m <order>".to_string()))
    }
}

fn declared_params(check: &str, params: &VerifyParams) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let Some(q) = params.q {
        out.insert("q".to_string(), q.to_string());
    }
    if let Some(m) = params.m {
        out.insert("m".to_string(), m.to_string());
    }
    if let Some(i) = params.i {
        out.insert("i".to_string(), i.to_string());
    }
    if let Some(j) = params.j {
        out.insert("j".to_string(), j.to_string());
    }
    if check == "leibniz" {
        out.insert("seed".to_string(), params.seed.to_string());
    }
    out
}

pub fn cmd_verify(
    check: &str,
    file: &Path,
    params: &VerifyParams,
) -> Result<(VerifyReport, bool), CliError> {
    let input = load(file)?;
    let mut report = VerifyReport::new(check, &file_name(file), declared_params(check, params));
    match check {
        "leibniz" => verify_leibniz(&input, params, &mut report)?,
        "desideratum" => verify_desideratum(&input, params, &mut report)?,
        "product" => verify_product(&input, params, &mut report)?,
        "localization" => verify_localization(&input, params, &mut report)?,
        "base-change" => verify_base_change(&input, params, &mut report)?,
        "first-sequence" => verify_first_sequence(&input, params, &mut report)?,
        "dilation" => verify_dilation(&input, params, &mut report)?,
        "functoriality" => verify_functoriality(&input, params, &mut report)?,
        "truncation" => verify_truncation(&input, params, &mut report)?,
        other => return Err(CliError::parse(format!("unknown check `{other}`"))),
    }
    let ok = report.finalize();
    Ok((report, ok))
}

const LEIBNIZ_CASES: u32 = 200;

fn verify_leibniz(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let p = &input.presentation;
    if p.generators().is_empty() {
        return Err(CliError::semantic("leibniz check needs at least one generator".to_string()));
    }
    let vars: Vec<JetVariable> = p.base_generators().into_iter().take(3).collect();
    let ctx = p.prolongation_context(4)?;
    let mut sampler = PolySampler::new(params.seed);
    let mut leibniz_ok = 0u32;
    let mut additive_ok = 0u32;
    let mut homogeneous_ok = 0u32;
    let mut first_failure: Option<String> = None;
    for _ in 0..LEIBNIZ_CASES {
        let f = sampler.polynomial(p.ring(), &vars, 3, 4);
        let g = sampler.polynomial(p.ring(), &vars, 3, 4);
        let k = sampler.range(0, 4);
        let verdict = leibniz_check(&f, &g, k, &ctx).map_err(JetError::from)?;
        if verdict.holds {
            leibniz_ok += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!(
                "d_{k}({f})*({g}) differs from the convolution by {}",
                verdict.difference
            ));
        }
        let sum = &f + &g;
        let lhs = prolong(&sum, k, &ctx).map_err(JetError::from)?;
        let rhs = &prolong(&f, k, &ctx).map_err(JetError::from)?
            + &prolong(&g, k, &ctx).map_err(JetError::from)?;
        if lhs == rhs {
            additive_ok += 1;
        }
        let info = prolong(&f, k, &ctx).map_err(JetError::from)?.weighted_degree_info();
        if info.is_homogeneous && (info.weight.is_none() || info.weight == Some(k as u64)) {
            homogeneous_ok += 1;
        }
    }
    report.push(
        Assertion::check(
            "divided Leibniz rule",
            leibniz_ok == LEIBNIZ_CASES,
            match &first_failure {
                None => format!("{leibniz_ok}/{LEIBNIZ_CASES} random cases hold exactly"),
                Some(msg) => format!("{leibniz_ok}/{LEIBNIZ_CASES}; first failure: {msg}"),
            },
        )
        .with_numbers([("cases", LEIBNIZ_CASES as u64), ("held", leibniz_ok as u64)]),
    );
    report.push(
        Assertion::check(
            "additivity of d_k",
            additive_ok == LEIBNIZ_CASES,
            format!("{additive_ok}/{LEIBNIZ_CASES} random cases hold exactly"),
        )
        .with_numbers([("cases", LEIBNIZ_CASES as u64), ("held", additive_ok as u64)]),
    );
    report.push(
        Assertion::check(
            "weighted homogeneity of d_k",
            homogeneous_ok == LEIBNIZ_CASES,
            format!("{homogeneous_ok}/{LEIBNIZ_CASES} prolongations homogeneous of their index"),
        )
        .with_numbers([("cases", LEIBNIZ_CASES as u64), ("held", homogeneous_ok as u64)]),
    );
    Ok(())
}

fn verify_desideratum(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let q = params.require_q()?;
    let m = params.require_m()?;
    let r = desideratum_check(&input.presentation, q, m, params.budget)?;
    report.push(
        Assertion::check(
            "jet points equal truncated arcs",
            r.counts_equal,
            format!("{} = {}", r.jet_point_count, r.arc_count),
        )
        .with_numbers([
            ("jet_points", r.jet_point_count as u64),
            ("arcs", r.arc_count as u64),
        ]),
    );
    report.push(Assertion::check(
        "translations mutually inverse",
        r.translations_mutually_inverse,
        format!("round trips identical on all {} points", r.jet_point_count),
    ));
    Ok(())
}

fn verify_product(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let m = params.m.unwrap_or(1);
    let p = &input.presentation;
    let check = product_presentation(p, p, m)?;
    report.push(Assertion::check(
        "jets of the product are the union of the jets",
        check.jet_of_product_equals_product_of_jets,
        format!(
            "product of the presentation with a renamed copy of itself at m={m}"
        ),
    ));
    if let Some(q) = params.q {
        let prod_jets = jet_presentation(&check.product, m)?;
        let p_jets = jet_presentation(p, m)?;
        let prod_count = oracle::count_points(&prod_jets, q, params.budget)?;
        let p_count = oracle::count_points(&p_jets, q, params.budget)?;
        report.push(
            Assertion::check(
                "point counts multiply",
                prod_count == p_count * p_count,
                format!("{prod_count} = {p_count}^2 over F{q}"),
            )
            .with_numbers([
                ("product_points", prod_count as u64),
                ("factor_points", p_count as u64),
            ]),
        );
    }
    Ok(())
}

fn verify_localization(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let q = params.require_q()?;
    let m = params.require_m()?;
    let p = &input.presentation;
    let first = p
        .base_generators()
        .first()
        .cloned()
        .ok_or_else(|| CliError::semantic("localization check needs a generator".to_string()))?;
    let s = Polynomial::variable(p.ring(), first.clone());
    let r = localization_check(p, &s, m, q, params.budget)?;
    report.push(
        Assertion::check(
            "localized jets match jets off the vanishing locus",
            r.bijective && r.localized_count == r.expected_count,
            format!(
                "inverting {first}: {} localized jet points over F{q} project bijectively onto {} jet points with {first} != 0",
                r.localized_count, r.expected_count
            ),
        )
        .with_numbers([
            ("localized_points", r.localized_count as u64),
            ("expected_points", r.expected_count as u64),
        ]),
    );
    Ok(())
}

fn verify_base_change(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let q = params.require_q()?;
    let m = params.m.unwrap_or(2);
    let p = &input.presentation;
    if p.ring() != CoefficientRing::Integers {
        return Err(CliError::semantic(
            "base-change check needs a presentation over ZZ".to_string(),
        ));
    }
    let fq = CoefficientRing::prime_field(q).map_err(|e| CliError::semantic(e.to_string()))?;
    let jet_then_map = jet_presentation(p, m)?.map_coefficients(fq)?;
    let map_then_jet = jet_presentation(&p.map_coefficients(fq)?, m)?;
    let equal = jet_then_map.relations() == map_then_jet.relations();
    report.push(
        Assertion::check(
            "jets commute with reduction mod p",
            equal,
            format!(
                "{} relations agree relation-by-relation over F{q} at m={m}",
                map_then_jet.relations().len()
            ),
        )
        .with_numbers([("relations", map_then_jet.relations().len() as u64)]),
    );
    Ok(())
}

fn verify_first_sequence(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let m = params.require_m()?;
    let tower = input
        .tower
        .as_ref()
        .ok_or_else(|| CliError::semantic("first-sequence needs a tower file".to_string()))?;
    let r = first_sequence_check(tower, m)?;
    let kernel: Vec<String> = r.kernel_generators.iter().map(|p| p.to_string()).collect();
    report.push(
        Assertion::check(
            "kernel equals the ideal of positive-weight inner jets",
            r.holds,
            if kernel.is_empty() {
                "trivial tower: both ideals are zero".to_string()
            } else {
                format!("kernel generated by {}", kernel.join(", "))
            },
        )
        .with_numbers([("kernel_generators", kernel.len() as u64)]),
    );
    Ok(())
}

fn verify_dilation(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let q = params.require_q()?;
    let m = params.require_m()?;
    let p = map_to_prime_field(&input.presentation, q)?;
    let ring = p.ring();

    let one = dilation_map(&p, m, DilationScalar::Value(ring.one()))?;
    report.push(Assertion::check(
        "dilation by 1 is the identity",
        one.is_identity(),
        "generator images all fixed".to_string(),
    ));

    let zero = dilation_map(&p, m, DilationScalar::Value(ring.zero()))?;
    let zero_is_section = zero.images().iter().all(|(g, img)| {
        if g.order() == 0 {
            img == &Polynomial::variable(ring, g.clone())
        } else {
            img.is_zero()
        }
    });
    report.push(Assertion::check(
        "dilation by 0 is the zero section after projection",
        zero_is_section,
        "positive-weight generators map to 0, weight-0 generators are fixed".to_string(),
    ));

    let mut law_ok = true;
    for z in 1..q {
        for w in 1..q {
            let dz = dilation_map(&p, m, DilationScalar::Value(ring.from_i64(z as i64)))?;
            let dw = dilation_map(&p, m, DilationScalar::Value(ring.from_i64(w as i64)))?;
            let dzw =
                dilation_map(&p, m, DilationScalar::Value(ring.from_i64((z * w) as i64)))?;
            if !dz.compose(&dw)?.images_equal(&dzw) {
                law_ok = false;
            }
        }
    }
    report.push(Assertion::check(
        "group law on generators",
        law_ok,
        format!("dilation(z) then dilation(w) equals dilation(z*w) for all z, w in F{q}*"),
    ));

    let jets = jet_presentation(&p, m)?;
    let fq = FiniteRing::prime(q).map_err(|e| CliError::semantic(e.to_string()))?;
    let enumeration = enumerate_homs(&jets, fq, params.budget)?;
    let point_set: std::collections::BTreeSet<_> = enumeration.points.iter().cloned().collect();
    let mut closed = true;
    let mut zero_matches_section = true;
    let mut identity_fixes = true;
    for pt in &enumeration.points {
        for z in 0..q {
            let moved = dilate_point(&enumeration.generators, pt, z, q);
            if !point_set.contains(&moved) {
                closed = false;
            }
            if z == 0 {
                let section_ok = enumeration
                    .generators
                    .iter()
                    .zip(moved.values().iter().zip(pt.values()))
                    .all(|(g, (mv, pv))| {
                        if g.order() == 0 {
                            mv == pv
                        } else {
                            jetalg::series::Carrier::is_zero(mv)
                        }
                    });
                if !section_ok {
                    zero_matches_section = false;
                }
            }
            if z == 1 && &moved != pt {
                identity_fixes = false;
            }
        }
    }
    report.push(
        Assertion::check(
            "dilated points satisfy the relations",
            closed,
            format!(
                "all {} jet points stay on the jet space under every z in F{q}",
                enumeration.count()
            ),
        )
        .with_numbers([("points", enumeration.count() as u64)]),
    );
    report.push(Assertion::check(
        "z=0 sends each point to its zero section, z=1 fixes it",
        zero_matches_section && identity_fixes,
        "checked on every enumerated point".to_string(),
    ));
    Ok(())
}

fn verify_functoriality(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let m = params.m.unwrap_or(2);
    let p = &input.presentation;
    if !p.relations().is_empty() || p.jet_order() != 0 {
        return Err(CliError::semantic(
            "functoriality check needs a free presentation".to_string(),
        ));
    }
    let scope = p.scope();
    let mk = |exprs: &dyn Fn(&str) -> String| -> Result<GradedAlgebraMap, CliError> {
        let images = p
            .generators()
            .iter()
            .map(|g| {
                let text = exprs(g.base());
                let poly = parse_poly(&text, &scope, p.ring())
                    .map_err(|e| parse_error_in_param("chain map", e))?;
                Ok((g.clone(), poly))
            })
            .collect::<Result<BTreeMap<_, _>, CliError>>()?;
        Ok(GradedAlgebraMap::new(p.clone(), p.clone(), images, WeightRule::Preserving)?)
    };
    let chain = [
        mk(&|x: &str| format!("{x}^2"))?,
        mk(&|x: &str| format!("{x}^3"))?,
        mk(&|x: &str| format!("{x} + 1"))?,
    ];
    let labels = ["x -> x^2", "x -> x^3", "x -> x + 1"];

    for w in 0..2 {
        let composed = chain[w].compose(&chain[w + 1])?;
        let lhs = induced_map(&composed, m)?;
        let rhs = induced_map(&chain[w], m)?.compose(&induced_map(&chain[w + 1], m)?)?;
        report.push(Assertion::check(
            "induced map of a composition",
            lhs.images_equal(&rhs),
            format!("({}) then ({}) at m={m}", labels[w], labels[w + 1]),
        ));
    }
    let triple = chain[0].compose(&chain[1])?.compose(&chain[2])?;
    let lhs = induced_map(&triple, m)?;
    let rhs = induced_map(&chain[0], m)?
        .compose(&induced_map(&chain[1], m)?)?
        .compose(&induced_map(&chain[2], m)?)?;
    report.push(Assertion::check(
        "induced map of the full chain",
        lhs.images_equal(&rhs),
        format!("three-map chain at m={m}"),
    ));

    let identity = GradedAlgebraMap::identity(p);
    report.push(Assertion::check(
        "induced identity is the identity",
        induced_map(&identity, m)?.is_identity(),
        format!("at m={m}"),
    ));
    Ok(())
}

fn verify_truncation(
    input: &LoadedInput,
    params: &VerifyParams,
    report: &mut VerifyReport,
) -> Result<(), CliError> {
    let q = params.require_q()?;
    let i = params
        .i
        .ok_or_else(|| CliError::parse("truncation check needs --i <order>".to_string()))?;
    let j = params
        .j
        .ok_or_else(|| CliError::parse("truncation check needs --j <order>".to_string()))?;
    if i > j {
        return Err(CliError::parse("--i must not exceed --j".to_string()));
    }
    let p = &input.presentation;
    match jetalg::maps::truncation_map(p, i, j) {
        Ok(_) => report.push(Assertion::pass(
            "truncation map well-defined",
            format!("every order-{i} jet relation lies in the order-{j} relation ideal"),
        )),
        Err(e) => report.push(Assertion::fail("truncation map well-defined", e.to_string())),
    }
    let r = truncation_surjectivity(p, i, j, q, params.budget)?;
    if r.surjective {
        report.push(
            Assertion::check(
                "point-level surjectivity",
                true,
                format!(
                    "all {} J_{i} points lift to J_{j} over F{q}",
                    r.target_count
                ),
            )
            .with_numbers([
                ("target_points", r.target_count as u64),
                ("image_points", r.image_count as u64),
            ]),
        );
    } else {
        let witness = r.witness.as_ref().expect("witness accompanies non-surjectivity");
        report.push(
            Assertion::witness(
                "point-level surjectivity fails",
                format!(
                    "J_{i} point ({}) has no lift to J_{j} over F{q}; image covers {} of {} points",
                    witness.render(&r.target_generators),
                    r.image_count,
                    r.target_count
                ),
            )
            .with_numbers([
                ("target_points", r.target_count as u64),
                ("image_points", r.image_count as u64),
            ]),
        );
    }
    Ok(())
}
