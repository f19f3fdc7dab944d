//! Randomized algebraic property suites: ring axioms, canonical-form
//! idempotence, parse/print round trips, series laws, prolongation laws, and
//! base-change commutation.

use jetalg::coeff::CoefficientRing;
use jetalg::parse::{parse_poly, VariableScope};
use jetalg::poly::Polynomial;
use jetalg::presentation::{jet_presentation, Presentation};
use jetalg::prolong::{leibniz_check, prolong, ProlongationContext};
use jetalg::sample::PolySampler;
use jetalg::series::{Carrier, TruncatedSeries};
use jetalg::{Coeff, JetVariable};
use proptest::prelude::*;

fn rings() -> [CoefficientRing; 3] {
    [
        CoefficientRing::Rationals,
        CoefficientRing::Integers,
        CoefficientRing::prime_field(7).unwrap(),
    ]
}

fn base_vars() -> Vec<JetVariable> {
    vec![
        JetVariable::base_var("x"),
        JetVariable::base_var("y"),
        JetVariable::base_var("z"),
    ]
}

#[test]
fn ring_axioms_hold_on_random_triples() {
    let vars = base_vars();
    for ring in rings() {
        let mut sampler = PolySampler::new(0xABCD);
        for _ in 0..500 {
            let a = sampler.polynomial(ring, &vars, 3, 3);
            let b = sampler.polynomial(ring, &vars, 3, 3);
            let c = sampler.polynomial(ring, &vars, 3, 3);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert!((&a - &a).is_zero());
            assert_eq!(&a * &Polynomial::one(ring), a);
        }
    }
}

#[test]
fn map_coefficients_commutes_with_arithmetic() {
    let vars = base_vars();
    let zz = CoefficientRing::Integers;
    for target in [CoefficientRing::Rationals, CoefficientRing::prime_field(5).unwrap()] {
        let mut sampler = PolySampler::new(99);
        for _ in 0..200 {
            let a = sampler.polynomial(zz, &vars, 3, 3);
            let b = sampler.polynomial(zz, &vars, 3, 3);
            let sum = (&a + &b).map_coefficients(target).unwrap();
            let prod = (&a * &b).map_coefficients(target).unwrap();
            let am = a.map_coefficients(target).unwrap();
            let bm = b.map_coefficients(target).unwrap();
            assert_eq!(sum, &am + &bm);
            assert_eq!(prod, &am * &bm);
        }
    }
}

#[test]
fn print_parse_round_trip_on_random_polynomials() {
    let vars: Vec<JetVariable> = vec![
        JetVariable::base_var("x"),
        JetVariable::new("x", 1),
        JetVariable::new("x", 2),
        JetVariable::base_var("y"),
        JetVariable::new("y", 1),
    ];
    let scope = VariableScope::new(vars.clone(), []);
    for ring in rings() {
        let mut sampler = PolySampler::new(0xF00D);
        for _ in 0..300 {
            let f = sampler.polynomial(ring, &vars, 4, 6);
            let printed = f.to_string();
            let reparsed = parse_poly(&printed, &scope, ring).unwrap();
            assert_eq!(f, reparsed, "round trip failed on `{printed}`");
        }
    }
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(coeffs in proptest::collection::vec((-20i64..20, 0u32..4, 0u32..3), 0..8)) {
        // building from terms twice gives the same map as building once
        let ring = CoefficientRing::Rationals;
        let x = JetVariable::base_var("x");
        let y = JetVariable::new("y", 1);
        let terms: Vec<_> = coeffs
            .iter()
            .map(|&(c, ex, ey)| {
                (
                    jetalg::Monomial::from_exponents([(x.clone(), ex), (y.clone(), ey)]),
                    ring.from_i64(c),
                )
            })
            .collect();
        let once = Polynomial::from_terms(ring, terms.clone());
        let again = Polynomial::from_terms(ring, once.terms().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(once, again);
    }

    #[test]
    fn series_scale_t_composes(a0 in -9i64..9, a1 in -9i64..9, a2 in -9i64..9, z in -9i64..9, w in -9i64..9) {
        let qq = CoefficientRing::Rationals;
        let s = TruncatedSeries::new(vec![qq.from_i64(a0), qq.from_i64(a1), qq.from_i64(a2)]);
        let zc = qq.from_i64(z);
        let wc = qq.from_i64(w);
        let zw = zc.mul(&wc);
        prop_assert_eq!(s.scale_t(&zc).scale_t(&wc), s.scale_t(&zw));
    }
}

fn random_series(sampler: &mut PolySampler, ring: CoefficientRing, m: u32) -> TruncatedSeries<Coeff> {
    TruncatedSeries::new((0..=m).map(|_| sampler.coeff(ring)).collect())
}

#[test]
fn series_multiplication_laws() {
    for ring in [CoefficientRing::Rationals, CoefficientRing::prime_field(7).unwrap()] {
        let mut sampler = PolySampler::new(0xBEEF);
        let one = TruncatedSeries::constant(ring.one(), 3);
        for _ in 0..200 {
            let a = random_series(&mut sampler, ring, 3);
            let b = random_series(&mut sampler, ring, 3);
            let c = random_series(&mut sampler, ring, 3);
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(a.mul(&one).unwrap(), a);
        }
    }
}

#[test]
fn series_scale_t_is_a_ring_endomorphism() {
    for ring in [CoefficientRing::Rationals, CoefficientRing::prime_field(7).unwrap()] {
        let mut sampler = PolySampler::new(0xCAFE);
        for _ in 0..200 {
            let a = random_series(&mut sampler, ring, 3);
            let b = random_series(&mut sampler, ring, 3);
            let z = sampler.coeff(ring);
            assert_eq!(
                a.mul(&b).unwrap().scale_t(&z),
                a.scale_t(&z).mul(&b.scale_t(&z)).unwrap()
            );
            assert_eq!(
                a.add(&b).unwrap().scale_t(&z),
                a.scale_t(&z).add(&b.scale_t(&z)).unwrap()
            );
        }
    }
}

#[test]
fn leibniz_suite_over_rationals_and_f7() {
    let vars = base_vars();
    let ctx = ProlongationContext::new(
        4,
        vars.iter().map(|v| v.base().to_string()),
        [],
    )
    .unwrap();
    for ring in [CoefficientRing::Rationals, CoefficientRing::prime_field(7).unwrap()] {
        let mut sampler = PolySampler::new(2024);
        for _ in 0..200 {
            let f = sampler.polynomial(ring, &vars, 3, 4);
            let g = sampler.polynomial(ring, &vars, 3, 4);
            let k = sampler.range(0, 4);
            let verdict = leibniz_check(&f, &g, k, &ctx).unwrap();
            assert!(verdict.holds, "Leibniz failed: d_{k}, diff {}", verdict.difference);
            // additivity
            assert_eq!(
                prolong(&(&f + &g), k, &ctx).unwrap(),
                &prolong(&f, k, &ctx).unwrap() + &prolong(&g, k, &ctx).unwrap()
            );
        }
    }
}

#[test]
fn constants_annihilate_under_prolongation() {
    let ctx = ProlongationContext::new(
        3,
        ["x".to_string()],
        ["a".to_string(), "b".to_string()],
    )
    .unwrap();
    let qq = CoefficientRing::Rationals;
    let consts = vec![JetVariable::base_var("a"), JetVariable::base_var("b")];
    let mut sampler = PolySampler::new(5);
    for _ in 0..100 {
        let f = sampler.polynomial(qq, &consts, 3, 4);
        for k in 1..=3 {
            assert!(prolong(&f, k, &ctx).unwrap().is_zero());
        }
        assert_eq!(prolong(&f, 0, &ctx).unwrap(), f);
    }
}

#[test]
fn prolongations_are_weighted_homogeneous() {
    let vars = base_vars();
    let ctx = ProlongationContext::new(
        4,
        vars.iter().map(|v| v.base().to_string()),
        [],
    )
    .unwrap();
    let mut sampler = PolySampler::new(31);
    for _ in 0..200 {
        let f = sampler.polynomial(CoefficientRing::Rationals, &vars, 3, 4);
        for k in 0..=4u32 {
            let d = prolong(&f, k, &ctx).unwrap();
            let info = d.weighted_degree_info();
            assert!(info.is_homogeneous);
            if !d.is_zero() {
                assert_eq!(info.weight, Some(k as u64));
            }
        }
    }
}

#[test]
fn truncation_coherence_of_prolongation() {
    // prolong at a lower order is prolong at a higher order with the high
    // jets discarded (they never appear in d_k for k <= m')
    let vars = base_vars();
    let mk_ctx = |m: u32| {
        ProlongationContext::new(m, vars.iter().map(|v| v.base().to_string()), []).unwrap()
    };
    let mut sampler = PolySampler::new(77);
    for _ in 0..100 {
        let f = sampler.polynomial(CoefficientRing::Rationals, &vars, 3, 4);
        for m_lo in 0..=3u32 {
            for m_hi in m_lo..=4u32 {
                for k in 0..=m_lo {
                    assert_eq!(
                        prolong(&f, k, &mk_ctx(m_lo)).unwrap(),
                        prolong(&f, k, &mk_ctx(m_hi)).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn base_change_commutes_with_prolongation() {
    // reduce mod p then prolong equals prolong then reduce mod p
    let vars = base_vars();
    let zz = CoefficientRing::Integers;
    let ctx = ProlongationContext::new(
        3,
        vars.iter().map(|v| v.base().to_string()),
        [],
    )
    .unwrap();
    let mut sampler = PolySampler::new(0x5EED);
    for _ in 0..50 {
        let f = sampler.polynomial(zz, &vars, 3, 4);
        for p in [2u64, 3, 5] {
            let fp = CoefficientRing::prime_field(p).unwrap();
            let reduced = f.map_coefficients(fp).unwrap();
            for k in 0..=3 {
                assert_eq!(
                    prolong(&f, k, &ctx).unwrap().map_coefficients(fp).unwrap(),
                    prolong(&reduced, k, &ctx).unwrap()
                );
            }
        }
    }
}

#[test]
fn jet_relations_are_homogeneous_for_sampled_presentations() {
    let qq = CoefficientRing::Rationals;
    let scope = VariableScope::new(
        [JetVariable::base_var("x"), JetVariable::base_var("y")],
        [],
    );
    let presentations = [
        vec!["y^2 - x^3"],
        vec!["x*y - 1"],
        vec!["y^2 - x^3", "x*y - 1"],
        vec!["x^2 + y^2 - 1"],
    ];
    for relations in presentations {
        let rels: Vec<Polynomial> =
            relations.iter().map(|t| parse_poly(t, &scope, qq).unwrap()).collect();
        let p = Presentation::new(
            qq,
            Vec::new(),
            vec![JetVariable::base_var("x"), JetVariable::base_var("y")],
            rels,
            0,
        )
        .unwrap();
        for m in 1..=4u32 {
            let jets = jet_presentation(&p, m).unwrap();
            for r in jets.relations() {
                assert!(r.weighted_degree_info().is_homogeneous, "not homogeneous: {r}");
            }
        }
    }
}

#[test]
fn truncation_maps_form_a_directed_system() {
    let qq = CoefficientRing::Rationals;
    let scope = VariableScope::new(
        [JetVariable::base_var("x"), JetVariable::base_var("y")],
        [],
    );
    let cusp = Presentation::new(
        qq,
        Vec::new(),
        vec![JetVariable::base_var("x"), JetVariable::base_var("y")],
        vec![parse_poly("y^2 - x^3", &scope, qq).unwrap()],
        0,
    )
    .unwrap();
    for i in 0..=4u32 {
        for j in i..=4 {
            for k in j..=4 {
                let fij = jetalg::maps::truncation_map(&cusp, i, j).unwrap();
                let fjk = jetalg::maps::truncation_map(&cusp, j, k).unwrap();
                let fik = jetalg::maps::truncation_map(&cusp, i, k).unwrap();
                assert!(fij.compose(&fjk).unwrap().images_equal(&fik));
            }
        }
    }
}
