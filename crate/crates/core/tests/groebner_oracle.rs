//! Independent brute-force oracle for ideal membership over prime fields:
//! exact linear algebra in the space of polynomials of bounded total degree.
//! Membership of f in the degree-D truncation means f is an F_p-linear
//! combination of products (monomial * generator) of total degree <= D.
//!
//! With a graded order, the division algorithm never raises total degree, so
//! against a Groebner basis the degree-deg(f) truncation decides membership
//! exactly; against the raw generators the truncated test is sound but may
//! need a larger D to find a combination.

use jetalg::coeff::CoefficientRing;
use jetalg::groebner::{
    buchberger, check_buchberger_criterion, ideal_membership, normal_form, MonomialOrder,
};
use jetalg::monomial::{JetVariable, Monomial};
use jetalg::poly::Polynomial;
use jetalg::sample::PolySampler;
use jetalg::Coeff;
use std::collections::BTreeMap;

fn residue(c: &Coeff) -> u64 {
    match c {
        Coeff::Prime { value, .. } => *value,
        _ => panic!("oracle works over prime fields"),
    }
}

/// All monomials over `vars` of total degree at most `bound`.
fn monomials_up_to(vars: &[JetVariable], bound: u64) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for v in vars {
        let mut next = Vec::new();
        for m in &out {
            let mut e = 0;
            loop {
                let candidate = m.mul(&Monomial::var(v.clone()).pow(e));
                if candidate.total_degree() > bound {
                    break;
                }
                next.push(candidate);
                e += 1;
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

fn to_vector(f: &Polynomial, index: &BTreeMap<Monomial, usize>) -> Vec<u64> {
    let mut v = vec![0u64; index.len()];
    for (m, c) in f.terms() {
        v[index[m]] = residue(c);
    }
    v
}

/// Solves `columns * x = target` over F_p: row-reduces the augmented matrix
/// and checks consistency.
fn solvable(columns: Vec<Vec<u64>>, target: Vec<u64>, p: u64) -> bool {
    let rows = target.len();
    let ncols = columns.len();
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[r] % p).collect();
            row.push(target[r] % p);
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = inv_mod(m[pivot_row][col], p);
        for c in col..=ncols {
            m[pivot_row][c] = m[pivot_row][c] * inv % p;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && m[r2][col] != 0 {
                let factor = m[r2][col];
                for c in col..=ncols {
                    let sub = factor * m[pivot_row][c] % p;
                    m[r2][c] = (m[r2][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    !(0..rows).any(|r| m[r][..ncols].iter().all(|&v| v == 0) && m[r][ncols] != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Brute-force membership of f in the degree-`bound` truncation of the ideal.
fn linear_membership(f: &Polynomial, gens: &[Polynomial], bound: u64, p: u64) -> bool {
    if f.is_zero() {
        return true;
    }
    let mut vars: Vec<JetVariable> = f.variables();
    for g in gens {
        vars.extend(g.variables());
    }
    vars.sort();
    vars.dedup();
    let universe = monomials_up_to(&vars, bound);
    let index: BTreeMap<Monomial, usize> =
        universe.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut columns = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let gdeg = g.max_total_degree();
        for mu in &universe {
            if mu.total_degree() + gdeg > bound {
                continue;
            }
            let product = g.mul_term(mu, &g.ring().one());
            columns.push(to_vector(&product, &index));
        }
    }
    solvable(columns, to_vector(f, &index), p)
}

#[test]
fn constructed_members_are_recognized() {
    let fp = CoefficientRing::prime_field(5).unwrap();
    let vars = vec![
        JetVariable::base_var("x"),
        JetVariable::base_var("y"),
    ];
    let mut sampler = PolySampler::new(11);
    let mut checked = 0;
    while checked < 50 {
        let g1 = sampler.polynomial(fp, &vars, 2, 3);
        let g2 = sampler.polynomial(fp, &vars, 2, 3);
        if g1.is_zero() || g2.is_zero() {
            continue;
        }
        let h1 = sampler.polynomial(fp, &vars, 2, 3);
        let h2 = sampler.polynomial(fp, &vars, 2, 3);
        let f = &(&h1 * &g1) + &(&h2 * &g2);
        let gens = vec![g1.clone(), g2.clone()];
        let order = MonomialOrder::grevlex_for(gens.iter().chain([&f]));
        assert!(
            ideal_membership(&f, &gens, &order).unwrap(),
            "constructed member rejected: f = {f}, gens = [{g1}, {g2}]"
        );
        // the construction bounds the degree, so the truncated oracle agrees
        let bound = f
            .max_total_degree()
            .max(h1.max_total_degree() + g1.max_total_degree())
            .max(h2.max_total_degree() + g2.max_total_degree());
        assert!(linear_membership(&f, &gens, bound, 5));
        checked += 1;
    }
}

#[test]
fn normal_form_agrees_with_linear_algebra_against_the_basis() {
    // with a graded order, membership is decided inside degree deg(f)
    let fp = CoefficientRing::prime_field(3).unwrap();
    let vars = vec![
        JetVariable::base_var("x"),
        JetVariable::base_var("y"),
    ];
    let mut sampler = PolySampler::new(23);
    let mut agreements = 0;
    let mut members_seen = 0;
    while agreements < 50 {
        let g1 = sampler.polynomial(fp, &vars, 2, 2);
        let g2 = sampler.polynomial(fp, &vars, 2, 2);
        let gens = vec![g1, g2];
        let f = sampler.polynomial(fp, &vars, 3, 4);
        let order = MonomialOrder::grevlex_for(gens.iter().chain([&f]));
        let Ok(gb) = buchberger(&gens, &order) else {
            continue;
        };
        assert!(check_buchberger_criterion(&gb));
        let gb_member = normal_form(&f, &gb).is_zero();
        let la_member = if f.is_zero() {
            true
        } else {
            linear_membership(&f, gb.basis(), f.max_total_degree(), 3)
        };
        assert_eq!(
            gb_member, la_member,
            "disagreement on f = {f} against basis {:?}",
            gb.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>()
        );
        if gb_member {
            members_seen += 1;
        }
        agreements += 1;
    }
    // the sample must exercise both outcomes
    assert!(members_seen > 0, "no member cases sampled");
    assert!(members_seen < 50, "no non-member cases sampled");
}

#[test]
fn truncated_oracle_members_are_confirmed_by_groebner() {
    let fp = CoefficientRing::prime_field(5).unwrap();
    let vars = vec![JetVariable::base_var("x"), JetVariable::base_var("y")];
    let mut sampler = PolySampler::new(37);
    let mut confirmed = 0;
    for _ in 0..200 {
        let g1 = sampler.polynomial(fp, &vars, 2, 2);
        let g2 = sampler.polynomial(fp, &vars, 2, 2);
        let gens = vec![g1, g2];
        let f = sampler.polynomial(fp, &vars, 2, 3);
        if f.is_zero() {
            continue;
        }
        let bound = f.max_total_degree() + 3;
        if linear_membership(&f, &gens, bound, 5) {
            let order = MonomialOrder::grevlex_for(gens.iter().chain([&f]));
            assert!(
                ideal_membership(&f, &gens, &order).unwrap(),
                "oracle found a combination for {f} but membership said no"
            );
            confirmed += 1;
        }
    }
    assert!(confirmed >= 10, "too few members sampled: {confirmed}");
}
