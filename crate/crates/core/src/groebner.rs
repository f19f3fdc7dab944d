//! Buchberger-based Groebner engine over field coefficients.
//!
//! This is the certification backend for map well-definedness and the exact
//! sequence checks: reduced bases, normal forms, ideal membership, ideal
//! equality, and power ideals. Plain Buchberger with the coprime-pair
//! criterion and a hard pair-count bound; all in-scope instances are tiny.

use crate::coeff::{Coeff, CoefficientRing};
use crate::monomial::{JetVariable, Monomial};
use crate::poly::Polynomial;
use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

/// Default bound on the number of S-pairs processed in one basis computation.
pub const DEFAULT_PAIR_LIMIT: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("{0} is not a field; Groebner bases need field coefficients")]
    NotAField(CoefficientRing),
    #[error("generators live in different rings: {0} vs {1}")]
    MixedRings(CoefficientRing, CoefficientRing),
    #[error("pair budget of {limit} S-pairs exceeded")]
    PairLimitExceeded { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lexicographic,
    GradedReverseLexicographic,
}

/// A monomial well-order: lex or graded reverse lex over an explicit variable
/// enumeration (earlier variables are more significant). Variables outside
/// the enumeration are treated as appended after it in canonical order, so
/// extending the enumeration never changes existing comparisons.
#[derive(Debug, Clone)]
pub struct MonomialOrder {
    kind: OrderKind,
    enumeration: Vec<JetVariable>,
    index: BTreeMap<JetVariable, usize>,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Pos<'a> {
    Known(usize),
    Unknown(&'a JetVariable),
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, enumeration: Vec<JetVariable>) -> Self {
        let index = enumeration
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        MonomialOrder { kind, enumeration, index }
    }

    /// Graded reverse lex over the canonical enumeration of the variables
    /// occurring in `polys`; the default order everywhere.
    pub fn grevlex_for<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        Self::for_polys(OrderKind::GradedReverseLexicographic, polys)
    }

    pub fn for_polys<'a>(
        kind: OrderKind,
        polys: impl IntoIterator<Item = &'a Polynomial>,
    ) -> Self {
        let mut vars: Vec<JetVariable> = polys.into_iter().flat_map(|p| p.variables()).collect();
        vars.sort();
        vars.dedup();
        MonomialOrder::new(kind, vars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn enumeration(&self) -> &[JetVariable] {
        &self.enumeration
    }

    fn positions<'a>(&self, m: &'a Monomial) -> BTreeMap<Pos<'a>, u32> {
        m.iter()
            .map(|(v, e)| {
                let pos = match self.index.get(v) {
                    Some(&i) => Pos::Known(i),
                    None => Pos::Unknown(v),
                };
                (pos, e)
            })
            .collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lexicographic => self.cmp_lex(a, b),
            OrderKind::GradedReverseLexicographic => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.cmp_revlex(a, b)),
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let pa = self.positions(a);
        let pb = self.positions(b);
        let mut ia = pa.iter();
        let mut ib = pb.iter();
        let mut na = ia.next();
        let mut nb = ib.next();
        loop {
            match (na, nb) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((qa, ea)), Some((qb, eb))) => match qa.cmp(qb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        na = ia.next();
                        nb = ib.next();
                    }
                },
            }
        }
    }

    /// At the last (least significant) differing position, the smaller
    /// exponent wins.
    fn cmp_revlex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let pa = self.positions(a);
        let pb = self.positions(b);
        let mut ia = pa.iter().rev();
        let mut ib = pb.iter().rev();
        let mut na = ia.next();
        let mut nb = ib.next();
        loop {
            match (na, nb) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((qa, ea)), Some((qb, eb))) => match qa.cmp(qb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(ea);
                        }
                        na = ia.next();
                        nb = ib.next();
                    }
                },
            }
        }
    }

    /// Leading term of a nonzero polynomial under this order.
    pub fn leading_term<'a>(&self, f: &'a Polynomial) -> (&'a Monomial, &'a Coeff) {
        f.terms()
            .max_by(|(ma, _), (mb, _)| self.cmp(ma, mb))
            .expect("leading term of the zero polynomial")
    }
}

/// A reduced Groebner basis: monic, interreduced, every S-polynomial reduces
/// to zero.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }
}

fn validate_field(gens: &[Polynomial]) -> Result<(), GroebnerError> {
    let mut rings = gens.iter().map(Polynomial::ring);
    if let Some(first) = rings.next() {
        if !first.is_field() {
            return Err(GroebnerError::NotAField(first));
        }
        for r in rings {
            if r != first {
                return Err(GroebnerError::MixedRings(first, r));
            }
        }
    }
    Ok(())
}

fn make_monic(f: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (_, lc) = order.leading_term(f);
    let inv = lc.inv().expect("field coefficient");
    f.scale(&inv)
}

/// Remainder of `f` on division by `divisors` (assumed monic): no term of the
/// result is divisible by any divisor's leading monomial.
fn reduce(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = f.ring();
    let mut p = f.clone();
    let mut remainder = Polynomial::zero(ring);
    'outer: while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = order.leading_term(&p);
            (m.clone(), c.clone())
        };
        for g in divisors {
            let (gm, _) = order.leading_term(g);
            if gm.divides(&lm) {
                let q = lm.div(gm);
                p = &p - &g.mul_term(&q, &lc);
                continue 'outer;
            }
        }
        let head = Polynomial::from_terms(ring, [(lm.clone(), lc.clone())]);
        remainder = &remainder + &head;
        p = &p - &head;
    }
    remainder
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, _) = order.leading_term(f);
    let (gm, _) = order.leading_term(g);
    let l = fm.lcm(gm);
    let one = f.ring().one();
    &f.mul_term(&l.div(fm), &one) - &g.mul_term(&l.div(gm), &one)
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`,
/// processing at most `max_pairs` S-pairs. Deterministic given the order and
/// input sequence.
pub fn buchberger_with_limit(
    gens: &[Polynomial],
    order: &MonomialOrder,
    max_pairs: usize,
) -> Result<GroebnerBasis, GroebnerError> {
    validate_field(gens)?;
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(make_monic(g, order));
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push_back((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop_front() {
        processed += 1;
        if processed > max_pairs {
            return Err(GroebnerError::PairLimitExceeded { limit: max_pairs });
        }
        let (mi, _) = order.leading_term(&basis[i]);
        let (mj, _) = order.leading_term(&basis[j]);
        if mi.coprime(mj) {
            // coprime leading monomials: the S-polynomial reduces to zero
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            let monic = make_monic(&r, order);
            let new_index = basis.len();
            basis.push(monic);
            for k in 0..new_index {
                pairs.push_back((k, new_index));
            }
        }
    }
    Ok(GroebnerBasis { order: order.clone(), basis: interreduce(basis, order) })
}

pub fn buchberger(
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_limit(gens, order, DEFAULT_PAIR_LIMIT)
}

/// Minimalizes and tail-reduces a basis, returning it sorted by leading
/// monomial.
fn interreduce(mut basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Polynomial> = Vec::new();
    'next: for i in 0..basis.len() {
        let (mi, _) = order.leading_term(&basis[i]);
        for (j, other) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let (mj, _) = order.leading_term(other);
            if mj.divides(mi) && (mj != mi || j < i) {
                continue 'next;
            }
        }
        keep.push(basis[i].clone());
    }
    basis = keep;
    // reduce each tail against the others
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce(&basis[i], &others, order));
    }
    reduced.sort_by(|a, b| {
        let (ma, _) = order.leading_term(a);
        let (mb, _) = order.leading_term(b);
        order.cmp(ma, mb)
    });
    reduced
}

/// Unique remainder of `f` against a Groebner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce(f, &gb.basis, &gb.order)
}

/// f lies in the ideal generated by `gens` iff its normal form vanishes.
pub fn ideal_membership(
    f: &Polynomial,
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<bool, GroebnerError> {
    let gb = buchberger(gens, order)?;
    Ok(normal_form(f, &gb).is_zero())
}

/// Mutual membership of all generators both ways.
pub fn ideal_equal(
    gens1: &[Polynomial],
    gens2: &[Polynomial],
    order: &MonomialOrder,
) -> Result<bool, GroebnerError> {
    let gb1 = buchberger(gens1, order)?;
    let gb2 = buchberger(gens2, order)?;
    Ok(gens2.iter().all(|g| normal_form(g, &gb1).is_zero())
        && gens1.iter().all(|g| normal_form(g, &gb2).is_zero()))
}

/// Generators of the m-th power ideal: all products of m generators with
/// repetition, deduplicated. m = 0 gives the unit ideal.
pub fn power_ideal(ring: CoefficientRing, gens: &[Polynomial], m: u32) -> Vec<Polynomial> {
    if m == 0 {
        return vec![Polynomial::one(ring)];
    }
    let mut products: Vec<Polynomial> = Vec::new();
    let mut stack: Vec<(usize, Polynomial, u32)> = vec![(0, Polynomial::one(ring), m)];
    while let Some((start, acc, left)) = stack.pop() {
        if left == 0 {
            if !products.contains(&acc) {
                products.push(acc);
            }
            continue;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            stack.push((i, &acc * g, left - 1));
        }
    }
    products.sort_by_key(|p| p.to_string());
    products
}

/// Post-hoc verification that every S-polynomial of the basis reduces to
/// zero; true for every basis this module returns.
pub fn check_buchberger_criterion(gb: &GroebnerBasis) -> bool {
    for i in 0..gb.basis.len() {
        for j in (i + 1)..gb.basis.len() {
            let s = s_polynomial(&gb.basis[i], &gb.basis[j], &gb.order);
            if !reduce(&s, &gb.basis, &gb.order).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, VariableScope};

    fn qq() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    fn scope() -> VariableScope {
        let mut vars = Vec::new();
        for base in ["x", "y"] {
            for k in 0..=2 {
                vars.push(JetVariable::new(base, k));
            }
        }
        VariableScope::new(vars, [])
    }

    fn p(text: &str) -> Polynomial {
        parse_poly(text, &scope(), qq()).unwrap()
    }

    #[test]
    fn single_generator() {
        let gens = vec![p("x")];
        let order = MonomialOrder::grevlex_for(&gens);
        let gb = buchberger(&gens, &order).unwrap();
        assert_eq!(gb.basis(), &[p("x")]);
        assert!(check_buchberger_criterion(&gb));
    }

    #[test]
    fn x2_xy_under_lex() {
        let gens = vec![p("x^2"), p("x*y")];
        let order = MonomialOrder::for_polys(OrderKind::Lexicographic, &gens);
        let gb = buchberger(&gens, &order).unwrap();
        // S(x^2, xy) = y*x^2 - x*xy = 0, so the input is already a basis
        assert_eq!(gb.basis().len(), 2);
        assert!(gb.basis().contains(&p("x^2")));
        assert!(gb.basis().contains(&p("x*y")));
        assert!(check_buchberger_criterion(&gb));
    }

    #[test]
    fn cusp_jet_relations_self_reduce() {
        let gens = vec![p("y^2 - x^3"), p("2*y*d1y - 3*x^2*d1x")];
        let order = MonomialOrder::grevlex_for(&gens);
        let gb = buchberger(&gens, &order).unwrap();
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
        assert!(check_buchberger_criterion(&gb));
    }

    #[test]
    fn normal_form_cases() {
        let gens = vec![p("d1y^2")];
        let order = MonomialOrder::grevlex_for(&gens);
        let gb = buchberger(&gens, &order).unwrap();
        // member reduces to zero
        assert!(normal_form(&p("x*d1y^2"), &gb).is_zero());
        // 1 against a proper ideal stays 1
        assert_eq!(normal_form(&p("1"), &gb), p("1"));
        // d1y is not in the ideal generated by d1y^2
        assert_eq!(normal_form(&p("d1y"), &gb), p("d1y"));
    }

    #[test]
    fn membership_cases() {
        let order = MonomialOrder::grevlex_for(&[p("d1y^2")]);
        assert!(ideal_membership(&p("d1y^2"), &[p("d1y^2")], &order).unwrap());
        assert!(!ideal_membership(&p("x"), &[p("x^2")], &order).unwrap());
    }

    #[test]
    fn ideal_equality() {
        let order = MonomialOrder::grevlex_for(&[p("x"), p("y")]);
        assert!(ideal_equal(&[p("x"), p("y")], &[p("y"), p("x")], &order).unwrap());
        assert!(!ideal_equal(&[p("x")], &[p("x^2")], &order).unwrap());
        assert!(ideal_equal(&[p("d1x")], &[p("d1x"), p("x*d1x")], &order).unwrap());
    }

    #[test]
    fn power_ideal_products() {
        let gens = vec![p("x"), p("y")];
        assert_eq!(power_ideal(qq(), &[p("x")], 2), vec![p("x^2")]);
        let sq = power_ideal(qq(), &gens, 2);
        assert_eq!(sq.len(), 3);
        for expect in [p("x^2"), p("x*y"), p("y^2")] {
            assert!(sq.contains(&expect));
        }
        assert_eq!(power_ideal(qq(), &gens, 3).len(), 4);
        assert_eq!(power_ideal(qq(), &gens, 0), vec![p("1")]);
    }

    #[test]
    fn integers_rejected() {
        let zz = CoefficientRing::Integers;
        let f = Polynomial::variable(zz, JetVariable::base_var("x"));
        let order = MonomialOrder::grevlex_for(&[f.clone()]);
        assert_eq!(
            buchberger(&[f], &order).unwrap_err(),
            GroebnerError::NotAField(zz)
        );
    }

    #[test]
    fn pair_limit_reported() {
        let gens = vec![p("x^2 + y"), p("x*y + x"), p("y^2 - x")];
        let order = MonomialOrder::grevlex_for(&gens);
        assert_eq!(
            buchberger_with_limit(&gens, &order, 1).unwrap_err(),
            GroebnerError::PairLimitExceeded { limit: 1 }
        );
    }

    #[test]
    fn lex_elimination_classic() {
        // lex basis of (x^2 - y, x*y - 1): eliminating x yields y^3 - 1
        let gens = vec![p("x^2 - y"), p("x*y - 1")];
        let order = MonomialOrder::for_polys(OrderKind::Lexicographic, &gens);
        let gb = buchberger(&gens, &order).unwrap();
        assert!(normal_form(&p("y^3 - 1"), &gb).is_zero());
        assert!(check_buchberger_criterion(&gb));
    }
}
