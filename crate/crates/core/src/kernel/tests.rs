use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn qxy() -> Arc<Ring<Rationals>> {
    Ring::standard(Rationals, &["x", "y"]).unwrap()
}

fn bigraded(nx: usize, nt: usize, d: i64) -> Arc<Ring<Rationals>> {
    let mut names: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    names.extend((0..nt).map(|j| format!("T{j}")));
    Ring::new(Rationals, names, Grading::Bigraded { x_vars: nx, d }, MonomialOrder::BigradedGrevlex).unwrap()
}

#[test]
fn parse_normalizes() {
    let r = qxy();
    let p = parse_polynomial("x^2*y - 3*y^3", &r).unwrap();
    assert_eq!(p.len(), 2);
    assert!(p.terms().iter().all(|(_, m)| m.degree() == 3));
    assert_eq!(p.render(), "x^2*y - 3*y^3");
    let q = parse_polynomial("(x + y)^2 - x*(x + 2*y)", &r).unwrap();
    assert_eq!(q.render(), "y^2");
    let h = parse_polynomial("1/2*x - 3/4", &r).unwrap();
    assert_eq!(h.render(), "1/2*x - 3/4");
}

#[test]
fn parse_errors() {
    let r = qxy();
    assert!(matches!(parse_polynomial("x^", &r), Err(Error::Syntax { offset: 2, .. })));
    match parse_polynomial("x + zz", &r).unwrap_err() {
        Error::UnknownVariable { name, offset } => {
            assert_eq!(name, "zz");
            assert_eq!(offset, 4);
        }
        e => panic!("unexpected {e}"),
    }
    assert!(parse_polynomial("1/0*x", &r).is_err());
    let f7 = Ring::standard(PrimeField::new(7).unwrap(), &["x"]).unwrap();
    assert!(matches!(parse_polynomial("3/7*x", &f7), Err(Error::NotInvertible(_))));
    assert_eq!(parse_polynomial("1/3*x", &f7).unwrap().render(), "5*x");
}

#[test]
fn bidegree_examples() {
    let r = bigraded(2, 2, 5);
    let p = parse_polynomial("x0^4*T0", &r).unwrap();
    assert_eq!(p.bidegree(), Bidegree::Homogeneous(9, 1));
    let r1 = bigraded(2, 2, 1);
    let p = parse_polynomial("x0*T1 - x1*T0", &r1).unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p.bidegree(), Bidegree::Homogeneous(2, 1));
    let r2 = bigraded(1, 1, 2);
    let p = parse_polynomial("x0 + T0", &r2).unwrap();
    assert_eq!(p.bidegree(), Bidegree::Inhomogeneous);
}

#[test]
fn order_examples() {
    let r = qxy();
    let x2 = r.monomial(&[2, 0]);
    let xy = r.monomial(&[1, 1]);
    assert_eq!(r.cmp_monomials(&x2, &xy), Ordering::Greater);
    assert_eq!(r.cmp_monomials(&xy, &xy), Ordering::Equal);
    let e = Ring::standard(Rationals, &["x", "T"]).unwrap().with_order(MonomialOrder::BlockElimination(1)).unwrap();
    assert_eq!(e.cmp_monomials(&e.monomial(&[1, 0]), &e.monomial(&[0, 5])), Ordering::Greater);
}

#[test]
fn ring_validation() {
    assert!(Ring::standard(Rationals, &["x", "x"]).is_err());
    assert!(Ring::standard(Rationals, &["1x"]).is_err());
    assert!(Ring::new(Rationals, vec!["x".into()], Grading::Weighted(vec![0]), MonomialOrder::Grevlex).is_err());
    assert!(PrimeField::new(8).is_err());
}

const ORDERS: [MonomialOrder; 4] =
    [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::BlockElimination(2), MonomialOrder::BigradedGrevlex];

fn exps(n: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..6, n)
}

fn small_poly(n: usize) -> impl Strategy<Value = Vec<(i64, i64, Vec<u16>)>> {
    prop::collection::vec((-20i64..20, 1i64..5, exps(n)), 0..5)
}

fn build(r: &Arc<Ring<Rationals>>, t: Vec<(i64, i64, Vec<u16>)>) -> Polynomial<Rationals> {
    let f = r.field();
    Polynomial::from_terms(
        r,
        t.into_iter().map(|(a, b, e)| (f.div(&f.from_i64(a), &f.from_i64(b)), r.monomial(&e))).collect(),
    )
}

proptest! {
    #[test]
    fn orders_are_compatible(a in exps(4), b in exps(4), c in exps(4), k in 0usize..4) {
        let r = bigraded(2, 2, 3).with_order(ORDERS[k]).unwrap();
        let (a, b, c) = (r.monomial(&a), r.monomial(&b), r.monomial(&c));
        prop_assert_eq!(r.cmp_monomials(&a, &b), r.cmp_monomials(&a.mul(&c), &b.mul(&c)));
        if c.exps().iter().any(|e| *e > 0) {
            prop_assert_eq!(r.cmp_monomials(&a.mul(&c), &a), Ordering::Greater);
        }
    }

    #[test]
    fn render_parse_round_trip(t in small_poly(3)) {
        let r = Ring::standard(Rationals, &["x", "y", "z"]).unwrap();
        let p = build(&r, t);
        prop_assert_eq!(parse_polynomial(&p.render(), &r).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
        let r = qxy();
        let (a, b, c) = (build(&r, a), build(&r, b), build(&r, c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn bidegree_of_homogeneous(parts in prop::collection::vec((1i64..5, exps(2), 0u16..3), 1..5)) {
        // every term of bidegree (A, t) = (6 + 2*t_total... ) built to be homogeneous
        let r = bigraded(2, 2, 2);
        let f = r.field();
        let terms: Vec<_> = parts.into_iter().map(|(c, xe, t0)| {
            // x-degree fixed to 4, T-degree fixed to 2
            let xs = (xe[0] % 5).min(4);
            let t0 = t0.min(2);
            (f.from_i64(c), r.monomial(&[xs, 4 - xs, t0, 2 - t0]))
        }).collect();
        let p = Polynomial::from_terms(&r, terms);
        prop_assert_eq!(p.bidegree(), Bidegree::Homogeneous(8, 2));
        for (_, m) in p.terms() {
            prop_assert_eq!(r.bidegree_of(m), Some((8, 2)));
        }
    }
}
