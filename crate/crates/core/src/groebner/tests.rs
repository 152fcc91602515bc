use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::kernel::{parse_polynomial, PrimeField, Rationals};

fn qring(names: &[&str]) -> Arc<Ring<Rationals>> {
    Ring::standard(Rationals, names).unwrap()
}

fn p(r: &Arc<Ring<Rationals>>, s: &str) -> Polynomial<Rationals> {
    parse_polynomial(s, r).unwrap()
}

fn rendered(gb: &GroebnerBasis<Rationals>) -> Vec<String> {
    let mut v: Vec<String> = gb.elements().iter().map(|e| e.render()).collect();
    v.sort();
    v
}

#[test]
fn linear_generators() {
    let r = qring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x", "y"]).unwrap();
    assert_eq!(rendered(&i.groebner_basis().unwrap()), vec!["x", "y"]);
}

#[test]
fn single_s_pair_adds_y_cubed() {
    let r = qring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2+y^2", "x*y"]).unwrap();
    let gb = i.groebner_basis().unwrap();
    assert_eq!(rendered(&gb), vec!["x*y", "x^2 + y^2", "y^3"]);
    assert!(gb.check_criterion());
    assert!(gb.normal_form(&p(&r, "x^2*y")).is_zero());
    assert_eq!(gb.normal_form(&p(&r, "1")), p(&r, "1"));
}

#[test]
fn unit_not_in_maximal_ideal() {
    let r = qring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x", "y"]).unwrap();
    assert!(!i.contains(&p(&r, "1")).unwrap());
    assert!(i.contains(&p(&r, "x*y + 3*y^2")).unwrap());
}

#[test]
fn eliminating_x_gives_the_parametrized_curve() {
    // graded so T0 - x and T1 - x^2 are homogeneous
    let r = Ring::new(
        Rationals,
        vec!["x".into(), "T0".into(), "T1".into()],
        Grading::Weighted(vec![1, 1, 2]),
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let i = Ideal::parse(&r, &["T0 - x", "T1 - x^2"]).unwrap();
    let e = eliminate(&i, &[0]).unwrap();
    assert_eq!(e.gens().len(), 1);
    let g = &e.gens()[0];
    let expect = p(e.ring(), "T1 - T0^2");
    assert!(g == &expect || g == &expect.neg());
    // contained in the input
    for g in e.gens() {
        let back = g.map_exponents(&r, |ex| vec![0, ex[0], ex[1]]);
        assert!(i.contains(&back).unwrap());
    }
}

#[test]
fn eliminate_nothing_and_everything() {
    let r = qring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2+y^2", "x*y"]).unwrap();
    let same = eliminate(&i, &[]).unwrap();
    let same = Ideal::new(&r, same.gens().iter().map(|g| g.to_ring(&r)).collect()).unwrap();
    assert!(same.equals(&i).unwrap());
    assert!(eliminate(&i, &[0, 1]).unwrap().is_zero());
}

#[test]
fn saturation_and_quotient_examples() {
    let r = qring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    let x = Ideal::parse(&r, &["x"]).unwrap();
    let s = i.saturate(&x).unwrap();
    assert!(s.is_unit().unwrap());
    // (x^2, xy) : y^infinity = (x)
    let y = Ideal::parse(&r, &["y"]).unwrap();
    let s = i.saturate(&y).unwrap();
    assert!(s.equals(&x).unwrap());
    let m = Ideal::parse(&r, &["x", "y"]).unwrap();
    for q in 1..4 {
        let mq = m.power(q).unwrap();
        assert!(mq.saturate(&m).unwrap().is_unit().unwrap());
    }
    let zero = Ideal::zero(&r);
    assert!(quotient(&zero, &m).unwrap().is_zero());
}

#[test]
fn powers() {
    let r = qring(&["x", "y"]);
    let m = Ideal::parse(&r, &["x", "y"]).unwrap();
    let m2 = m.power(2).unwrap();
    let mut g: Vec<String> = m2.gens().iter().map(|g| g.render()).collect();
    g.sort();
    assert_eq!(g, vec!["x*y", "x^2", "y^2"]);
    assert!(m.power(0).unwrap().is_unit().unwrap());
    let i = Ideal::parse(&r, &["x^5", "x^4*y", "x*y^4", "y^5"]).unwrap();
    let i3 = i.power(3).unwrap();
    assert!(i3.equals(&m.power(15).unwrap()).unwrap());
    let i2 = i.power(2).unwrap();
    assert!(!i2.equals(&m.power(10).unwrap()).unwrap());
}

#[test]
fn syzygy_examples() {
    let r = qring(&["x", "y"]);
    let s = syzygies(&[p(&r, "x"), p(&r, "y")]).unwrap();
    assert_eq!(s.twists, vec![2]);
    let c = &s.columns[0];
    assert!(c[0] == p(&r, "y") && c[1] == p(&r, "-x") || c[0] == p(&r, "-y") && c[1] == p(&r, "x"));
    let s = syzygies(&[p(&r, "x^2"), p(&r, "x*y")]).unwrap();
    assert_eq!(s.twists, vec![3]);
    let c = &s.columns[0];
    assert!(c[0] == p(&r, "y") && c[1] == p(&r, "-x") || c[0] == p(&r, "-y") && c[1] == p(&r, "x"));
}

#[test]
fn syzygies_vanish_on_generators() {
    let r = qring(&["x", "y", "z"]);
    let gens = vec![p(&r, "x^2 - y*z"), p(&r, "x*y - z^2"), p(&r, "y^2 - x*z")];
    let s = syzygies(&gens).unwrap();
    assert_eq!(s.columns.len(), 2);
    for c in &s.columns {
        let mut acc = Polynomial::zero(&r);
        for (a, g) in c.iter().zip(&gens) {
            acc = acc.add(&a.mul(g));
        }
        assert!(acc.is_zero());
    }
}

#[test]
fn intersection_of_coordinate_ideals() {
    let r = qring(&["x", "y"]);
    let a = Ideal::parse(&r, &["x"]).unwrap();
    let b = Ideal::parse(&r, &["y"]).unwrap();
    let c = a.intersect(&b).unwrap();
    assert!(c.equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
}

#[test]
fn prime_field_basis() {
    let r = Ring::standard(PrimeField::new(7).unwrap(), &["x", "y"]).unwrap();
    let i = Ideal::parse(&r, &["x^2+y^2", "x*y"]).unwrap();
    let gb = i.groebner_basis().unwrap();
    assert_eq!(gb.len(), 3);
    assert!(gb.check_criterion());
}

#[test]
fn budget_is_reported() {
    let r = qring(&["x", "y", "z"]);
    let r = r.with_budget(Budget { max_degree: 2, ..Budget::default() });
    let i = Ideal::parse(&r, &["x^2 - y*z", "x*y - z^2"]).unwrap();
    let e = i.groebner_basis().unwrap_err();
    assert!(e.is_budget());
}

#[test]
fn module_mingens_drop_redundant_columns() {
    let r = qring(&["x", "y"]);
    let cols = vec![vec![p(&r, "x"), p(&r, "y")], vec![p(&r, "x^2"), p(&r, "x*y")], vec![p(&r, "y"), p(&r, "0")]];
    let idx = mingens(&r, &[0, 0], &cols).unwrap();
    assert_eq!(idx, vec![0, 2]);
}

use crate::kernel::Budget;

fn arb_poly(nv: usize) -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
    // homogeneous of degree 3 in nv variables
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u16..=3, nv)), 1..4)
}

fn homog(r: &Arc<Ring<PrimeField>>, terms: Vec<(i64, Vec<u16>)>, deg: u16) -> Polynomial<PrimeField> {
    let f = r.field();
    let ts = terms
        .into_iter()
        .map(|(c, mut e)| {
            let s: u16 = e.iter().sum();
            if s > deg {
                e = vec![0; e.len()];
            }
            let s: u16 = e.iter().sum();
            e[0] += deg - s;
            (f.from_i64(c), r.monomial(&e))
        })
        .collect();
    Polynomial::from_terms(r, ts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn basis_properties(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3), mul in arb_poly(3)) {
        let r = Ring::standard(PrimeField::new(32003).unwrap(), &["x", "y", "z"]).unwrap();
        let gens = vec![homog(&r, a, 2), homog(&r, b, 3), homog(&r, c, 3)];
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = i.groebner_basis().unwrap();
        prop_assert!(gb.check_criterion());
        // equal ideals
        let j = Ideal::new(&r, gb.elements().to_vec()).unwrap();
        prop_assert!(j.equals(&i).unwrap());
        // normal form is idempotent and kills combinations of generators
        let m = homog(&r, mul, 1);
        let f = gens[0].mul(&m).add(&gens[1]);
        prop_assert!(gb.normal_form(&f).is_zero());
        let g = m.mul(&m).mul(&m);
        let nf = gb.normal_form(&g);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        // linearity
        let two = r.field().from_i64(2);
        prop_assert_eq!(gb.normal_form(&g.scale(&two).add(&f)), nf.scale(&two));
    }

    #[test]
    fn powers_are_equigenerated(a in arb_poly(3), b in arb_poly(3), q in 1u32..4) {
        let r = Ring::standard(PrimeField::new(32003).unwrap(), &["x", "y", "z"]).unwrap();
        let i = Ideal::new(&r, vec![homog(&r, a, 2), homog(&r, b, 2)]).unwrap();
        let iq = i.power(q).unwrap();
        for g in iq.gens() {
            prop_assert_eq!(g.degree(), Some(2 * q as i64));
        }
    }

    #[test]
    fn saturation_contains_and_is_idempotent(a in arb_poly(3), b in arb_poly(3)) {
        let r = Ring::standard(PrimeField::new(32003).unwrap(), &["x", "y", "z"]).unwrap();
        let i = Ideal::new(&r, vec![homog(&r, a, 2), homog(&r, b, 3)]).unwrap();
        let m = Ideal::parse(&r, &["x", "y", "z"]).unwrap();
        let s = i.saturate(&m).unwrap();
        prop_assert!(s.contains_ideal(&i).unwrap());
        let s2 = s.saturate(&m).unwrap();
        prop_assert!(s2.equals(&s).unwrap());
    }
}
