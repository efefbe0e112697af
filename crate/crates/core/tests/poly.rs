use std::sync::Arc;

use apolar::poly::{
    apolar_apply, binary_from_coeffs, coeff_vector, monomials_of_degree, parse_poly,
    parse_poly_with_degree, HomogeneousPoly, VariableSet,
};
use apolar::{Error, Rational};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ring() -> Arc<VariableSet> {
    VariableSet::new(["x", "y", "z"]).unwrap()
}

/// Random form of the given degree in `x, y, z` with small integer
/// coefficients.
fn form(degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    let count = monomials_of_degree(3, degree).len();
    prop::collection::vec(-4i64..=4, count).prop_map(move |cs| {
        let ms = monomials_of_degree(3, degree);
        let cs: Vec<Rational> = cs.into_iter().map(q).collect();
        HomogeneousPoly::from_coefficients(ring(), degree, &ms, &cs)
    })
}

fn op(degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
    form(degree).prop_map(|p| p.rename(ring().dual()).unwrap())
}

#[test]
fn golden_parse_and_apply() {
    let vs = VariableSet::perazzo();
    let f = parse_poly("x0*u^2 + x1*u*v + x2*v^2", &vs).unwrap();
    assert_eq!(f.degree(), 3);
    assert_eq!(f.num_terms(), 3);
    let zero = parse_poly_with_degree("0", &vs, Some(4)).unwrap();
    assert!(zero.is_zero());
    assert_eq!(zero.degree(), 4);
    assert!(matches!(parse_poly("u^2 + v", &vs), Err(Error::NonHomogeneous { .. })));

    let b = VariableSet::binary();
    let uv = parse_poly("U*V", &b.dual()).unwrap();
    let out = apolar_apply(&uv, &parse_poly("u^2*v^2", &b).unwrap()).unwrap();
    assert_eq!(out, parse_poly("4*u*v", &b).unwrap());

    let g = parse_poly("u^6*x0 + u^3*v^3*x1 + v^6*x2", &vs).unwrap();
    let y0v = parse_poly("y0*V", &vs.dual()).unwrap();
    assert!(apolar_apply(&y0v, &g).unwrap().is_zero());
    for d in 5..9 {
        let f = parse_poly(
            &format!("u^{}*x0 + u^{}*v*x1 + u^{}*v^2*x2", d - 1, d - 2, d - 3),
            &vs,
        )
        .unwrap();
        let v3 = parse_poly("V^3", &vs.dual()).unwrap();
        assert!(apolar_apply(&v3, &f).unwrap().is_zero());
    }
}

#[test]
fn golden_coefficient_vectors() {
    let b = VariableSet::binary();
    let c = |s: &str| coeff_vector(&parse_poly(s, &b).unwrap(), true).unwrap();
    assert_eq!(c("u^3 + 3*u^2*v"), vec![q(1), q(1), q(0), q(0)]);
    assert_eq!(c("(u + v)^3"), vec![q(1); 4]);
    assert_eq!(c("v^5"), vec![q(0), q(0), q(0), q(0), q(0), q(1)]);
}

#[test]
fn dual_ring_is_required() {
    let b = VariableSet::binary();
    let f = parse_poly("u^2", &b).unwrap();
    assert!(matches!(apolar_apply(&f, &f), Err(Error::VariableMismatch(_))));
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in (0u32..5).prop_flat_map(form)) {
        let text = f.to_string();
        let back = parse_poly_with_degree(&text, &ring(), Some(f.degree())).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn apolarity_is_bilinear(a in op(2), b in op(2), f in form(4), g in form(4), c in -5i64..=5) {
        let lhs = apolar_apply(&(&a + &b.scale(&q(c))), &f).unwrap();
        let rhs = &apolar_apply(&a, &f).unwrap() + &apolar_apply(&b, &f).unwrap().scale(&q(c));
        prop_assert_eq!(lhs, rhs);
        let lhs = apolar_apply(&a, &(&f + &g.scale(&q(c)))).unwrap();
        let rhs = &apolar_apply(&a, &f).unwrap() + &apolar_apply(&a, &g).unwrap().scale(&q(c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apolarity_composes(a in op(1), b in op(2), f in form(5)) {
        let step = apolar_apply(&a, &apolar_apply(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(step, apolar_apply(&(&a * &b), &f).unwrap());
    }

    #[test]
    fn linear_operators_differentiate(i in 0usize..3, f in form(4)) {
        let y = HomogeneousPoly::var(ring().dual(), i);
        prop_assert_eq!(apolar_apply(&y, &f).unwrap(), f.derivative(i).with_degree_tag(3));
    }

    #[test]
    fn coefficient_vectors_round_trip(cs in prop::collection::vec(-50i64..=50, 1..9), descale in any::<bool>()) {
        prop_assume!(cs.iter().any(|&c| c != 0));
        let cs: Vec<Rational> = cs.into_iter().map(q).collect();
        let p = binary_from_coeffs(&cs, descale);
        prop_assert_eq!(coeff_vector(&p, descale).unwrap(), cs);
    }
}
