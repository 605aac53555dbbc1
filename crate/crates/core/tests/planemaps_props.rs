mod common;

use common::{form, nonconstant_poly};
use proptest::prelude::*;
use weblab::catalog::catalog;
use weblab::exactalg::{ratio, squarefree_split};
use weblab::planemaps::{is_invariant_web, multiplicity_m, pullback, sampled_invariance};
use weblab::{PlaneMap, RatFunc2, Rational, WebError};

fn poly_map() -> impl Strategy<Value = PlaneMap> {
    (nonconstant_poly(2, 5, 3), nonconstant_poly(2, 5, 3)).prop_filter_map("dominant", |(a, b)| PlaneMap::from_polys(a, b).ok())
}

fn point() -> impl Strategy<Value = (Rational, Rational)> {
    ((-20i64..=20, 1i64..=7), (-20i64..=20, 1i64..=7)).prop_map(|((a, b), (c, d))| (ratio(a, b), ratio(c, d)))
}

/// Catalog pairs (map, primitive web form) where the map is present.
fn catalog_pairs() -> Vec<(String, PlaneMap, weblab::SymForm)> {
    catalog()
        .into_iter()
        .filter_map(|e| Some((e.name, e.map?, e.web?.chart1)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// (phi o psi)^* = psi^* phi^*, with phi^* omega written as multiplier
    /// times primitive part.
    #[test]
    fn pullback_is_contravariant(phi in poly_map(), psi in poly_map(), omega in form(2, 2, 5)) {
        let composed = phi.compose(&psi);
        prop_assume!(composed.is_ok());
        let composed = composed.unwrap();
        let outer = pullback(&phi, &omega).unwrap();
        let inner = pullback(&psi, &outer.primitive).unwrap();
        let whole = pullback(&composed, &omega).unwrap();
        let m = outer.multiplier().compose(psi.f1(), psi.f2());
        for (a, b) in inner.raw_coeffs().iter().zip(whole.raw_coeffs()) {
            prop_assert!((&m * a).same_function(&b));
        }
    }

    #[test]
    fn jacobian_chain_rule(phi in poly_map(), psi in poly_map(), pts in prop::collection::vec(point(), 10)) {
        let composed = phi.compose(&psi);
        prop_assume!(composed.is_ok());
        let composed = composed.unwrap();
        let (jphi, jpsi, jc) = (phi.jacobian(), psi.jacobian(), composed.jacobian());
        for (x, y) in pts {
            let (u, v) = psi.eval(&x, &y).unwrap();
            let lhs = jc.eval(&x, &y).unwrap();
            let rhs = jphi.eval(&u, &v).unwrap() * jpsi.eval(&x, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// Exact invariance and the pointwise test agree on random pairs.
    #[test]
    fn invariance_matches_sampling(phi in poly_map(), omega in form(2, 2, 5)) {
        let exact = is_invariant_web(&phi, &omega).unwrap().is_some();
        match sampled_invariance(&phi, &omega, 6, 7) {
            Ok(sampled) => prop_assert_eq!(exact, sampled),
            Err(e) => prop_assert_eq!(e, WebError::DegenerateSampling),
        }
    }
}

#[test]
fn rational_map_contravariance() {
    let phi = PlaneMap::new(
        weblab::parse::parse_ratfunc("x*y + 1/(x*y)").unwrap(),
        weblab::parse::parse_ratfunc("x/y + y/x").unwrap(),
    )
    .unwrap();
    let psi = weblab::parse::parse_map("map(x + y^2, x - y)").unwrap();
    let omega = weblab::parse::parse_form("x*dx^2 - y*dx*dy + dy^2").unwrap();
    let outer = pullback(&phi, &omega).unwrap();
    let inner = pullback(&psi, &outer.primitive).unwrap();
    let whole = pullback(&phi.compose(&psi).unwrap(), &omega).unwrap();
    let m = outer.multiplier().compose(psi.f1(), psi.f2());
    for (a, b) in inner.raw_coeffs().iter().zip(whole.raw_coeffs()) {
        assert!((&m * a).same_function(&b));
    }
}

#[test]
fn catalog_invariance_survives_iteration() {
    for (name, phi, omega) in catalog_pairs() {
        if !name.starts_with(['a', 'b', 'd', 'j']) {
            continue;
        }
        assert!(is_invariant_web(&phi, &omega).unwrap().is_some(), "{name}");
        let twice = phi.compose(&phi).unwrap();
        assert!(is_invariant_web(&twice, &omega).unwrap().is_some(), "{name} iterated");
        assert!(sampled_invariance(&twice, &omega, 4, 3).unwrap(), "{name} sampled");
    }
}

/// Every curve in the content of phi^* omega satisfies m(C) <= k ord_C(J)
/// and has an invariant image.
#[test]
fn multiplicity_within_ramification_bound() {
    let mut checked = 0;
    for (name, phi, omega) in catalog_pairs() {
        if is_invariant_web(&phi, &omega).unwrap().is_none() {
            continue;
        }
        let pb = pullback(&phi, &omega).unwrap();
        for (h, _) in squarefree_split(&pb.content) {
            if h.is_constant() {
                continue;
            }
            match multiplicity_m(&phi, &omega, &h, None) {
                Ok(r) => {
                    assert!(r.within_bound, "{name}: {} m = {} bound = {}", r.curve, r.m, r.bound);
                    assert!(r.m > 0, "{name}: {}", r.curve);
                    checked += 1;
                }
                Err(WebError::PolarCurve | WebError::ContractedCurve) => {}
                Err(e) => panic!("{name}: {e}"),
            }
        }
    }
    assert!(checked >= 4, "only {checked} curves checked");
}

#[test]
fn jacobian_of_rational_map() {
    let phi = weblab::parse::parse_map("map(x/y, x*y)").unwrap();
    assert!(phi.jacobian().same_function(&RatFunc2::new(weblab::Poly2::x().scale_i64(2), weblab::Poly2::y()).unwrap()));
}
