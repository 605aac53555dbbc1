mod common;

use common::{form, nonconstant_poly, one_form, p, poly};
use proptest::prelude::*;
use weblab::catalog::catalog;
use weblab::parse::parse_form;
use weblab::planemaps::pullback;
use weblab::webgeom::{
    discriminant_degree_check, is_completely_invariant_curve, is_invariant_curve, tangency_divisor, web_degree,
};
use weblab::{PlaneMap, Poly2, SymForm, WebError, WebOnP2};

fn affine_map() -> impl Strategy<Value = PlaneMap> {
    [[-4i64..=4, -4i64..=4, -4i64..=4], [-4i64..=4, -4i64..=4, -4i64..=4]]
        .prop_filter("invertible", |m| m[0][0] * m[1][1] != m[0][1] * m[1][0])
        .prop_map(|m| {
            PlaneMap::from_polys(
                p(&[(m[0][0], 1, 0), (m[0][1], 0, 1), (m[0][2], 0, 0)]),
                p(&[(m[1][0], 1, 0), (m[1][1], 0, 1), (m[1][2], 0, 0)]),
            )
            .unwrap()
        })
}

fn dh(h: &Poly2) -> SymForm {
    SymForm::one_form(h.deriv_x(), h.deriv_y()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The discriminant of two superposed foliations is twice their
    /// tangency divisor.
    #[test]
    fn discriminant_of_pair_is_double_tangency(a in one_form(2, 6), b in one_form(2, 6)) {
        let t = tangency_divisor(&a, &b);
        prop_assume!(t.is_ok());
        let t = t.unwrap();
        let d = a.superpose(&b).discriminant_divisor().unwrap();
        prop_assert_eq!(d, t.scaled(2));
    }

    /// `dh^k + h eta` leaves `h` completely invariant, and complete
    /// invariance implies invariance.
    #[test]
    fn complete_invariance_implies_invariance(h in nonconstant_poly(2, 5, 3), k in 1u32..=3, eta in prop::collection::vec(poly(1, 5, 3), 4)) {
        let base = dh(&h).pow(k);
        prop_assume!(!base.is_zero());
        let coeffs: Vec<Poly2> = base.coeffs().iter().zip(&eta).map(|(c, e)| c + &(e * &h)).collect();
        let omega = SymForm::new(coeffs);
        prop_assume!(omega.is_ok());
        let omega = omega.unwrap();
        match is_completely_invariant_curve(&h, &omega) {
            Ok(complete) => {
                prop_assert!(complete);
                prop_assert!(is_invariant_curve(&h, &omega));
            }
            Err(WebError::Degenerate(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn complete_invariance_implies_invariance_random(h in nonconstant_poly(2, 4, 3), omega in form(3, 2, 4)) {
        if let Ok(true) = is_completely_invariant_curve(&h, &omega) {
            prop_assert!(is_invariant_curve(&h, &omega));
        }
    }

    /// Affine automorphisms preserve the degree of a web.
    #[test]
    fn degree_is_affine_invariant(a in affine_map(), omega in form(3, 2, 6)) {
        let w = WebOnP2::new(&omega).unwrap();
        let moved = WebOnP2::new(&pullback(&a, &omega).unwrap().primitive).unwrap();
        match (web_degree(&w, 5), web_degree(&moved, 5)) {
            (Ok(d1), Ok(d2)) => prop_assert_eq!(d1, d2),
            _ => prop_assume!(false),
        }
    }

    #[test]
    fn degree_is_additive(a in form(2, 2, 6), b in form(2, 2, 6)) {
        let (a, b) = (a.primitive_part().unwrap(), b.primitive_part().unwrap());
        let w = |f: &SymForm| web_degree(&WebOnP2::new(f).unwrap(), 9);
        match (w(&a), w(&b), w(&a.superpose(&b))) {
            (Ok(da), Ok(db), Ok(dab)) => prop_assert_eq!(da + db, dab),
            _ => prop_assume!(false),
        }
    }

    /// Projective degree of the discriminant agrees with (k-1)(2 deg + k).
    #[test]
    fn discriminant_degree_formula(omega in form(3, 2, 5)) {
        prop_assume!(omega.k() >= 2);
        let w = WebOnP2::new(&omega).unwrap();
        match discriminant_degree_check(&w, 11) {
            Ok(r) => prop_assert!(r.pass, "{:?}", r),
            Err(WebError::NonReducedWeb | WebError::DegenerateSampling) => prop_assume!(false),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn catalog_degrees_are_additive() {
    for e in catalog() {
        let Some(w) = e.web else { continue };
        let f = &w.chart1;
        let lines = parse_form("dx + 2*dy").unwrap();
        let sum = web_degree(&WebOnP2::new(&f.superpose(&lines)).unwrap(), 3).unwrap();
        assert_eq!(sum, web_degree(&w, 3).unwrap(), "{}", e.name);
    }
}

#[test]
fn tangency_examples() {
    let t = tangency_divisor(&parse_form("dx").unwrap(), &parse_form("x*dx + y*dy").unwrap()).unwrap();
    assert_eq!(t.components(), &[(Poly2::y(), 1)]);
    assert_eq!(
        tangency_divisor(&parse_form("dx").unwrap(), &parse_form("3*dx").unwrap()),
        Err(WebError::IdenticalFoliations)
    );
}
