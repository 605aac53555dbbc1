mod common;

use common::{nonconstant_poly, nonzero_poly, p, poly};
use proptest::prelude::*;
use weblab::exactalg::{content_primitive, gcd, ord_along, resultant};
use weblab::{Poly2, WebError};

fn upoly_mul(a: &[Poly2], b: &[Poly2]) -> Vec<Poly2> {
    let mut out = vec![Poly2::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Univariate polynomials in `t` of degree 1 or 2 over `Q[x, y]` with a
/// nonzero leading coefficient.
fn tpoly() -> impl Strategy<Value = Vec<Poly2>> {
    prop::collection::vec(poly(1, 4, 3), 2..=3).prop_filter("leading", |v| !v.last().unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_scales_with_common_factor(a in poly(3, 6, 4), b in poly(3, 6, 4), r in nonzero_poly(2, 5, 3)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let g = gcd(&(&a * &r), &(&b * &r));
        prop_assert_eq!(g, (&r * &gcd(&a, &b)).monic());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(3, 6, 4), b in nonzero_poly(3, 6, 4)) {
        let g = gcd(&a, &b);
        prop_assert!(g.divides(&a));
        prop_assert!(g.divides(&b));
    }

    #[test]
    fn resultant_is_multiplicative(p1 in tpoly(), p2 in tpoly(), q in tpoly()) {
        let lhs = resultant(&upoly_mul(&p1, &p2), &q).unwrap();
        let rhs = &resultant(&p1, &q).unwrap() * &resultant(&p2, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn content_round_trip(cs in prop::collection::vec(poly(3, 8, 4), 1..=4), f in nonzero_poly(2, 4, 3)) {
        let cs: Vec<Poly2> = cs.iter().map(|c| c * &f).collect();
        prop_assume!(cs.iter().any(|c| !c.is_zero()));
        let (content, prim) = content_primitive(&cs).unwrap();
        for (c, q) in cs.iter().zip(&prim) {
            prop_assert_eq!(&(&content * q), c);
        }
        let (again, prim2) = content_primitive(&prim).unwrap();
        prop_assert!(again.is_one());
        prop_assert_eq!(prim2, prim);
    }

    #[test]
    fn ord_along_adds(h in nonconstant_poly(2, 5, 3), q in nonzero_poly(3, 6, 4), m in 0u32..4) {
        prop_assume!(!h.divides(&q));
        let r = &h.pow(m) * &q;
        prop_assert_eq!(ord_along(&h, &r).unwrap(), m + ord_along(&h, &q).unwrap());
        prop_assert_eq!(ord_along(&h, &q).unwrap(), 0);
    }
}

#[test]
fn resultant_examples() {
    let (x, y) = (Poly2::x(), Poly2::y());
    assert_eq!(resultant(&[-&x, Poly2::one()], &[-&y, Poly2::one()]).unwrap(), &x - &y);
    assert_eq!(resultant(&[p(&[(-1, 0, 0)]), Poly2::zero(), Poly2::one()], &[Poly2::zero(), p(&[(2, 0, 0)])]).unwrap(), p(&[(-4, 0, 0)]));
    let t2 = [Poly2::zero(), Poly2::zero(), Poly2::one()];
    assert!(resultant(&t2, &t2).unwrap().is_zero());
}

#[test]
fn ord_along_examples() {
    let (x, y) = (Poly2::x(), Poly2::y());
    assert_eq!(ord_along(&x, &p(&[(1, 3, 1)])).unwrap(), 3);
    assert_eq!(ord_along(&(&x + &y), &p(&[(1, 2, 0), (-1, 0, 2)])).unwrap(), 1);
    assert_eq!(ord_along(&x, &y).unwrap(), 0);
    assert_eq!(ord_along(&x, &Poly2::zero()), Err(WebError::InfiniteOrder));
}
