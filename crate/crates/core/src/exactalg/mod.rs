//! Exact arithmetic over the rationals: univariate and bivariate
//! polynomials, reduced rational functions, gcds and resultants.

mod gcd;
mod modular;
mod poly2;
mod ratfunc;
mod resultant;
mod upoly;

use num::{BigInt, Integer, One, ToPrimitive, Zero};

pub use gcd::{content_primitive, gcd, gcd_many, ord_along, squarefree_part, squarefree_split};
pub use poly2::{Monomial, Poly2};
pub use ratfunc::{compose_poly, compose_poly_with_degrees, RatFunc2};
pub use modular::modular_det;
pub use resultant::{bareiss_det, resultant};
pub use upoly::UPoly;


/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // huge numerators and denominators: scale both down first
        let n = c.numer();
        let d = c.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Positive gcd of a collection of rationals: gcd of numerators over lcm of
/// denominators. Zero for an empty or all-zero collection.
pub fn rational_gcd<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in it {
        if c.is_zero() {
            continue;
        }
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::new(num, den)
}
