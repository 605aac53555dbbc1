use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::{gcd, Poly2, Rational};
use crate::error::{Result, WebError};

/// Reduced quotient of bivariate polynomials. The denominator is monic under
/// graded-lex order and coprime to the numerator, so equal functions have
/// equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(WebError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = Rational::one() / den.leading_coeff();
        Ok(RatFunc2 { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2 { num: p, den: Poly2::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly2::x())
    }

    pub fn y() -> Self {
        Self::from_poly(Poly2::y())
    }

    pub fn numer(&self) -> &Poly2 {
        &self.num
    }

    pub fn denom(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0, 0) / self.den.coeff(0, 0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc2 { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc2 { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn deriv_x(&self) -> Self {
        let n = &(&self.num.deriv_x() * &self.den) - &(&self.num * &self.den.deriv_x());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn deriv_y(&self) -> Self {
        let n = &(&self.num.deriv_y() * &self.den) - &(&self.num * &self.den.deriv_y());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Evaluate at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let d = self.den.eval(x, y);
        (!d.is_zero()).then(|| self.num.eval(x, y) / d)
    }

    /// Equality of functions by cross-multiplication, without reduction.
    pub fn same_function(&self, other: &RatFunc2) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Substitute rational functions for `x` and `y`.
    pub fn compose(&self, fx: &RatFunc2, fy: &RatFunc2) -> RatFunc2 {
        let (n, dn) = compose_poly(&self.num, fx, fy);
        let (d, dd) = compose_poly(&self.den, fx, fy);
        // n/dn divided by d/dd
        Self::new(&n * &dd, &d * &dn).expect("composition with a dominant map")
    }
}

/// `p(fx, fy)` as an unreduced fraction `(N, D)` with
/// `D = den(fx)^deg_x(p) * den(fy)^deg_y(p)`.
pub fn compose_poly(p: &Poly2, fx: &RatFunc2, fy: &RatFunc2) -> (Poly2, Poly2) {
    let (ex, ey) = (p.degree_x() as usize, p.degree_y() as usize);
    compose_poly_with_degrees(p, fx, fy, ex, ey)
}

/// As [`compose_poly`] but over the prescribed common denominator
/// `den(fx)^ex * den(fy)^ey`; requires `ex >= deg_x(p)` and `ey >= deg_y(p)`.
pub fn compose_poly_with_degrees(
    p: &Poly2,
    fx: &RatFunc2,
    fy: &RatFunc2,
    ex: usize,
    ey: usize,
) -> (Poly2, Poly2) {
    let nx = super::poly2::poly_powers(fx.numer(), ex);
    let dx = super::poly2::poly_powers(fx.denom(), ex);
    let ny = super::poly2::poly_powers(fy.numer(), ey);
    let dy = super::poly2::poly_powers(fy.denom(), ey);
    let mut acc = Poly2::zero();
    for (m, c) in p.terms() {
        let (i, j) = (m.x as usize, m.y as usize);
        let t = &(&nx[i] * &dx[ex - i]) * &(&ny[j] * &dy[ey - j]);
        acc = &acc + &t.scale(c);
    }
    (acc, &dx[ex] * &dy[ey])
}

impl From<Poly2> for RatFunc2 {
    fn from(p: Poly2) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        if self.den == rhs.den {
            return RatFunc2::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFunc2::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl Sub<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Div<&RatFunc2> for &RatFunc2 {
    type Output = Result<RatFunc2>;
    fn div(self, rhs: &RatFunc2) -> Result<RatFunc2> {
        if rhs.is_zero() {
            return Err(WebError::DivisionByZero);
        }
        RatFunc2::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 { num: -&self.num, den: self.den.clone() }
    }
}

impl RatFunc2 {
    pub fn display_with(&self, vars: (&str, &str)) -> String {
        let num = self.num.display_with(vars);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        let den = self.den.display_with(vars);
        if self.den.len() > 1 || den.contains(['*', '/']) {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y")))
    }
}

impl serde::Serialize for RatFunc2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_normalized() {
        let x = Poly2::x();
        let y = Poly2::y();
        let r = RatFunc2::new(&(&x * &x) - &(&y * &y), (&x - &y).scale_i64(-2)).unwrap();
        assert_eq!(r.numer(), &(&x + &y).scale_i64(-1).scale(&(Rational::one() / Rational::from_integer(2.into()))));
        assert!(r.denom().is_one());
        assert_eq!(RatFunc2::new(x, Poly2::zero()), Err(WebError::DivisionByZero));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1 + x y)) = 1 / (1 + x y)^2
        let a = &Poly2::one() + &(&Poly2::x() * &Poly2::y());
        let r = RatFunc2::new(Poly2::x(), a.clone()).unwrap();
        let expected = RatFunc2::new(Poly2::one(), a.pow(2)).unwrap();
        assert_eq!(r.deriv_x(), expected);
    }
}
