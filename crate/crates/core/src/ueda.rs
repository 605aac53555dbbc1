//! Symmetric functions in elementary coordinates `s = x + y`, `p = xy`, and
//! the plane endomorphisms induced by `(psi, psi)` on the product of lines.

use crate::error::{Result, WebError};
use crate::exactalg::{Poly2, RatFunc2};
use crate::planemaps::PlaneMap;

/// Rewrite a symmetric polynomial in `(s, p)`; `None` if it is not symmetric.
pub fn symmetrize_poly(f: &Poly2) -> Option<Poly2> {
    if f.swap_xy() != *f {
        return None;
    }
    let s = &Poly2::x() + &Poly2::y();
    let p = &Poly2::x() * &Poly2::y();
    let mut rest = f.clone();
    let mut out = Poly2::zero();
    // lex-leading term c x^a y^b has a >= b and equals the lex-leading term of s^(a-b) p^b
    while let Some((m, c)) = rest.terms().max_by_key(|(m, _)| (m.x, m.y)).map(|(m, c)| (*m, c.clone())) {
        debug_assert!(m.x >= m.y);
        let e = &s.pow(m.x - m.y) * &p.pow(m.y);
        rest = &rest - &e.scale(&c);
        out = &out + &Poly2::monomial(c, m.x - m.y, m.y);
    }
    Some(out)
}

/// `G` with `G(x + y, xy) = F(x, y)`, returned as a function of `(s, p)`
/// written in the first and second variable.
pub fn symmetrize(f: &RatFunc2) -> Result<RatFunc2> {
    let (mut num, mut den) = (f.numer().clone(), f.denom().clone());
    if !RatFunc2::new(num.swap_xy(), den.swap_xy())?.same_function(f) {
        return Err(WebError::NonSymmetric);
    }
    if den.swap_xy() != den {
        let anti = &Poly2::x() - &Poly2::y();
        num = &num * &anti;
        den = &den * &anti;
    }
    let n = symmetrize_poly(&num).ok_or(WebError::NonSymmetric)?;
    let d = symmetrize_poly(&den).ok_or(WebError::NonSymmetric)?;
    RatFunc2::new(n, d)
}

/// `(psi(x) + psi(y), psi(x) psi(y))` in coordinates `(s, p)`. `psi` must
/// depend on the first variable only.
pub fn ueda_endomorphism(psi: &RatFunc2) -> Result<PlaneMap> {
    if psi.numer().degree_y() > 0 || psi.denom().degree_y() > 0 {
        return Err(WebError::Constraint("psi must be univariate".into()));
    }
    if psi.is_constant() {
        return Err(WebError::Constraint("psi must be nonconstant".into()));
    }
    let other = RatFunc2::new(psi.numer().swap_xy(), psi.denom().swap_xy())?;
    PlaneMap::new(symmetrize(&(psi + &other))?, symmetrize(&(psi * &other))?)
}
