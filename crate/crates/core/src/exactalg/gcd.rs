//! Greatest common divisors, contents and squarefree splitting in `Q[x, y]`.
//!
//! Polynomials are viewed in `Q[x][y]`: the `x`-content is handled by
//! univariate gcds and the primitive parts by evaluation at integer values
//! of `x` and interpolation, with a subresultant remainder sequence as the
//! fallback.

use num::{One, Zero};

use super::{Poly2, Rational, UPoly};
use crate::error::{Result, WebError};

type YPoly = Vec<UPoly>;

fn ydeg(p: &YPoly) -> usize {
    p.len() - 1
}

fn ylc(p: &YPoly) -> &UPoly {
    p.last().expect("nonzero")
}

fn ytrim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(UPoly::is_zero) {
        p.pop();
    }
    p
}

fn ycontent(p: &YPoly) -> UPoly {
    let mut g = UPoly::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn ydiv_scalar(p: &YPoly, d: &UPoly) -> YPoly {
    p.iter()
        .map(|c| c.exact_div(d).expect("exact division by content"))
        .collect()
}

fn yscale(p: &YPoly, c: &UPoly) -> YPoly {
    p.iter().map(|a| a * c).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` in `Q[x][y]`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = ydeg(b);
    let lb = ylc(b).clone();
    let mut r = a.clone();
    let mut e = ydeg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && ydeg(&r) >= db {
        let shift = ydeg(&r) - db;
        let t = ylc(&r).clone();
        let mut next = yscale(&r, &lb);
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &t);
        }
        next.pop();
        r = ytrim(next);
        e -= 1;
    }
    if e > 0 {
        r = yscale(&r, &lb.pow(e as u32));
    }
    r
}

fn ymax_xdeg(p: &YPoly) -> usize {
    p.iter().filter_map(UPoly::degree).max().unwrap_or(0)
}

/// Gcd of two `y`-primitive polynomials by evaluating `x` at integers,
/// taking univariate gcds in `Q[y]` scaled to `gcd(lc_y a, lc_y b)` and
/// interpolating. The candidate is confirmed by trial division; `None` if
/// no confirmation was reached.
fn interpolation_gcd(a: &YPoly, b: &YPoly) -> Option<YPoly> {
    let gamma = ylc(a).gcd(ylc(b));
    let bound = ymax_xdeg(a).min(ymax_xdeg(b)) + gamma.degree().unwrap_or(0);
    let (pa, pb) = (Poly2::from_y_coeffs(a), Poly2::from_y_coeffs(b));
    let mut e = ydeg(a).min(ydeg(b));
    let mut xs: Vec<Rational> = Vec::new();
    let mut images: Vec<UPoly> = Vec::new();
    let mut previous: Option<YPoly> = None;
    let points = (0i64..).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
    for t in points.take(2 * bound + 40) {
        let t = Rational::from_integer(t.into());
        if ylc(a).eval(&t).is_zero() || ylc(b).eval(&t).is_zero() {
            continue;
        }
        let ea = UPoly::new(a.iter().map(|c| c.eval(&t)).collect());
        let eb = UPoly::new(b.iter().map(|c| c.eval(&t)).collect());
        let g = ea.gcd(&eb);
        let d = g.degree().expect("nonzero images");
        if d == 0 {
            return Some(vec![UPoly::one()]);
        }
        if d > e {
            continue;
        }
        if d < e {
            e = d;
            xs.clear();
            images.clear();
            previous = None;
        }
        images.push(g.scale(&gamma.eval(&t)));
        xs.push(t);
        let candidate: YPoly = (0..=e)
            .map(|j| UPoly::interpolate(&xs, &images.iter().map(|g| g.coeff(j)).collect::<Vec<_>>()))
            .collect();
        let stable = previous.as_ref() == Some(&candidate);
        if stable || xs.len() > bound {
            let c = ycontent(&candidate);
            let h = Poly2::from_y_coeffs(&ydiv_scalar(&candidate, &c));
            if h.divides(&pa) && h.divides(&pb) {
                return Some(h.to_y_coeffs());
            }
        }
        previous = Some(candidate);
    }
    None
}

/// Gcd of two polynomials that are primitive with respect to `y` and of
/// positive `y`-degree. Subresultant remainder sequence.
fn subresultant_gcd(a: YPoly, b: YPoly) -> YPoly {
    let (mut a, mut b) = if ydeg(&a) >= ydeg(&b) { (a, b) } else { (b, a) };
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let delta = (ydeg(&a) - ydeg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if ydeg(&r) == 0 {
            return vec![UPoly::one()];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = ydiv_scalar(&r, &divisor);
        g = ylc(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
    }
    let c = ycontent(&b);
    ydiv_scalar(&b, &c)
}

/// Greatest common divisor normalized to leading coefficient one under
/// graded-lex order. `gcd(0, q)` is `q` normalized.
pub fn gcd(p: &Poly2, q: &Poly2) -> Poly2 {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Poly2::one();
    }
    // monomial factors separately: cheap and very common
    let (pi, pj) = p.monomial_factor();
    let (qi, qj) = q.monomial_factor();
    let (mi, mj) = (pi.min(qi), pj.min(qj));
    let p = strip_monomial(p, pi, pj);
    let q = strip_monomial(q, qi, qj);

    let core = if p.is_constant() || q.is_constant() {
        Poly2::one()
    } else {
        let pa = p.to_y_coeffs();
        let qa = q.to_y_coeffs();
        let cp = ycontent(&pa);
        let cq = ycontent(&qa);
        let c = cp.gcd(&cq);
        let pp = ydiv_scalar(&pa, &cp);
        let qp = ydiv_scalar(&qa, &cq);
        let g = if pp.len() <= 1 || qp.len() <= 1 {
            vec![UPoly::one()]
        } else {
            interpolation_gcd(&pp, &qp).unwrap_or_else(|| subresultant_gcd(pp, qp))
        };
        Poly2::from_y_coeffs(&yscale(&g, &c))
    };
    core.mul_monomial(&Rational::one(), mi, mj).monic()
}

fn strip_monomial(p: &Poly2, i: u32, j: u32) -> Poly2 {
    if i == 0 && j == 0 {
        return p.clone();
    }
    Poly2::from_terms(
        p.terms()
            .map(|(m, c)| (super::Monomial::new(m.x - i, m.y - j), c.clone())),
    )
}

/// Gcd of a list of polynomials (zero entries ignored).
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly2>>(ps: I) -> Poly2 {
    let mut g = Poly2::zero();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Split a sequence of polynomials into its content (polynomial gcd times
/// the positive rational gcd of what remains) and the primitive entries.
pub fn content_primitive(coeffs: &[Poly2]) -> Result<(Poly2, Vec<Poly2>)> {
    if coeffs.iter().all(Poly2::is_zero) {
        return Err(WebError::ZeroForm);
    }
    let g = gcd_many(coeffs);
    let divided: Vec<Poly2> = coeffs
        .iter()
        .map(|c| c.exact_div(&g).expect("gcd divides every entry"))
        .collect();
    let num = super::rational_gcd(divided.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
    let inv = Rational::one() / &num;
    let primitive = divided.iter().map(|p| p.scale(&inv)).collect();
    Ok((g.scale(&num), primitive))
}

/// Largest `m` such that `h^m` divides `p`.
pub fn ord_along(h: &Poly2, p: &Poly2) -> Result<u32> {
    if p.is_zero() {
        return Err(WebError::InfiniteOrder);
    }
    if h.is_constant() {
        return Err(WebError::ConstantCurve);
    }
    let mut m = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.exact_div(h) {
        m += 1;
        cur = q;
    }
    Ok(m)
}

/// Yun's algorithm with respect to `y` for a polynomial without factors
/// depending on `x` alone.
fn squarefree_y(f: &Poly2) -> Vec<(Poly2, u32)> {
    let mut out = Vec::new();
    if f.degree_y() == 0 {
        return out;
    }
    let df = f.deriv_y();
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.deriv_y();
    let mut i = 1;
    while b.degree_y() > 0 {
        let a = gcd(&b, &d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.deriv_y();
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Squarefree splitting into pairwise coprime monic factors with
/// multiplicities. The coordinate lines `x` and `y` are always split off as
/// separate components. Constants are discarded.
pub fn squarefree_split(p: &Poly2) -> Vec<(Poly2, u32)> {
    let mut out = Vec::new();
    if p.is_zero() || p.is_constant() {
        return out;
    }
    let (i, j) = p.monomial_factor();
    if i > 0 {
        out.push((Poly2::x(), i));
    }
    if j > 0 {
        out.push((Poly2::y(), j));
    }
    let rest = strip_monomial(p, i, j);
    if rest.is_constant() {
        return out;
    }
    let ya = rest.to_y_coeffs();
    let cont = ycontent(&ya);
    for (f, m) in cont.squarefree() {
        out.push((Poly2::from_upoly_x(&f), m));
    }
    let pp = Poly2::from_y_coeffs(&ydiv_scalar(&ya, &cont));
    out.extend(squarefree_y(&pp));
    out
}

/// Product of the distinct squarefree components.
pub fn squarefree_part(p: &Poly2) -> Poly2 {
    squarefree_split(p)
        .into_iter()
        .fold(Poly2::one(), |acc, (f, _)| &acc * &f)
}
