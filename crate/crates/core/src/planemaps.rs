//! Rational self-maps of the plane: Jacobians, pullback of symmetric forms,
//! multiplicities along curves and invariance tests.

use std::fmt;

use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, WebError};
use crate::exactalg::{
    compose_poly_with_degrees, gcd, gcd_many, ord_along, rat, rat_to_f64, ratio, resultant,
    Poly2, RatFunc2, Rational, UPoly,
};
use crate::monodromy::roots::upoly_roots;
use crate::symforms::SymForm;
use crate::webgeom;

/// Dominant rational map `(x, y) -> (f1, f2)` of the affine plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneMap {
    f1: RatFunc2,
    f2: RatFunc2,
    components: [Poly2; 3],
    degree: u32,
}

impl PlaneMap {
    pub fn new(f1: RatFunc2, f2: RatFunc2) -> Result<Self> {
        if f1.is_constant() || f2.is_constant() {
            return Err(WebError::NonDominantMap);
        }
        if !jacobian_nonzero_somewhere(&f1, &f2) && jacobian_of(&f1, &f2).is_zero() {
            return Err(WebError::NonDominantMap);
        }
        let (components, degree) = homogenize(&f1, &f2);
        Ok(PlaneMap { f1, f2, components, degree })
    }

    pub fn from_polys(p1: Poly2, p2: Poly2) -> Result<Self> {
        Self::new(p1.into(), p2.into())
    }

    pub fn identity() -> Self {
        Self::new(RatFunc2::x(), RatFunc2::y()).expect("identity is dominant")
    }

    pub fn f1(&self) -> &RatFunc2 {
        &self.f1
    }

    pub fn f2(&self) -> &RatFunc2 {
        &self.f2
    }

    /// Algebraic degree of the homogenized map.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `[P1 : P2 : P3]` with `f1 = P1/P3`, `f2 = P2/P3`, no common factor.
    pub fn components(&self) -> &[Poly2; 3] {
        &self.components
    }

    /// Jacobian determinant, reduced; never zero for a constructed map.
    pub fn jacobian(&self) -> RatFunc2 {
        jacobian_of(&self.f1, &self.f2)
    }

    /// `self` after `inner`: `(x, y) -> self(inner(x, y))`.
    pub fn compose(&self, inner: &PlaneMap) -> Result<PlaneMap> {
        PlaneMap::new(
            self.f1.compose(&inner.f1, &inner.f2),
            self.f2.compose(&inner.f1, &inner.f2),
        )
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        Some((self.f1.eval(x, y)?, self.f2.eval(x, y)?))
    }

    fn partials(&self, x: &Rational, y: &Rational) -> Option<[[Rational; 2]; 2]> {
        Some([
            [self.f1.deriv_x().eval(x, y)?, self.f1.deriv_y().eval(x, y)?],
            [self.f2.deriv_x().eval(x, y)?, self.f2.deriv_y().eval(x, y)?],
        ])
    }
}

impl PlaneMap {
    pub fn display_with(&self, vars: (&str, &str)) -> String {
        format!("map({}, {})", self.f1.display_with(vars), self.f2.display_with(vars))
    }
}

impl fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y")))
    }
}

impl Serialize for PlaneMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn jacobian_of(f1: &RatFunc2, f2: &RatFunc2) -> RatFunc2 {
    &(&f1.deriv_x() * &f2.deriv_y()) - &(&f1.deriv_y() * &f2.deriv_x())
}

/// Exact Jacobian value at a few fixed rational points.
fn jacobian_nonzero_somewhere(f1: &RatFunc2, f2: &RatFunc2) -> bool {
    let partials = |f: &RatFunc2, x: &Rational, y: &Rational| {
        let (n, d) = (f.numer(), f.denom());
        let (nv, dv) = (n.eval(x, y), d.eval(x, y));
        if dv.is_zero() {
            return None;
        }
        let d2 = &dv * &dv;
        let fx = (&n.deriv_x().eval(x, y) * &dv - &nv * &d.deriv_x().eval(x, y)) / &d2;
        let fy = (&n.deriv_y().eval(x, y) * &dv - &nv * &d.deriv_y().eval(x, y)) / &d2;
        Some((fx, fy))
    };
    [(3, 7, 5, 11), (-2, 13, 17, 5), (19, 3, -7, 23)].iter().any(|&(a, b, c, d)| {
        let (x, y) = (ratio(a, b), ratio(c, d));
        match (partials(f1, &x, &y), partials(f2, &x, &y)) {
            (Some((ax, ay)), Some((bx, by))) => !(&ax * &by - &ay * &bx).is_zero(),
            _ => false,
        }
    })
}

fn homogenize(f1: &RatFunc2, f2: &RatFunc2) -> ([Poly2; 3], u32) {
    let g = gcd(f1.denom(), f2.denom());
    let d = &f1.denom().exact_div(&g).expect("gcd divides") * f2.denom();
    let p1 = f1.numer() * &d.exact_div(f1.denom()).expect("lcm");
    let p2 = f2.numer() * &d.exact_div(f2.denom()).expect("lcm");
    let common = gcd_many([&p1, &p2, &d]);
    let comps = [p1, p2, d].map(|p| p.exact_div(&common).expect("common factor"));
    let degree = comps.iter().filter_map(Poly2::total_degree).max().unwrap_or(0);
    (comps, degree)
}

/// Outcome of a pullback: `raw = content / denominator * primitive`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackResult {
    pub primitive: SymForm,
    pub content: Poly2,
    pub denominator: Poly2,
}

impl PullbackResult {
    /// The scalar `content / denominator`.
    pub fn multiplier(&self) -> RatFunc2 {
        RatFunc2::new(self.content.clone(), self.denominator.clone()).expect("nonzero denominator")
    }

    /// Coefficients of the raw pullback as rational functions.
    pub fn raw_coeffs(&self) -> Vec<RatFunc2> {
        let m = self.multiplier();
        self.primitive.coeffs().iter().map(|c| &m * &RatFunc2::from_poly(c.clone())).collect()
    }
}

/// Raw pullback as a form with polynomial coefficients over a common
/// denominator.
fn pullback_raw(phi: &PlaneMap, omega: &SymForm) -> (SymForm, Poly2) {
    let k = omega.k();
    let ex = omega.coeffs().iter().map(Poly2::degree_x).max().unwrap_or(0) as usize;
    let ey = omega.coeffs().iter().map(Poly2::degree_y).max().unwrap_or(0) as usize;
    let (f1, f2) = (&phi.f1, &phi.f2);
    let mut e = Poly2::one();
    let composed: Vec<Poly2> = omega
        .coeffs()
        .iter()
        .map(|a| {
            let (n, d) = compose_poly_with_degrees(a, f1, f2, ex, ey);
            e = d;
            n
        })
        .collect();
    let (n1, d1) = (f1.numer(), f1.denom());
    let (n2, d2) = (f2.numer(), f2.denom());
    let u1 = &(&n1.deriv_x() * d1) - &(n1 * &d1.deriv_x());
    let v1 = &(&n1.deriv_y() * d1) - &(n1 * &d1.deriv_y());
    let u2 = &(&n2.deriv_x() * d2) - &(n2 * &d2.deriv_x());
    let v2 = &(&n2.deriv_y() * d2) - &(n2 * &d2.deriv_y());
    let l1 = SymForm::from_raw(vec![v1, u1]);
    let l2 = SymForm::from_raw(vec![v2, u2]);
    let same_den = d1 == d2;
    let mut acc = vec![Poly2::zero(); k + 1];
    let p1: Vec<SymForm> = std::iter::successors(Some(SymForm::from_raw(vec![Poly2::one()])), |p| Some(p.superpose(&l1)))
        .take(k + 1)
        .collect();
    let p2: Vec<SymForm> = std::iter::successors(Some(SymForm::from_raw(vec![Poly2::one()])), |p| Some(p.superpose(&l2)))
        .take(k + 1)
        .collect();
    let d1sq = d1 * d1;
    let d2sq = d2 * d2;
    for (i, a) in composed.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut w = a.clone();
        if !same_den {
            w = &(&w * &d1sq.pow((k - i) as u32)) * &d2sq.pow(i as u32);
        }
        let term = p1[i].superpose(&p2[k - i]).scale(&w);
        for (n, c) in term.coeffs().iter().enumerate() {
            acc[n] = &acc[n] + c;
        }
    }
    let den = if same_den {
        &e * &d1sq.pow(k as u32)
    } else {
        &(&e * &d1sq.pow(k as u32)) * &d2sq.pow(k as u32)
    };
    (SymForm::from_raw(acc), den)
}

/// Pull back `omega` by `phi` and split the result into content and
/// primitive part.
pub fn pullback(phi: &PlaneMap, omega: &SymForm) -> Result<PullbackResult> {
    let (raw, den) = pullback_raw(phi, omega);
    if raw.is_zero() {
        return Err(WebError::ZeroPullback);
    }
    let (content, primitive) = raw.primitive()?;
    let g = gcd(&content, &den);
    let content = content.exact_div(&g).expect("gcd divides");
    let den = den.exact_div(&g).expect("gcd divides");
    let lc = Rational::one() / den.leading_coeff();
    Ok(PullbackResult {
        primitive,
        content: content.scale(&lc),
        denominator: den.scale(&lc),
    })
}

/// `Some(c)` when `primitive(phi* omega) = c * omega` with `omega`
/// primitive, `None` when the web is not invariant.
pub fn is_invariant_web(phi: &PlaneMap, omega: &SymForm) -> Result<Option<Rational>> {
    let omega = omega.primitive_part()?;
    let pb = pullback(phi, &omega)?;
    Ok(proportionality(&pb.primitive, &omega))
}

/// The constant `c` with `a = c * b`, if any.
pub fn proportionality(a: &SymForm, b: &SymForm) -> Option<Rational> {
    if a.k() != b.k() {
        return None;
    }
    let (i, bi) = b.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let ai = &a.coeffs()[i];
    if ai.is_zero() {
        return None;
    }
    let c = ai.leading_coeff() / bi.leading_coeff();
    (a == &b.scale_rational(&c)).then_some(c)
}

/// Numeric cross-check of invariance that bypasses the symbolic pullback:
/// at random rational points, the binary forms `omega(phi(p); Dphi(p) v)`
/// and `omega(p; v)` in `v` must be proportional.
pub fn sampled_invariance(phi: &PlaneMap, omega: &SymForm, points: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = omega.k();
    let mut used = 0;
    let mut attempts = 0;
    while used < points {
        attempts += 1;
        if attempts > 50 * points {
            return Err(WebError::DegenerateSampling);
        }
        let x = ratio(rng.random_range(-30..=30), rng.random_range(1..=9));
        let y = ratio(rng.random_range(-30..=30), rng.random_range(1..=9));
        let (Some((fx, fy)), Some(dp)) = (phi.eval(&x, &y), phi.partials(&x, &y)) else {
            continue;
        };
        let mut here = Vec::with_capacity(k + 1);
        let mut there = Vec::with_capacity(k + 1);
        for j in 0..=k as i64 {
            let (u, v) = (rat(1), rat(j));
            here.push(omega.eval_on(&x, &y, &u, &v));
            let pu = &dp[0][0] * &u + &dp[0][1] * &v;
            let pv = &dp[1][0] * &u + &dp[1][1] * &v;
            there.push(omega.eval_on(&fx, &fy, &pu, &pv));
        }
        if here.iter().all(Zero::is_zero) || there.iter().all(Zero::is_zero) {
            continue;
        }
        used += 1;
        for a in 0..=k {
            for b in a + 1..=k {
                if &here[a] * &there[b] != &here[b] * &there[a] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Multiplicity of a curve in the pullback together with the ramification
/// bound and the invariance predicates it controls.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MultiplicityReport {
    pub curve: String,
    pub k: usize,
    pub m: u32,
    pub ord: u32,
    pub bound: u32,
    pub within_bound: bool,
    /// `m > 0`: the image curve is invariant by the web.
    pub image_invariant: bool,
    /// `m` reaches the bound along a ramification curve.
    pub equality: bool,
    /// Whether `C` itself is invariant by the pulled-back web.
    pub curve_invariant: bool,
    /// Invariance of the supplied image curve, checked directly.
    pub image_invariant_checked: Option<bool>,
    /// Complete invariance of the supplied image curve.
    pub image_completely_invariant: Option<bool>,
}

/// `m(C)` for `C = {h = 0}` and its bound `k * ord_C(jacobian)`. The image
/// curve, when known, is checked directly against `omega`.
pub fn multiplicity_m(
    phi: &PlaneMap,
    omega: &SymForm,
    h: &Poly2,
    image: Option<&Poly2>,
) -> Result<MultiplicityReport> {
    if h.is_constant() {
        return Err(WebError::ConstantCurve);
    }
    if h.divides(phi.f1.denom()) || h.divides(phi.f2.denom()) {
        return Err(WebError::PolarCurve);
    }
    if contracts(phi, h) {
        return Err(WebError::ContractedCurve);
    }
    let omega = omega.primitive_part()?;
    let pb = pullback(phi, &omega)?;
    let m = ord_along(h, &pb.content)?;
    let ord = ord_along(h, phi.jacobian().numer())?;
    let k = omega.k();
    let bound = k as u32 * ord;
    let (image_invariant_checked, image_completely_invariant) = match image {
        Some(c) => (
            Some(webgeom::is_invariant_curve(c, &omega)),
            webgeom::is_completely_invariant_curve(c, &omega).ok(),
        ),
        None => (None, None),
    };
    Ok(MultiplicityReport {
        curve: h.to_string(),
        k,
        m,
        ord,
        bound,
        within_bound: m <= bound,
        image_invariant: m > 0,
        equality: ord > 0 && m == bound,
        curve_invariant: webgeom::is_invariant_curve(h, &pb.primitive),
        image_invariant_checked,
        image_completely_invariant,
    })
}

/// Both coordinates are constant along `{h = 0}`.
fn contracts(phi: &PlaneMap, h: &Poly2) -> bool {
    let (hx, hy) = (h.deriv_x(), h.deriv_y());
    [&phi.f1, &phi.f2].iter().all(|f| {
        let (n, d) = (f.numer(), f.denom());
        let fx = &(&n.deriv_x() * d) - &(n * &d.deriv_x());
        let fy = &(&n.deriv_y() * d) - &(n * &d.deriv_y());
        let along = &(&fx * &hy) - &(&fy * &hx);
        along.is_zero() || h.divides(&along)
    })
}

/// Degree data of a plane endomorphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AlgebraicDegree {
    pub d: u32,
    pub e: u64,
    pub lambda: u64,
    pub entropy: String,
}

/// Algebraic degree, topological degree `d^2`, first dynamical degree `d`
/// and entropy `2 log d`. Maps with base points are rejected.
pub fn algebraic_degree(phi: &PlaneMap) -> Result<AlgebraicDegree> {
    if !base_locus_empty(phi) {
        return Err(WebError::NotAnEndomorphism("the homogenized map has base points".into()));
    }
    let d = phi.degree;
    Ok(AlgebraicDegree {
        d,
        e: (d as u64).pow(2),
        lambda: d as u64,
        entropy: if d == 1 { "0".into() } else { format!("2·log({d})") },
    })
}

/// No common zero of the three homogeneous components in the projective
/// plane: exact on the line at infinity, resultant elimination plus a
/// numeric check of candidates in the affine part.
pub fn base_locus_empty(phi: &PlaneMap) -> bool {
    let d = phi.degree;
    let comps = &phi.components;
    // line at infinity: common roots of the top-degree binary forms
    let tops: Vec<Poly2> = comps
        .iter()
        .map(|p| Poly2::from_terms(p.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone()))))
        .collect();
    let nonzero: Vec<&Poly2> = tops.iter().filter(|t| !t.is_zero()).collect();
    if nonzero.iter().all(|t| t.coeff(d, 0).is_zero()) {
        return false;
    }
    let mut g = UPoly::zero();
    for t in &nonzero {
        let u = UPoly::new((0..=d).map(|i| t.coeff(i, d - i)).collect());
        g = g.gcd(&u);
    }
    if !g.is_constant() {
        return false;
    }
    // affine part
    if comps.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let combos: Vec<Poly2> = (0..3)
            .map(|_| {
                let (r, s) = (rng.random_range(1..=29), rng.random_range(1..=29));
                &(&comps[0] + &comps[1].scale_i64(r)) + &comps[2].scale_i64(s)
            })
            .collect();
        let Some(rx) = elimination(&combos, false) else { continue };
        let Some(ry) = elimination(&combos, true) else { continue };
        if rx.is_constant() || ry.is_constant() {
            return true;
        }
        return !numeric_common_zero(comps, &rx, &ry);
    }
    false
}

/// Gcd of the pairwise eliminants (in `x`, or in `y` when `swap`).
fn elimination(ps: &[Poly2], swap: bool) -> Option<UPoly> {
    let ps: Vec<Poly2> = if swap { ps.iter().map(Poly2::swap_xy).collect() } else { ps.to_vec() };
    let mut g = UPoly::zero();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let (a, b) = (&ps[i], &ps[j]);
            let r = if a.degree_y() == 0 && b.degree_y() == 0 {
                gcd(a, b)
            } else {
                let ca: Vec<Poly2> = a.to_y_coeffs().iter().map(Poly2::from_upoly_x).collect();
                let cb: Vec<Poly2> = b.to_y_coeffs().iter().map(Poly2::from_upoly_x).collect();
                resultant(&ca, &cb).ok()?
            };
            if r.is_zero() {
                return None;
            }
            let u = UPoly::new((0..=r.degree_x()).map(|e| r.coeff(e, 0)).collect());
            g = g.gcd(&u);
        }
    }
    Some(g)
}

fn numeric_common_zero(comps: &[Poly2; 3], rx: &UPoly, ry: &UPoly) -> bool {
    let xs = upoly_roots(&rx.squarefree_part());
    let ys = upoly_roots(&ry.squarefree_part());
    for &x in &xs {
        for &y in &ys {
            let vanishes = comps.iter().all(|p| {
                let scale: f64 = p
                    .terms()
                    .map(|(m, c)| rat_to_f64(c).abs() * x.norm().max(1.0).powi(m.x as i32) * y.norm().max(1.0).powi(m.y as i32))
                    .sum();
                p.eval_complex(x, y).norm() <= 1e-7 * scale.max(1.0)
            });
            if vanishes {
                return true;
            }
        }
    }
    false
}

/// Whether `pi` maps each vertical line `{x = c}` into a leaf of `omega`:
/// `omega` evaluated at `pi` on the tangent `(d/dy pi1, d/dy pi2)` vanishes.
pub fn check_image_web(pi: &PlaneMap, omega: &SymForm) -> Result<bool> {
    let t1 = pi.f1.deriv_y();
    let t2 = pi.f2.deriv_y();
    if t1.is_zero() && t2.is_zero() {
        return Err(WebError::ContractedFibration);
    }
    let k = omega.k();
    let mut total = RatFunc2::zero();
    let t1p: Vec<RatFunc2> = (0..=k).map(|i| t1.pow(i as u32)).collect();
    let t2p: Vec<RatFunc2> = (0..=k).map(|i| t2.pow(i as u32)).collect();
    for (i, a) in omega.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let ai = RatFunc2::from_poly(a.clone()).compose(&pi.f1, &pi.f2);
        total = &total + &(&ai * &(&t1p[i] * &t2p[k - i]));
    }
    Ok(total.is_zero())
}

/// The pencil `base + lambda * direction` of forms of one order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormPencil {
    pub base: SymForm,
    pub direction: SymForm,
}

/// `phi*(A) = M (c[0][0] A + c[0][1] B)`, `phi*(B) = M (c[1][0] A + c[1][1] B)`
/// for the pencil `A + lambda B`, so `lambda` goes to
/// `(c01 + lambda c11) / (c00 + lambda c10)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PencilAction {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: [[Rational; 2]; 2],
    #[serde(serialize_with = "ser_display")]
    pub multiplier: RatFunc2,
}

fn ser_matrix<S: serde::Serializer>(m: &[[Rational; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    for row in m {
        seq.serialize_element(&[row[0].to_string(), row[1].to_string()])?;
    }
    seq.end()
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl PencilAction {
    /// Every member is fixed.
    pub fn is_identity(&self) -> bool {
        let m = &self.matrix;
        m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1]
    }

    /// Image of a parameter value; `None` when it is sent to the direction
    /// form itself.
    pub fn image(&self, lambda: &Rational) -> Option<Rational> {
        let m = &self.matrix;
        let den = &m[0][0] + lambda * &m[1][0];
        (!den.is_zero()).then(|| (&m[0][1] + lambda * &m[1][1]) / den)
    }

    /// The constant relating the primitive representatives of a member and
    /// of its image.
    pub fn member_constant(&self, lambda: &Rational) -> Rational {
        &self.matrix[0][0] + lambda * &self.matrix[1][0]
    }

    pub fn describe(&self) -> String {
        if self.is_identity() {
            return "λ ↦ λ".into();
        }
        let m = &self.matrix;
        format!("λ ↦ ({} + {}·λ)/({} + {}·λ)", m[0][1], m[1][1], m[0][0], m[1][0])
    }
}

/// Pull back a pencil and express both pulled-back generators in the pencil,
/// after removing their joint content.
pub fn pencil_pullback(phi: &PlaneMap, pencil: &FormPencil) -> Result<PencilAction> {
    let (a, b) = (&pencil.base, &pencil.direction);
    if a.k() != b.k() {
        return Err(WebError::OrderMismatch(format!("{} vs {}", a.k(), b.k())));
    }
    let (ra, da) = pullback_raw(phi, a);
    let (rb, db) = pullback_raw(phi, b);
    let g = gcd(&da, &db);
    let den = &da.exact_div(&g).expect("gcd divides") * &db;
    let ra = ra.scale(&den.exact_div(&da).expect("lcm"));
    let rb = rb.scale(&den.exact_div(&db).expect("lcm"));
    let joint: Vec<Poly2> = ra.coeffs().iter().chain(rb.coeffs()).cloned().collect();
    let (content, _) = crate::exactalg::content_primitive(&joint)?;
    let qa: Vec<Poly2> = ra.coeffs().iter().map(|c| c.exact_div(&content).expect("content")).collect();
    let qb: Vec<Poly2> = rb.coeffs().iter().map(|c| c.exact_div(&content).expect("content")).collect();
    let row_a = solve_in_pencil(&qa, a, b).ok_or(WebError::NotInvariant)?;
    let row_b = solve_in_pencil(&qb, a, b).ok_or(WebError::NotInvariant)?;
    Ok(PencilAction {
        matrix: [row_a, row_b],
        multiplier: RatFunc2::new(content, den)?,
    })
}

/// Rational `(s, t)` with `q = s A + t B`, if any.
fn solve_in_pencil(q: &[Poly2], a: &SymForm, b: &SymForm) -> Option<[Rational; 2]> {
    let mut rows: Vec<[Rational; 3]> = Vec::new();
    for (i, qi) in q.iter().enumerate() {
        let monos: std::collections::BTreeSet<_> = qi
            .terms()
            .chain(a.coeff(i).terms())
            .chain(b.coeff(i).terms())
            .map(|(m, _)| *m)
            .collect();
        for m in monos {
            rows.push([a.coeff(i).coeff(m.x, m.y), b.coeff(i).coeff(m.x, m.y), qi.coeff(m.x, m.y)]);
        }
    }
    // two pivots by elimination, then verify every row
    let mut sol = [Rational::zero(), Rational::zero()];
    let mut basis: Vec<[Rational; 3]> = Vec::new();
    for r in &rows {
        let mut r = r.clone();
        for bv in &basis {
            let p = if !bv[0].is_zero() { 0 } else { 1 };
            if !r[p].is_zero() {
                let f = &r[p] / &bv[p];
                for j in 0..3 {
                    r[j] = &r[j] - &(&f * &bv[j]);
                }
            }
        }
        if r[0].is_zero() && r[1].is_zero() {
            if !r[2].is_zero() {
                return None;
            }
            continue;
        }
        basis.push(r);
    }
    match basis.len() {
        2 => {
            let (r0, r1) = (&basis[0], &basis[1]);
            // r0 has a pivot in column 0 or 1; r1 is reduced against it
            let (p0, p1) = if !r0[0].is_zero() { (0, 1) } else { (1, 0) };
            sol[p1] = &r1[2] / &r1[p1];
            sol[p0] = (&r0[2] - &(&r0[p1] * &sol[p1])) / &r0[p0];
        }
        1 => {
            let r0 = &basis[0];
            let p = if !r0[0].is_zero() { 0 } else { 1 };
            sol[p] = &r0[2] / &r0[p];
        }
        _ => {}
    }
    let ok = rows.iter().all(|r| &(&r[0] * &sol[0]) + &(&r[1] * &sol[1]) == r[2]);
    ok.then_some(sol)
}

/// Evaluate the map at a complex point (poles give non-finite values).
pub fn eval_complex(phi: &PlaneMap, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let f = |r: &RatFunc2| r.numer().eval_complex(x, y) / r.denom().eval_complex(x, y);
    (f(&phi.f1), f(&phi.f2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly2 {
        Poly2::x()
    }
    fn y() -> Poly2 {
        Poly2::y()
    }
    fn squares() -> PlaneMap {
        PlaneMap::from_polys(x().pow(2), y().pow(2)).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(squares().jacobian(), RatFunc2::from_poly(Poly2::from_i64(&[(4, 1, 1)])));
        let swap = PlaneMap::from_polys(y(), x()).unwrap();
        assert_eq!(swap.jacobian(), RatFunc2::constant(rat(-1)));
        assert_eq!(PlaneMap::from_polys(x(), x().pow(2)), Err(WebError::NonDominantMap));
        assert_eq!(PlaneMap::from_polys(x(), Poly2::one()), Err(WebError::NonDominantMap));
    }

    #[test]
    fn pullback_monomial() {
        let w = SymForm::one_form(y(), x()).unwrap();
        let pb = pullback(&squares(), &w).unwrap();
        assert_eq!(pb.primitive, w);
        assert_eq!(pb.content, Poly2::from_i64(&[(2, 1, 1)]));
        assert!(pb.denominator.is_one());
        let id = pullback(&PlaneMap::identity(), &w).unwrap();
        assert_eq!((id.primitive, id.content), (w, Poly2::one()));
    }

    #[test]
    fn multiplicity_examples() {
        let w = SymForm::one_form(y(), x()).unwrap();
        let r = multiplicity_m(&squares(), &w, &x(), Some(&x())).unwrap();
        assert_eq!((r.m, r.bound), (1, 1));
        assert!(r.equality && r.image_completely_invariant == Some(true));
        let dxdy = SymForm::dx().superpose(&SymForm::dy());
        let r = multiplicity_m(&squares(), &dxdy, &x(), None).unwrap();
        assert_eq!((r.m, r.bound), (1, 2));
        assert!(!r.equality);
        let r = multiplicity_m(&squares(), &SymForm::dx(), &y(), Some(&y())).unwrap();
        assert_eq!(r.m, 0);
        assert!(!r.image_invariant);
        // x -> (x, 0)-like contraction of {x = 0} under (x, x y)
        let blow = PlaneMap::from_polys(x(), &x() * &y()).unwrap();
        assert_eq!(multiplicity_m(&blow, &SymForm::dx(), &x(), None), Err(WebError::ContractedCurve));
    }

    #[test]
    fn invariance_examples() {
        let w = SymForm::one_form(y().scale_i64(3), x()).unwrap();
        assert!(is_invariant_web(&squares(), &w).unwrap().is_some());
        assert!(sampled_invariance(&squares(), &w, 10, 7).unwrap());
        let swap = PlaneMap::from_polys(y(), x()).unwrap();
        assert_eq!(is_invariant_web(&swap, &SymForm::dx()).unwrap(), None);
        assert!(!sampled_invariance(&swap, &SymForm::dx(), 10, 7).unwrap());
    }

    #[test]
    fn degrees() {
        let a = algebraic_degree(&squares()).unwrap();
        assert_eq!((a.d, a.e, a.lambda), (2, 4, 2));
        assert_eq!(a.entropy, "2·log(2)");
        // (x, x y) has base point [0 : 1 : 0]
        let blow = PlaneMap::from_polys(x(), &x() * &y()).unwrap();
        assert!(matches!(algebraic_degree(&blow), Err(WebError::NotAnEndomorphism(_))));
        // (1/x, 1/y) = [yz : xz : xy] has base points
        let inv = PlaneMap::new(
            RatFunc2::new(Poly2::one(), x()).unwrap(),
            RatFunc2::new(Poly2::one(), y()).unwrap(),
        )
        .unwrap();
        assert!(algebraic_degree(&inv).is_err());
        // (x^2 + y, y^2 + 1) affine base points impossible but [0:1:0]? top forms x^2, y^2, 0
        let p = PlaneMap::from_polys(&x().pow(2) + &y(), &y().pow(2) + &Poly2::one()).unwrap();
        assert_eq!(algebraic_degree(&p).unwrap().d, 2);
    }

    #[test]
    fn image_web_identity() {
        assert!(check_image_web(&PlaneMap::identity(), &SymForm::dx()).unwrap());
        assert!(!check_image_web(&PlaneMap::identity(), &SymForm::dy()).unwrap());
    }
}
