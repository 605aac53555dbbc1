//! Webs on the projective plane: degree, discriminant degree, invariant
//! curves, tangency divisors and the degree bound for invariant webs.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, WebError};
use crate::exactalg::{ord_along, ratio, squarefree_split, Poly2, Rational};
use crate::planemaps::{self, PlaneMap};
use crate::symforms::{Divisor, LineParam, SymForm};

/// A web given by primitive forms in the chart `(x, y)` and in the chart
/// `(u, v) = (1/x, y/x)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WebOnP2 {
    pub chart1: SymForm,
    pub chart2: SymForm,
    /// Power of `u` removed from the second chart form.
    pub infinity_power: i64,
}

impl WebOnP2 {
    pub fn new(omega: &SymForm) -> Result<Self> {
        let chart1 = omega.primitive_part()?;
        let cc = chart1.chart_change();
        Ok(WebOnP2 { chart1, chart2: cc.form, infinity_power: cc.u_power })
    }

    pub fn k(&self) -> usize {
        self.chart1.k()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.random_range(-97..=97), rng.random_range(1..=97))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Tangencies with one line: affine part plus the contribution at its point
/// at infinity, read in the second chart.
fn tangencies(w: &WebOnP2, line: &LineParam) -> Option<u32> {
    let affine = w.chart1.restrict_to_line(line).ok()?;
    // in (u, v): u = s, v = d/b + (c - a d/b) s
    let slope = &line.d / &line.b;
    let at_inf = LineParam::new(Rational::zero(), ratio(1, 1), slope.clone(), &line.c - &(&line.a * &slope)).ok()?;
    let q = w.chart2.restrict_to_line_raw(&at_inf);
    if q.is_zero() {
        return None;
    }
    let ord = q.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero") as u32;
    Some(affine.degree().unwrap_or(0) as u32 + ord)
}

/// Number of tangencies with a generic line, agreed on by three random lines.
pub fn web_degree(w: &WebOnP2, seed: u64) -> Result<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let counts: Vec<Option<u32>> = (0..3)
            .map(|_| {
                let line = LineParam::new(
                    random_rational(&mut rng),
                    random_nonzero(&mut rng),
                    random_rational(&mut rng),
                    random_nonzero(&mut rng),
                )
                .expect("nonzero direction");
                tangencies(w, &line)
            })
            .collect();
        if let [Some(a), Some(b), Some(c)] = counts[..] {
            if a == b && b == c {
                return Ok(a);
            }
        }
    }
    Err(WebError::DegenerateSampling)
}

/// Degree of the normal bundle, `deg + 2k`.
pub fn normal_bundle_degree(w: &WebOnP2, seed: u64) -> Result<u32> {
    Ok(web_degree(w, seed)? + 2 * w.k() as u32)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiscriminantDegree {
    pub degree: u32,
    pub affine: u32,
    pub at_infinity: u32,
    pub computed: u32,
    pub predicted: u32,
    pub pass: bool,
}

/// Compare the projective degree of the discriminant with
/// `(k - 1)(2 deg + k)`.
pub fn discriminant_degree_check(w: &WebOnP2, seed: u64) -> Result<DiscriminantDegree> {
    let k = w.k() as u32;
    if k < 2 {
        return Err(WebError::Degenerate("discriminant degree needs k >= 2".into()));
    }
    let d1 = w.chart1.discriminant()?;
    let d2 = w.chart2.discriminant()?;
    if d1.is_zero() || d2.is_zero() {
        return Err(WebError::NonReducedWeb);
    }
    let affine = d1.total_degree().unwrap_or(0);
    let at_infinity = ord_along(&Poly2::x(), &d2)?;
    let degree = web_degree(w, seed)?;
    let computed = affine + at_infinity;
    let predicted = (k - 1) * (2 * degree + k);
    Ok(DiscriminantDegree { degree, affine, at_infinity, computed, predicted, pass: computed == predicted })
}

/// `omega` evaluated on the tangent field `(h_y, -h_x)` vanishes along `h`.
pub fn is_invariant_curve(h: &Poly2, omega: &SymForm) -> bool {
    let k = omega.k();
    let (t1, t2) = (h.deriv_y(), -h.deriv_x());
    let mut total = Poly2::zero();
    for (i, a) in omega.coeffs().iter().enumerate() {
        if !a.is_zero() {
            total = &total + &(&(a * &t1.pow(i as u32)) * &t2.pow((k - i) as u32));
        }
    }
    total.is_zero() || h.divides(&total)
}

/// Along `h` the form is the k-th power of `dh`: cross-multiplied
/// coefficients agree modulo `h`.
pub fn is_completely_invariant_curve(h: &Poly2, omega: &SymForm) -> Result<bool> {
    let k = omega.k();
    let reduce = |p: &Poly2| if p.is_zero() { Poly2::zero() } else { p.div_rem(h).1 };
    let a: Vec<Poly2> = omega.coeffs().iter().map(reduce).collect();
    if a.iter().all(Poly2::is_zero) {
        return Err(WebError::Degenerate("form vanishes identically along the curve".into()));
    }
    let (hx, hy) = (h.deriv_x(), h.deriv_y());
    let beta: Vec<Poly2> = (0..=k)
        .map(|i| {
            let binom = (0..i).fold(1i64, |acc, j| acc * (k - j) as i64 / (j + 1) as i64);
            (&hx.pow(i as u32) * &hy.pow((k - i) as u32)).scale_i64(binom)
        })
        .collect();
    for i in 0..=k {
        for j in i + 1..=k {
            let cross = &(&a[i] * &beta[j]) - &(&a[j] * &beta[i]);
            if !(cross.is_zero() || h.divides(&cross)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Divisor of `a e - b c` for `a dx + b dy` and `c dx + e dy`.
pub fn tangency_divisor(w1: &SymForm, w2: &SymForm) -> Result<Divisor> {
    if w1.k() != 1 || w2.k() != 1 {
        return Err(WebError::OrderMismatch("tangency needs two foliations".into()));
    }
    let (a, b) = (w1.coeff(1), w1.coeff(0));
    let (c, e) = (w2.coeff(1), w2.coeff(0));
    let det = &(a * e) - &(b * c);
    if det.is_zero() {
        return Err(WebError::IdenticalFoliations);
    }
    Ok(Divisor::from_poly(&det))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FactorCheck {
    pub factor: String,
    pub m: u32,
    pub ord: u32,
    pub bound: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeBound {
    pub degree: u32,
    pub k: usize,
    pub pass: bool,
    pub equality: bool,
    pub factors: Vec<FactorCheck>,
    /// In the equality case, whether every factor reaches `m = k ord`.
    pub equality_consistent: Option<bool>,
}

/// `deg(W) <= k` for a web invariant by an endomorphism of degree at least
/// two, with the factor-wise equality test when `deg(W) = k`. Factors of the
/// pullback content come from squarefree splitting refined by `extra`.
pub fn verify_degree_bound(phi: &PlaneMap, w: &WebOnP2, extra: &[Poly2], seed: u64) -> Result<DegreeBound> {
    if planemaps::is_invariant_web(phi, &w.chart1)?.is_none() {
        return Err(WebError::NotInvariant);
    }
    let deg = planemaps::algebraic_degree(phi)?;
    if deg.d < 2 {
        return Err(WebError::NotAnEndomorphism("degree one".into()));
    }
    let k = w.k();
    let degree = web_degree(w, seed)?;
    let pb = planemaps::pullback(phi, &w.chart1)?;
    let jac = phi.jacobian();
    let split: Vec<Poly2> = squarefree_split(&pb.content).into_iter().map(|(f, _)| f).collect();
    let divisor = Divisor::from_components(split.into_iter().map(|f| (f, 1))).refine(extra);
    let mut factors = Vec::new();
    for (f, _) in divisor.components() {
        let m = ord_along(f, &pb.content)?;
        let ord = ord_along(f, jac.numer())?;
        factors.push(FactorCheck { factor: f.to_string(), m, ord, bound: k as u32 * ord });
    }
    let equality = degree as usize == k;
    let equality_consistent = equality.then(|| factors.iter().all(|f| f.m == f.bound));
    Ok(DegreeBound {
        degree,
        k,
        pass: degree as usize <= k,
        equality,
        factors,
        equality_consistent,
    })
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
    fn p(t: &[(i64, u32, u32)]) -> Poly2 {
        Poly2::from_i64(t)
    }
    fn web(cs: Vec<Poly2>) -> WebOnP2 {
        WebOnP2::new(&SymForm::new(cs).unwrap()).unwrap()
    }
    fn dual_conic() -> WebOnP2 {
        web(vec![Poly2::one(), -x(), y()])
    }
    fn product() -> WebOnP2 {
        web(vec![-(&x() * &x()), Poly2::zero(), &y() * &y()])
    }

    #[test]
    fn degrees() {
        let pencil = WebOnP2::new(&SymForm::one_form(y(), -x()).unwrap()).unwrap();
        assert_eq!(web_degree(&pencil, 1).unwrap(), 0);
        assert_eq!(web_degree(&dual_conic(), 1).unwrap(), 0);
        assert_eq!(web_degree(&product(), 1).unwrap(), 1);
        assert_eq!(normal_bundle_degree(&pencil, 1).unwrap(), 2);
        assert_eq!(normal_bundle_degree(&dual_conic(), 1).unwrap(), 4);
        assert_eq!(normal_bundle_degree(&product(), 1).unwrap(), 5);
    }

    #[test]
    fn discriminant_degrees() {
        let c = discriminant_degree_check(&dual_conic(), 1).unwrap();
        assert_eq!((c.computed, c.predicted, c.at_infinity), (2, 2, 0));
        let dxdy = WebOnP2::new(&SymForm::dx().superpose(&SymForm::dy())).unwrap();
        let c = discriminant_degree_check(&dxdy, 1).unwrap();
        assert_eq!((c.affine, c.at_infinity, c.predicted), (0, 2, 2));
        assert!(c.pass);
        let dual = web(vec![p(&[(1, 1, 0), (-1, 2, 1)]), p(&[(2, 1, 2)]), p(&[(-1, 0, 3)])]);
        let c = discriminant_degree_check(&dual, 1).unwrap();
        assert_eq!((c.degree, c.computed, c.predicted), (1, 4, 4));
    }

    #[test]
    fn invariant_curves() {
        let pencil = SymForm::one_form(y(), -x()).unwrap();
        assert!(is_invariant_curve(&x(), &pencil));
        let conic = SymForm::new(vec![Poly2::one(), -x(), y()]).unwrap();
        assert!(is_invariant_curve(&p(&[(1, 2, 0), (-4, 0, 1)]), &conic));
        // leaves of [dx] are the vertical lines
        assert!(is_invariant_curve(&x(), &SymForm::dx()));
        assert!(!is_invariant_curve(&y(), &SymForm::dx()));
        assert!(is_invariant_curve(&y(), &SymForm::dy()));
    }

    #[test]
    fn completely_invariant_curves() {
        assert!(is_completely_invariant_curve(&x(), &SymForm::dx().pow(2)).unwrap());
        let dxdy = SymForm::dx().superpose(&SymForm::dy());
        assert!(!is_completely_invariant_curve(&x(), &dxdy).unwrap());
        assert!(is_invariant_curve(&x(), &dxdy));
        let w = SymForm::new(vec![Poly2::one(), Poly2::zero(), y()]).unwrap();
        assert!(is_completely_invariant_curve(&y(), &w).unwrap());
        let w = SymForm::new(vec![x(), Poly2::zero()]).unwrap();
        assert!(is_completely_invariant_curve(&x(), &w).is_err());
    }

    #[test]
    fn tangency_examples() {
        assert!(tangency_divisor(&SymForm::dx(), &SymForm::dy()).unwrap().is_empty());
        let f = SymForm::one_form(-y(), x()).unwrap();
        assert_eq!(tangency_divisor(&SymForm::dx(), &f).unwrap(), Divisor::from_components([(x(), 1)]));
        let a = SymForm::one_form(y(), x()).unwrap();
        let b = SymForm::one_form(y(), -x()).unwrap();
        assert_eq!(tangency_divisor(&a, &b).unwrap(), Divisor::from_components([(x(), 1), (y(), 1)]));
        assert_eq!(tangency_divisor(&a, &a.scale_rational(&ratio(2, 1))), Err(WebError::IdenticalFoliations));
    }

    #[test]
    fn degree_bound_examples() {
        let squares = PlaneMap::from_polys(x().pow(2), y().pow(2)).unwrap();
        let dxdy = WebOnP2::new(&SymForm::dx().superpose(&SymForm::dy())).unwrap();
        let r = verify_degree_bound(&squares, &dxdy, &[], 1).unwrap();
        assert_eq!((r.degree, r.k, r.pass, r.equality), (0, 2, true, false));
    }
}
