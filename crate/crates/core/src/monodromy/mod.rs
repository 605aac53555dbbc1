//! Numerical monodromy of the web directions along a generic line.
//!
//! On a line `t -> (a + b t, c + d t)` the directions of the web are the
//! roots of the binary form `sum a_i(t) u^i v^(k-i)`. Each root is followed
//! on the projective slope line, either as `m = v/u` or as `w = u/v`,
//! whichever has modulus at most one.

pub mod perm;
pub mod roots;

use std::f64::consts::PI;

use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WebError};
use crate::exactalg::{rat, rat_to_f64, UPoly};
use crate::symforms::{LineParam, SymForm};

pub use perm::{group_order, orbits, Perm};

/// Newton tolerance for sheet refinement.
pub const TOLERANCE: f64 = 1e-10;
const POLYGON: usize = 32;
const GROUP_CAP: usize = 5040;

/// Which affine chart of the slope line a sheet lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Chart {
    /// `m = dy/dx`
    Slope,
    /// `w = dx/dy`
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct Sheet {
    pub chart: Chart,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_complex(*z))
}

pub fn fmt_complex(z: Complex64) -> String {
    let clean = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{:.6}{:+.6}i", clean(z.re), clean(z.im))
}

impl Sheet {
    fn homogeneous(&self) -> (Complex64, Complex64) {
        match self.chart {
            Chart::Slope => (Complex64::new(1.0, 0.0), self.value),
            Chart::Inverse => (self.value, Complex64::new(1.0, 0.0)),
        }
    }

    /// Slope `dy/dx`, infinite for the vertical direction.
    pub fn slope(&self) -> Complex64 {
        match self.chart {
            Chart::Slope => self.value,
            Chart::Inverse => 1.0 / self.value,
        }
    }

    fn normalized(self) -> Sheet {
        if self.value.norm() > 1.0 {
            let other = match self.chart {
                Chart::Slope => Chart::Inverse,
                Chart::Inverse => Chart::Slope,
            };
            Sheet { chart: other, value: 1.0 / self.value }
        } else {
            self
        }
    }
}

/// Chordal distance on the projective line.
pub fn chordal(a: &Sheet, b: &Sheet) -> f64 {
    let (a1, a2) = a.homogeneous();
    let (b1, b2) = b.homogeneous();
    let na = (a1.norm_sqr() + a2.norm_sqr()).sqrt();
    let nb = (b1.norm_sqr() + b2.norm_sqr()).sqrt();
    (a1 * b2 - a2 * b1).norm() / (na * nb)
}

fn min_separation(sheets: &[Sheet]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..sheets.len() {
        for j in i + 1..sheets.len() {
            sep = sep.min(chordal(&sheets[i], &sheets[j]));
        }
    }
    sep
}

/// The coefficients `a_i` of a form restricted to a line, as polynomials in
/// the line parameter.
#[derive(Clone, Debug)]
pub struct LineField {
    coeffs: Vec<Vec<Complex64>>,
    derivs: Vec<Vec<Complex64>>,
}

fn to_complex(p: &UPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(rat_to_f64(c), 0.0)).collect()
}

fn horner(c: &[Complex64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * t + a)
}

impl LineField {
    pub fn new(omega: &SymForm, line: &LineParam) -> Self {
        let polys: Vec<UPoly> = omega
            .coeffs()
            .iter()
            .map(|a| a.restrict_affine(&line.a, &line.b, &line.c, &line.d))
            .collect();
        LineField {
            coeffs: polys.iter().map(to_complex).collect(),
            derivs: polys.iter().map(|p| to_complex(&p.derivative())).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn at(&self, t: Complex64) -> (Vec<Complex64>, Vec<Complex64>) {
        (
            self.coeffs.iter().map(|c| horner(c, t)).collect(),
            self.derivs.iter().map(|c| horner(c, t)).collect(),
        )
    }

    /// Polynomial in the chart variable, lowest power first.
    fn chart_poly(chart: Chart, c: &[Complex64]) -> Vec<Complex64> {
        match chart {
            Chart::Slope => c.iter().rev().copied().collect(),
            Chart::Inverse => c.to_vec(),
        }
    }

    /// `(f, f_z, f_t)` for a sheet at parameter `t`.
    fn residual(&self, t: Complex64, s: &Sheet) -> (Complex64, Complex64, Complex64) {
        let (c, dc) = self.at(t);
        let p = Self::chart_poly(s.chart, &c);
        let dp = Self::chart_poly(s.chart, &dc);
        let (f, fz) = roots::eval_with_derivative(&p, s.value);
        let ft = horner(&dp, s.value);
        (f, fz, ft)
    }

    fn newton(&self, t: Complex64, mut s: Sheet) -> Option<Sheet> {
        for _ in 0..12 {
            let (f, fz, _) = self.residual(t, &s);
            if fz.norm() == 0.0 || !fz.is_finite() {
                return None;
            }
            let step = f / fz;
            s.value -= step;
            if step.norm() <= TOLERANCE * s.value.norm().max(1.0) {
                return Some(s);
            }
        }
        None
    }

    /// The web directions at `t`, including a vertical one when the `dy^k`
    /// coefficient vanishes there.
    pub fn sheets_at(&self, t: Complex64) -> Option<Vec<Sheet>> {
        let k = self.k();
        let (c, _) = self.at(t);
        let slope_poly = Self::chart_poly(Chart::Slope, &c);
        let finite = roots::poly_roots(&slope_poly);
        let mut sheets: Vec<Sheet> = finite
            .into_iter()
            .map(|m| Sheet { chart: Chart::Slope, value: m }.normalized())
            .collect();
        while sheets.len() < k {
            sheets.push(Sheet { chart: Chart::Inverse, value: Complex64::zero() });
        }
        let sheets: Option<Vec<Sheet>> = sheets.into_iter().map(|s| self.newton(t, s)).map(|s| s.map(Sheet::normalized)).collect();
        let sheets = sheets?;
        (min_separation(&sheets) > 10.0 * TOLERANCE).then_some(sheets)
    }
}

/// Sheets over a base point of the line.
#[derive(Clone, Debug, Serialize)]
pub struct SheetSystem {
    #[serde(serialize_with = "ser_complex")]
    pub base_point: Complex64,
    pub sheets: Vec<Sheet>,
    pub tolerance: f64,
    pub min_separation: f64,
}

impl SheetSystem {
    pub fn new(field: &LineField, base_point: Complex64) -> Result<Self> {
        let sheets = field.sheets_at(base_point).ok_or(WebError::NonGenericLine)?;
        let min_separation = min_separation(&sheets);
        Ok(SheetSystem { base_point, sheets, tolerance: TOLERANCE, min_separation })
    }
}

/// Continue all sheets along one segment with predictor-corrector steps.
fn track_segment(field: &LineField, sheets: &mut Vec<Sheet>, from: Complex64, to: Complex64, total: f64) -> Result<()> {
    let len = (to - from).norm();
    if len == 0.0 {
        return Ok(());
    }
    let max_step = (len / 16.0).max(1e-3).min(len);
    let mut h = max_step;
    let mut s = 0.0;
    while s < len {
        let step = h.min(len - s);
        let t0 = from + (to - from) * (s / len);
        let t1 = from + (to - from) * ((s + step) / len);
        match advance(field, sheets, t0, t1) {
            Some(next) => {
                *sheets = next;
                s += step;
                h = (h * 1.5).min(max_step);
            }
            None => {
                h /= 2.0;
                if h < 1e-12 * total {
                    return Err(WebError::TrackingFailure(format!(
                        "step underflow near t = {}",
                        fmt_complex(t0)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn advance(field: &LineField, sheets: &[Sheet], t0: Complex64, t1: Complex64) -> Option<Vec<Sheet>> {
    let sep = min_separation(sheets);
    let dt = t1 - t0;
    let mut out = Vec::with_capacity(sheets.len());
    for s in sheets {
        let (_, fz, ft) = field.residual(t0, s);
        if fz.norm() == 0.0 {
            return None;
        }
        let pred = Sheet { chart: s.chart, value: s.value - ft / fz * dt };
        let next = field.newton(t1, pred)?;
        if chordal(s, &next) >= sep / 3.0 {
            return None;
        }
        out.push(next.normalized());
    }
    (min_separation(&out) > 10.0 * TOLERANCE).then_some(out)
}

/// Follow the sheets of `system` around the closed polygon `path`
/// (starting and ending at the base point) and return the permutation
/// sending each departure sheet to its arrival sheet.
pub fn track_loop(field: &LineField, system: &SheetSystem, path: &[Complex64]) -> Result<Perm> {
    let total: f64 = path.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
    let mut sheets = system.sheets.clone();
    for w in path.windows(2) {
        track_segment(field, &mut sheets, w[0], w[1], total.max(1e-300))?;
    }
    let mut images = Vec::with_capacity(sheets.len());
    for s in &sheets {
        let (best, dist) = system
            .sheets
            .iter()
            .enumerate()
            .map(|(j, b)| (j, chordal(s, b)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least one sheet");
        if dist >= system.min_separation / 3.0 {
            return Err(WebError::MatchingAmbiguity);
        }
        images.push(best);
    }
    Perm::from_images(images).ok_or(WebError::MatchingAmbiguity)
}

/// Elementary loop: straight to the circle around `b`, once around it
/// counterclockwise, and back.
pub fn elementary_loop(base: Complex64, b: Complex64, radius: f64) -> Vec<Complex64> {
    let dir = (base - b) / (base - b).norm();
    let start = dir.arg();
    let mut path = vec![base];
    for i in 0..=POLYGON {
        let theta = start + 2.0 * PI * i as f64 / POLYGON as f64;
        path.push(b + Complex64::from_polar(radius, theta));
    }
    path.push(base);
    path
}

/// Large clockwise circle about the base point, entered along the ray of
/// angle `theta`: a positive loop around the point at infinity of the line.
pub fn infinity_loop(base: Complex64, radius: f64, theta: f64) -> Vec<Complex64> {
    let n = 2 * POLYGON;
    let mut path = vec![base];
    for i in 0..=n {
        let a = theta - 2.0 * PI * i as f64 / n as f64;
        path.push(base + Complex64::from_polar(radius, a));
    }
    path.push(base);
    path
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sqr();
    if l2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * ab.conj()).re / l2).clamp(0.0, 1.0);
    (p - (a + ab * s)).norm()
}

/// Branch points of the web on a line: roots of the squarefree part of the
/// discriminant restricted to the line.
pub fn branch_points_on_line(omega: &SymForm, line: &LineParam) -> Result<Vec<Complex64>> {
    let disc = omega.discriminant()?;
    if disc.is_zero() {
        return Err(WebError::NonReducedWeb);
    }
    branch_points_from(&disc, line)
}

fn branch_points_from(disc: &crate::Poly2, line: &LineParam) -> Result<Vec<Complex64>> {
    let r = disc.restrict_affine(&line.a, &line.b, &line.c, &line.d);
    if r.is_zero() {
        return Err(WebError::NonGenericLine);
    }
    let mut pts: Vec<Complex64> = Vec::new();
    for z in roots::upoly_roots(&r.squarefree_part()) {
        if pts.iter().all(|p| (p - z).norm() > 1e-8 * z.norm().max(1.0)) {
            pts.push(z);
        }
    }
    Ok(pts)
}

/// Monodromy of the web along a generic line.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyResult {
    pub k: usize,
    pub seed: u64,
    pub line: [String; 4],
    #[serde(serialize_with = "ser_complex")]
    pub base_point: Complex64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub branch_points: Vec<Complex64>,
    pub generators: Vec<Perm>,
    /// Orbits on sheet labels `1..=k`.
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    pub group_order: Option<usize>,
    /// The ordered product of the generators inverts the loop around the
    /// point at infinity.
    pub infinity_consistent: bool,
    pub verdict: &'static str,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| fmt_complex(*z)))
}

impl MonodromyResult {
    /// Orbit sizes, sorted.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

/// Monodromy with one generator per branch point on a random generic line.
/// Tracking failures trigger up to three resamplings of line and base point.
pub fn web_monodromy(omega: &SymForm, seed: u64) -> Result<MonodromyResult> {
    let omega = omega.primitive_part()?;
    let k = omega.k();
    let disc = if k >= 2 { omega.discriminant()? } else { crate::Poly2::one() };
    if disc.is_zero() {
        return Err(WebError::NonReducedWeb);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = WebError::NonGenericLine;
    for _ in 0..4 {
        match attempt(&omega, &disc, seed, &mut rng) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn random_line(rng: &mut ChaCha8Rng) -> LineParam {
    let mut nz = || loop {
        let v = rng.random_range(-7..=7);
        if v != 0 {
            return v;
        }
    };
    let (b, d) = (nz(), nz());
    let a = rng.random_range(-7..=7);
    let c = rng.random_range(-7..=7);
    LineParam::new(rat(a), rat(b), rat(c), rat(d)).expect("nonzero direction")
}

fn attempt(omega: &SymForm, disc: &crate::Poly2, seed: u64, rng: &mut ChaCha8Rng) -> Result<MonodromyResult> {
    let k = omega.k();
    let line = random_line(rng);
    let branch = branch_points_from(disc, &line)?;
    let field = LineField::new(omega, &line);

    let center = if branch.is_empty() {
        Complex64::zero()
    } else {
        branch.iter().sum::<Complex64>() / branch.len() as f64
    };
    let spread = branch.iter().map(|b| (b - center).norm()).fold(1.0, f64::max);

    // base point: away from branch points, with entry segments clearing the
    // other discs
    let mut chosen = None;
    for _ in 0..200 {
        let t0 = center
            + Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)) * spread;
        let radii: Vec<f64> = branch
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let nearest = branch
                    .iter()
                    .enumerate()
                    .filter(|(l, _)| *l != j)
                    .map(|(_, c)| (b - c).norm())
                    .fold((b - t0).norm(), f64::min);
                nearest / 2.0
            })
            .collect();
        let clear = branch.iter().enumerate().all(|(j, b)| {
            let entry = b + (t0 - b) / (t0 - b).norm() * radii[j];
            branch
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != j)
                .all(|(l, c)| segment_distance(*c, t0, entry) > 1.2 * radii[l])
        });
        if !clear {
            continue;
        }
        if let Ok(system) = SheetSystem::new(&field, t0) {
            chosen = Some((system, radii));
            break;
        }
    }
    let (system, radii) = chosen.ok_or(WebError::NonGenericLine)?;
    let t0 = system.base_point;

    // ray to infinity through the widest angular gap
    let mut angles: Vec<f64> = branch.iter().map(|b| (b - t0).arg()).collect();
    angles.sort_by(f64::total_cmp);
    let theta = if angles.is_empty() {
        0.0
    } else {
        let mut best = (angles[0] + 2.0 * PI - angles[angles.len() - 1], angles[angles.len() - 1]);
        for w in angles.windows(2) {
            if w[1] - w[0] > best.0 {
                best = (w[1] - w[0], w[0]);
            }
        }
        best.1 + best.0 / 2.0
    };
    let mut order: Vec<usize> = (0..branch.len()).collect();
    let rel = |j: usize| ((branch[j] - t0).arg() - theta).rem_euclid(2.0 * PI);
    order.sort_by(|&i, &j| rel(i).total_cmp(&rel(j)));

    let generators: Vec<Perm> = order
        .par_iter()
        .map(|&j| track_loop(&field, &system, &elementary_loop(t0, branch[j], radii[j])))
        .collect::<Result<Vec<_>>>()?;

    let big = 2.0 * branch.iter().map(|b| (b - t0).norm()).fold(1.0, f64::max);
    let at_infinity = track_loop(&field, &system, &infinity_loop(t0, big, theta))?;
    let product = generators.iter().fold(Perm::identity(k), |acc, g| acc.then(g));
    let infinity_consistent = product == at_infinity.inverse();

    let orbits: Vec<Vec<usize>> = orbits(k, &generators)
        .into_iter()
        .map(|o| o.into_iter().map(|i| i + 1).collect())
        .collect();
    Ok(MonodromyResult {
        k,
        seed,
        line: [&line.a, &line.b, &line.c, &line.d].map(|c| c.to_string()),
        base_point: t0,
        branch_points: order.iter().map(|&j| branch[j]).collect(),
        transitive: orbits.len() == 1,
        group_order: group_order(k, &generators, GROUP_CAP),
        orbits,
        generators,
        infinity_consistent,
        verdict: "numerical",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly2;

    fn conic() -> SymForm {
        SymForm::new(vec![Poly2::one(), -Poly2::x(), Poly2::y()]).unwrap()
    }

    #[test]
    fn branch_point_examples() {
        let line = LineParam::from_i64(0, 1, 0, 0).unwrap();
        let b = branch_points_on_line(&conic(), &line).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].norm() < 1e-9);
        let dxdy = SymForm::dx().superpose(&SymForm::dy());
        assert!(branch_points_on_line(&dxdy, &LineParam::from_i64(1, 2, 3, 4).unwrap()).unwrap().is_empty());
        let prod = SymForm::new(vec![-Poly2::x().pow(2), Poly2::zero(), Poly2::y().pow(2)]).unwrap();
        let b = branch_points_on_line(&prod, &LineParam::from_i64(0, 1, 1, 0).unwrap()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].norm() < 1e-9);
    }

    #[test]
    fn conic_small_loop_is_transposition() {
        let line = LineParam::from_i64(1, 2, -3, 1).unwrap();
        let field = LineField::new(&conic(), &line);
        let b = branch_points_on_line(&conic(), &line).unwrap();
        let system = SheetSystem::new(&field, Complex64::new(0.3, 2.1)).unwrap();
        let nearest = (b[0] - b[1]).norm() / 2.0;
        let p = track_loop(&field, &system, &elementary_loop(system.base_point, b[0], nearest.min(0.5))).unwrap();
        assert_eq!(p, Perm(vec![1, 0]));
    }

    #[test]
    fn parallel_webs_have_trivial_monodromy() {
        let dxdy = SymForm::dx().superpose(&SymForm::dy());
        let r = web_monodromy(&dxdy, 1).unwrap();
        assert!(r.generators.is_empty() && !r.transitive);
        let three = dxdy.superpose(&SymForm::one_form(Poly2::one(), Poly2::one()).unwrap());
        let r = web_monodromy(&three, 1).unwrap();
        assert_eq!(r.orbits, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn base_sheets_match_directions() {
        let line = LineParam::from_i64(1, 1, 2, 3).unwrap();
        let field = LineField::new(&conic(), &line);
        let system = SheetSystem::new(&field, Complex64::new(2.0, 0.0)).unwrap();
        // t = 2 is the point (3, 8): slopes solve m^2 - 3 m + 8 = 0
        for s in &system.sheets {
            let m = s.slope();
            assert!((m * m - 3.0 * m + 8.0).norm() < 1e-9);
        }
    }
}
