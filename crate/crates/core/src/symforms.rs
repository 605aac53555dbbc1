//! Symmetric k-forms `sum a_i dx^i dy^(k-i)` with polynomial coefficients.

use std::fmt;

use num::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Result, WebError};
use crate::exactalg::{
    content_primitive, rat, resultant, squarefree_split, Monomial, Poly2, Rational,
    UPoly,
};

/// A web of order `k` in an affine chart: `coeffs[i]` multiplies
/// `dx^i dy^(k-i)`.
#[derive(Clone, Debug)]
pub struct SymForm {
    coeffs: Vec<Poly2>,
    primitive: bool,
}

impl PartialEq for SymForm {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for SymForm {}

impl SymForm {
    /// Build from `a_0, ..., a_k`. At least one coefficient must be nonzero.
    pub fn new(coeffs: Vec<Poly2>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(Poly2::is_zero) {
            return Err(WebError::ZeroForm);
        }
        Ok(SymForm { coeffs, primitive: false })
    }

    pub(crate) fn from_raw(coeffs: Vec<Poly2>) -> Self {
        SymForm { coeffs, primitive: false }
    }

    /// `a dx + b dy`
    pub fn one_form(a: Poly2, b: Poly2) -> Result<Self> {
        Self::new(vec![b, a])
    }

    pub fn dx() -> Self {
        Self::from_raw(vec![Poly2::zero(), Poly2::one()])
    }

    pub fn dy() -> Self {
        Self::from_raw(vec![Poly2::one(), Poly2::zero()])
    }

    /// Order of the web.
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly2] {
        &self.coeffs
    }

    /// Coefficient of `dx^i dy^(k-i)`.
    pub fn coeff(&self, i: usize) -> &Poly2 {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly2::is_zero)
    }

    /// Whether the coefficients have no common factor.
    pub fn is_primitive(&self) -> bool {
        self.primitive || crate::exactalg::gcd_many(&self.coeffs).is_one()
    }

    /// Split into content and primitive part.
    pub fn primitive(&self) -> Result<(Poly2, SymForm)> {
        if self.primitive {
            return Ok((Poly2::one(), self.clone()));
        }
        let (content, coeffs) = content_primitive(&self.coeffs)?;
        Ok((content, SymForm { coeffs, primitive: true }))
    }

    /// The primitive part, discarding the content.
    pub fn primitive_part(&self) -> Result<SymForm> {
        Ok(self.primitive()?.1)
    }

    pub fn scale(&self, f: &Poly2) -> SymForm {
        SymForm::from_raw(self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn scale_rational(&self, c: &Rational) -> SymForm {
        SymForm {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
            primitive: self.primitive && !c.is_zero(),
        }
    }

    /// Sum of two forms of the same order.
    pub fn add(&self, other: &SymForm) -> Result<SymForm> {
        if self.k() != other.k() {
            return Err(WebError::OrderMismatch(format!("{} vs {}", self.k(), other.k())));
        }
        Ok(SymForm::from_raw(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Superposition: the product of the defining forms.
    pub fn superpose(&self, other: &SymForm) -> SymForm {
        let mut out = vec![Poly2::zero(); self.k() + other.k() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        SymForm::from_raw(out)
    }

    pub fn pow(&self, e: u32) -> SymForm {
        let mut acc = SymForm::from_raw(vec![Poly2::one()]);
        for _ in 0..e {
            acc = acc.superpose(self);
        }
        acc
    }

    /// Formal derivative with respect to `dx`.
    pub fn d_dx(&self) -> SymForm {
        if self.k() == 0 {
            return SymForm::from_raw(vec![Poly2::zero()]);
        }
        SymForm::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.scale(&rat(i as i64)))
                .collect(),
        )
    }

    /// Substitute `dx -> l1`, `dy -> l2` for 1-forms `l1`, `l2`.
    pub fn substitute_differentials(&self, l1: &SymForm, l2: &SymForm) -> SymForm {
        assert!(l1.k() == 1 && l2.k() == 1, "substitution needs 1-forms");
        let k = self.k();
        let p1: Vec<SymForm> = powers(l1, k);
        let p2: Vec<SymForm> = powers(l2, k);
        let mut acc = vec![Poly2::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = p1[i].superpose(&p2[k - i]).scale(a);
            for (n, c) in term.coeffs.into_iter().enumerate() {
                acc[n] = &acc[n] + &c;
            }
        }
        SymForm::from_raw(acc)
    }

    /// Action of a constant linear map `g` on `(dx, dy)`:
    /// `dx -> g00 dx + g01 dy`, `dy -> g10 dx + g11 dy`.
    pub fn linear_change(&self, g: &[[Rational; 2]; 2]) -> SymForm {
        let l1 = SymForm::from_raw(vec![Poly2::constant(g[0][1].clone()), Poly2::constant(g[0][0].clone())]);
        let l2 = SymForm::from_raw(vec![Poly2::constant(g[1][1].clone()), Poly2::constant(g[1][0].clone())]);
        self.substitute_differentials(&l1, &l2)
    }

    /// Discriminant `Res(w, d_dx w) / (k^k a_k)` of the form seen as a
    /// binary form in `(dx, dy)`. When `a_k` vanishes identically the form is
    /// first sheared by `dy -> dy + c dx` for the smallest `c` making it
    /// nonzero; the shear has determinant one and leaves the value unchanged.
    /// Order-one forms have discriminant one.
    pub fn discriminant(&self) -> Result<Poly2> {
        let k = self.k();
        if k == 0 {
            return Err(WebError::Degenerate("discriminant of an order-0 form".into()));
        }
        if k == 1 {
            return Ok(Poly2::one());
        }
        let form = if self.coeffs[k].is_zero() {
            let c = (1..=k as i64)
                .find(|&c| !self.eval_direction_coeff(c).is_zero())
                .expect("a nonzero binary form of degree k has at most k roots");
            let shear = [[rat(1), rat(0)], [rat(c), rat(1)]];
            self.linear_change(&shear)
        } else {
            self.clone()
        };
        let res = resultant(&form.coeffs, &form.d_dx().coeffs)?;
        let kk = rat(k as i64).pow(k as i32);
        let denom = form.coeffs[k].scale(&kk);
        Ok(res.exact_div(&denom).expect("a_k divides the resultant"))
    }

    /// `sum a_i c^(k-i)`: the top coefficient after the shear `dy -> dy + c dx`.
    fn eval_direction_coeff(&self, c: i64) -> Poly2 {
        let k = self.k();
        self.coeffs.iter().enumerate().fold(Poly2::zero(), |acc, (i, a)| {
            &acc + &a.scale(&rat(c).pow((k - i) as i32))
        })
    }

    /// Squarefree-split divisor of the discriminant.
    pub fn discriminant_divisor(&self) -> Result<Divisor> {
        let d = self.discriminant()?;
        if d.is_zero() {
            return Err(WebError::NonReducedWeb);
        }
        Ok(Divisor::from_poly(&d))
    }

    /// Restriction to the line `t -> (a + b t, c + d t)`: the coefficient of
    /// `dt^k`, with its numeric content removed and leading coefficient
    /// positive.
    pub fn restrict_to_line(&self, line: &LineParam) -> Result<UPoly> {
        let r = self.restrict_to_line_raw(line);
        if r.is_zero() {
            return Err(WebError::LineInsideZeroLocus);
        }
        Ok(r.primitive())
    }

    pub(crate) fn restrict_to_line_raw(&self, line: &LineParam) -> UPoly {
        let k = self.k();
        let mut acc = UPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = line.b.pow(i as i32) * line.d.pow((k - i) as i32);
            if w.is_zero() {
                continue;
            }
            let r = a.restrict_affine(&line.a, &line.b, &line.c, &line.d);
            acc = &acc + &r.scale(&w);
        }
        acc
    }

    /// Null directions at a rational point, as the binary form
    /// `sum a_i(p) u^i v^(k-i)` with `u = dx`, `v = dy`.
    pub fn directions_at(&self, x: &Rational, y: &Rational) -> Result<BinaryForm> {
        let coeffs: Vec<Rational> = self.coeffs.iter().map(|a| a.eval(x, y)).collect();
        if coeffs.iter().all(Zero::is_zero) {
            return Err(WebError::SingularPoint);
        }
        Ok(BinaryForm { coeffs })
    }

    /// Rewrite in the chart `x = 1/u`, `y = v/u` (so `u = 1/x`, `v = y/x`).
    /// The result is primitive in `(u, v)`; `u_power` records the power of
    /// `u` that was divided out, net of the cleared denominators.
    pub fn chart_change(&self) -> ChartChange {
        let k = self.k();
        let deg = self.coeffs.iter().filter_map(Poly2::total_degree).max().unwrap_or(0);
        let coeffs: Vec<Poly2> = self
            .coeffs
            .iter()
            .map(|a| {
                Poly2::from_terms(
                    a.terms()
                        .map(|(m, c)| (Monomial::new(deg - m.degree(), m.y), c.clone())),
                )
            })
            .collect();
        // dx = -du/u^2, dy = (u dv - v du)/u^2
        let l1 = SymForm::from_raw(vec![Poly2::zero(), Poly2::int(-1)]);
        let l2 = SymForm::from_raw(vec![Poly2::x(), -Poly2::y()]);
        let raw = SymForm::from_raw(coeffs).substitute_differentials(&l1, &l2);
        let (content, form) = raw.primitive().expect("chart change of a nonzero form");
        let (e, _) = content.monomial_factor();
        ChartChange {
            form,
            u_power: e as i64 - (deg as i64 + 2 * k as i64),
        }
    }

    /// Evaluate the form on the tangent direction `(u, v)` at `(x, y)`.
    pub fn eval_on(&self, x: &Rational, y: &Rational, u: &Rational, v: &Rational) -> Rational {
        let k = self.k();
        self.coeffs.iter().enumerate().fold(Rational::zero(), |acc, (i, a)| {
            acc + a.eval(x, y) * u.pow(i as i32) * v.pow((k - i) as i32)
        })
    }

    /// Render with custom coordinate names, e.g. `("s", "p")`.
    pub fn display_with(&self, vars: (&str, &str)) -> String {
        let k = self.k();
        let dvars = (format!("d{}", vars.0), format!("d{}", vars.1));
        let mut parts: Vec<(bool, String)> = Vec::new();
        for i in (0..=k).rev() {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            let mut diff = Vec::new();
            match i {
                0 => {}
                1 => diff.push(dvars.0.clone()),
                _ => diff.push(format!("{}^{}", dvars.0, i)),
            }
            match k - i {
                0 => {}
                1 => diff.push(dvars.1.clone()),
                e => diff.push(format!("{}^{}", dvars.1, e)),
            }
            let diff = diff.join("*");
            let (neg, body) = if a.len() == 1 {
                let (m, c) = a.terms().next().expect("one term");
                let mono = Poly2::monomial(c.abs(), m.x, m.y).display_with(vars);
                let body = if diff.is_empty() {
                    mono
                } else if mono == "1" {
                    diff
                } else {
                    format!("{mono}*{diff}")
                };
                (c.is_negative(), body)
            } else {
                let body = if diff.is_empty() {
                    format!("({})", a.display_with(vars))
                } else {
                    format!("({})*{}", a.display_with(vars), diff)
                };
                (false, body)
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (idx, (neg, body)) in parts.iter().enumerate() {
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        out
    }
}

fn powers(l: &SymForm, n: usize) -> Vec<SymForm> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(SymForm::from_raw(vec![Poly2::one()]));
    for i in 0..n {
        out.push(out[i].superpose(l));
    }
    out
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y")))
    }
}

impl Serialize for SymForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Result of [`SymForm::chart_change`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartChange {
    pub form: SymForm,
    pub u_power: i64,
}

/// Numeric binary form `sum c_i u^i v^(k-i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    pub coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Slope polynomial in `m = v/u`, lowest power first: `sum c_i m^(k-i)`.
    pub fn slope_polynomial(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().rev().cloned().collect())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k();
        let p = Poly2::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, (k - i) as u32), c.clone())),
        );
        f.write_str(&p.display_with(("u", "v")))
    }
}

/// Affine line `t -> (a + b t, c + d t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineParam {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl LineParam {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if b.is_zero() && d.is_zero() {
            return Err(WebError::DegenerateLine);
        }
        Ok(LineParam { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn point(&self, t: &Rational) -> (Rational, Rational) {
        (&self.a + &self.b * t, &self.c + &self.d * t)
    }
}

/// Formal integer combination of pairwise non-associate curves.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Divisor {
    components: Vec<(Poly2, i64)>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor::default()
    }

    /// Squarefree splitting of `p`; constants are dropped.
    pub fn from_poly(p: &Poly2) -> Self {
        Self::from_components(
            squarefree_split(p)
                .into_iter()
                .map(|(f, m)| (f, m as i64)),
        )
    }

    /// Collect components, normalizing each curve to be monic and merging
    /// repeated curves. Zero multiplicities are dropped.
    pub fn from_components<I: IntoIterator<Item = (Poly2, i64)>>(it: I) -> Self {
        let mut components: Vec<(Poly2, i64)> = Vec::new();
        for (f, m) in it {
            let f = f.monic();
            match components.iter_mut().find(|(g, _)| *g == f) {
                Some(e) => e.1 += m,
                None => components.push((f, m)),
            }
        }
        components.retain(|(_, m)| *m != 0);
        components.sort_by_cached_key(|(f, _)| (f.total_degree(), f.to_string()));
        Divisor { components }
    }

    pub fn components(&self) -> &[(Poly2, i64)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Multiplicity of the curve `h` (zero when absent).
    pub fn multiplicity(&self, h: &Poly2) -> i64 {
        let h = h.monic();
        self.components
            .iter()
            .find(|(f, _)| *f == h)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Sum of multiplicity times degree.
    pub fn degree(&self) -> i64 {
        self.components
            .iter()
            .map(|(f, m)| m * f.total_degree().unwrap_or(0) as i64)
            .sum()
    }

    pub fn scaled(&self, n: i64) -> Divisor {
        Divisor::from_components(self.components.iter().map(|(f, m)| (f.clone(), m * n)))
    }

    pub fn sum(&self, other: &Divisor) -> Divisor {
        Divisor::from_components(self.components.iter().chain(&other.components).cloned())
    }

    /// Split components by the supplied factors where they divide.
    pub fn refine(&self, factors: &[Poly2]) -> Divisor {
        let mut out = Vec::new();
        for (f, m) in &self.components {
            let mut rest = f.clone();
            for h in factors {
                if h.is_constant() {
                    continue;
                }
                while let Some(q) = rest.exact_div(h) {
                    if q.is_constant() && rest.monic() == h.monic() {
                        break;
                    }
                    out.push((h.clone(), *m));
                    rest = q;
                }
            }
            if !rest.is_constant() {
                out.push((rest, *m));
            }
        }
        Divisor::from_components(out)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, m)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {m}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.components.len()))?;
        for (p, m) in &self.components {
            seq.serialize_element(&(p.to_string(), m))?;
        }
        seq.end()
    }
}
