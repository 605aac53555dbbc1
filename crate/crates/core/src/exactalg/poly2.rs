use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{One, Signed, Zero};

use super::{rat, rat_to_f64, rational_gcd, Rational, UPoly};

/// Exponent pair of a monomial `x^x y^y`, ordered graded-lexicographically
/// (total degree first, then the power of `x`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse bivariate polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration runs in
/// increasing graded-lex order and the leading term is the last entry. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Poly2 { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in iter {
            *terms.entry(m).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly2 { terms }
    }

    /// Build from `(coefficient, x-exponent, y-exponent)` integer triples.
    pub fn from_i64(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, i, j)| (Monomial::new(i, j), rat(c))))
    }

    /// Embed a univariate polynomial as a polynomial in `x`.
    pub fn from_upoly_x(p: &UPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, 0), c.clone())),
        )
    }

    /// Embed a univariate polynomial as a polynomial in `y`.
    pub fn from_upoly_y(p: &UPoly) -> Self {
        Self::from_upoly_x(p).swap_xy()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Leading coefficient scaled to one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Positive rational gcd of the coefficients (zero for the zero polynomial).
    pub fn numeric_content(&self) -> Rational {
        rational_gcd(self.terms.values())
    }

    /// Divide out the numeric content and make the leading coefficient positive.
    pub fn numeric_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.numeric_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&(Rational::one() / c))
    }

    pub fn mul_monomial(&self, c: &Rational, i: u32, j: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (Monomial::new(m.x + i, m.y + j), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn deriv_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * rat(m.x as i64))),
        )
    }

    pub fn deriv_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * rat(m.y as i64))),
        )
    }

    pub fn swap_xy(&self) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let dx = self.degree_x() as usize;
        let dy = self.degree_y() as usize;
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + c * &xp[m.x as usize] * &yp[m.y as usize]
        })
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (m, c)| {
            acc + x.powu(m.x) * y.powu(m.y) * rat_to_f64(c)
        })
    }

    /// Substitute polynomials for `x` and `y`.
    pub fn substitute(&self, xs: &Poly2, ys: &Poly2) -> Poly2 {
        let xp = poly_powers(xs, self.degree_x() as usize);
        let yp = poly_powers(ys, self.degree_y() as usize);
        let mut acc = Poly2::zero();
        for (m, c) in &self.terms {
            let t = (&xp[m.x as usize] * &yp[m.y as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute `x = a + b t`, `y = c + d t` and return the univariate result.
    pub fn restrict_affine(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> UPoly {
        let xs = UPoly::new(vec![a.clone(), b.clone()]);
        let ys = UPoly::new(vec![c.clone(), d.clone()]);
        let xp = upoly_powers(&xs, self.degree_x() as usize);
        let yp = upoly_powers(&ys, self.degree_y() as usize);
        let mut acc = UPoly::zero();
        for (m, k) in &self.terms {
            acc = &acc + &(&xp[m.x as usize] * &yp[m.y as usize]).scale(k);
        }
        acc
    }

    /// Multivariate division by a single divisor under graded-lex order.
    /// The remainder is zero exactly when `d` divides `self`.
    pub fn div_rem(&self, d: &Poly2) -> (Poly2, Poly2) {
        let (lm, lc) = d.leading().expect("division by the zero polynomial");
        let (lm, inv) = (*lm, Rational::one() / lc);
        let mut p = self.clone();
        let mut q = BTreeMap::new();
        let mut r = BTreeMap::new();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if lm.divides(&m) {
                let f = &c * &inv;
                let (i, j) = (m.x - lm.x, m.y - lm.y);
                for (dm, dc) in &d.terms {
                    let key = Monomial::new(dm.x + i, dm.y + j);
                    let e = p.terms.entry(key).or_insert_with(Rational::zero);
                    *e -= &f * dc;
                    if e.is_zero() {
                        p.terms.remove(&key);
                    }
                }
                q.insert(Monomial::new(i, j), f);
            } else {
                p.terms.remove(&m);
                r.insert(m, c);
            }
        }
        (Poly2 { terms: q }, Poly2 { terms: r })
    }

    pub fn exact_div(&self, d: &Poly2) -> Option<Poly2> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &Poly2) -> bool {
        p.exact_div(self).is_some()
    }

    /// Coefficients as a polynomial in `y` over `Q[x]`, lowest power first.
    pub fn to_y_coeffs(&self) -> Vec<UPoly> {
        let dy = self.degree_y() as usize;
        let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); if self.is_zero() { 0 } else { dy + 1 }];
        for (m, c) in &self.terms {
            let col = &mut cols[m.y as usize];
            if col.len() <= m.x as usize {
                col.resize(m.x as usize + 1, Rational::zero());
            }
            col[m.x as usize] = c.clone();
        }
        cols.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_coeffs(cs: &[UPoly]) -> Poly2 {
        Self::from_terms(cs.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| (Monomial::new(i as u32, j as u32), c.clone()))
        }))
    }

    /// The largest monomial dividing every term.
    pub fn monomial_factor(&self) -> (u32, u32) {
        let i = self.terms.keys().map(|m| m.x).min().unwrap_or(0);
        let j = self.terms.keys().map(|m| m.y).min().unwrap_or(0);
        (i, j)
    }

    /// Homogenize to total degree `deg` with a third variable; returns the
    /// map `(i, j, k) -> c` for `c x^i y^j z^k`.
    pub fn homogenize(&self, deg: u32) -> BTreeMap<(u32, u32, u32), Rational> {
        self.terms
            .iter()
            .map(|(m, c)| ((m.x, m.y, deg - m.degree()), c.clone()))
            .collect()
    }
}

fn powers(x: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    for i in 0..n {
        out.push(&out[i] * x);
    }
    out
}

pub(crate) fn poly_powers(p: &Poly2, n: usize) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly2::one());
    for i in 0..n {
        out.push(&out[i] * p);
    }
    out
}

fn upoly_powers(p: &UPoly, n: usize) -> Vec<UPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(UPoly::one());
    for i in 0..n {
        out.push(&out[i] * p);
    }
    out
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            let e = terms.entry(*m).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly2 { terms }
    }
}

impl Sub<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let e = terms.entry(*m).or_insert_with(Rational::zero);
            *e -= c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly2 { terms }
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let m = Monomial::new(ma.x + mb.x, ma.y + mb.y);
                *terms.entry(m).or_insert_with(Rational::zero) += a * b;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly2 { terms }
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly2> for Poly2 {
            type Output = Poly2;
            fn $f(self, rhs: Poly2) -> Poly2 {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $f(self, rhs: &Poly2) -> Poly2 {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly2> for &Poly2 {
            type Output = Poly2;
            fn $f(self, rhs: Poly2) -> Poly2 {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &Monomial, vars: (&str, &str)) -> String {
    let mut parts = Vec::new();
    for (e, v) in [(m.x, vars.0), (m.y, vars.1)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl Poly2 {
    /// Render with custom variable names, highest graded-lex term first.
    pub fn display_with(&self, vars: (&str, &str)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, vars);
            if mono.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y")))
    }
}

impl serde::Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
