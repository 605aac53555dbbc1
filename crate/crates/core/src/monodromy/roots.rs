//! Complex roots of univariate polynomials by companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::Zero;

use crate::exactalg::{rat_to_f64, UPoly};

/// Horner evaluation of `p` and `p'` (coefficients lowest first).
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= scale * 1e-300 {
        n -= 1;
    }
    &coeffs[..n]
}

/// All complex roots with multiplicity, lowest coefficient first. Leading
/// zero coefficients are dropped.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let c = trim(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let lead = c[n];
    if n == 1 {
        return vec![-c[0] / lead];
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let mut roots: Vec<Complex64> = match m.eigenvalues() {
        Some(ev) => ev.iter().copied().collect(),
        None => aberth(c),
    };
    for r in roots.iter_mut() {
        *r = polish(c, *r);
    }
    roots
}

/// Newton refinement, keeping the input when Newton does not improve it.
pub fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if eval_with_derivative(coeffs, next).0.norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let radius = 1.0 + c[..n].iter().map(|a| (a / c[n]).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(c, z[i]);
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Roots of an exact polynomial.
pub fn upoly_roots(p: &UPoly) -> Vec<Complex64> {
    let c: Vec<Complex64> = p.coeffs().iter().map(|q| Complex64::new(rat_to_f64(q), 0.0)).collect();
    poly_roots(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let c = [Complex64::new(-1.0, 0.0), Complex64::zero(), Complex64::zero(), Complex64::new(1.0, 0.0)];
        let r = poly_roots(&c);
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_integer_roots() {
        // (t - 1)(t + 2)(t - 3)
        let p = UPoly::from_i64(&[6, -5, -2, 1]);
        let mut r: Vec<f64> = upoly_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn aberth_agrees() {
        let c: Vec<Complex64> = [2.0, -3.0, 0.5, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for z in aberth(&c) {
            assert!(eval_with_derivative(&c, z).0.norm() < 1e-10);
        }
    }
}
