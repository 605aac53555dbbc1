use super::modular::modular_det;
use super::Poly2;
use crate::error::{Result, WebError};

fn trimmed(p: &[Poly2]) -> &[Poly2] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Resultant of two univariate polynomials with coefficients in `Q[x, y]`
/// (coefficients listed from the constant term upward).
///
/// This is the determinant of the Sylvester matrix with the rows of `p`
/// first.
pub fn resultant(p: &[Poly2], q: &[Poly2]) -> Result<Poly2> {
    let p = trimmed(p);
    let q = trimmed(q);
    if p.is_empty() || q.is_empty() {
        return Err(WebError::ZeroForm);
    }
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m == 0 && n == 0 {
        return Err(WebError::DegenerateResultant);
    }
    if m == 0 {
        return Ok(p[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(q[0].pow(m as u32));
    }
    let size = m + n;
    let mut a = vec![vec![Poly2::zero(); size]; size];
    for r in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            a[n + r][r + k] = c.clone();
        }
    }
    Ok(modular_det(&a))
}

/// Determinant of a square matrix over `Q[x, y]` by Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<Poly2>>) -> Poly2 {
    let size = a.len();
    if size == 0 {
        return Poly2::one();
    }
    let mut negate = false;
    let mut prev = Poly2::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Poly2::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_one() {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = Poly2::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Poly2 {
        Poly2::int(v)
    }

    /// Cofactor expansion, used only to cross-check Bareiss.
    fn laplace_det(a: &[Vec<Poly2>]) -> Poly2 {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = Poly2::zero();
        for j in 0..n {
            let minor: Vec<Vec<Poly2>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &a[0][j] * &laplace_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn linear_case_is_root_gap() {
        // Res_t(t - a, t - b) = a - b with a = x, b = y
        let r = resultant(&[-Poly2::x(), c(1)], &[-Poly2::y(), c(1)]).unwrap();
        assert_eq!(r, &Poly2::x() - &Poly2::y());
    }

    #[test]
    fn hand_sylvester_values() {
        // Res_t(t^2 - 1, 2t) = -4 (3x3 determinant by hand)
        assert_eq!(resultant(&[c(-1), c(0), c(1)], &[c(0), c(2)]).unwrap(), c(-4));
        // common root
        assert_eq!(resultant(&[c(0), c(0), c(1)], &[c(0), c(0), c(1)]).unwrap(), Poly2::zero());
        assert_eq!(resultant(&[c(3)], &[c(2)]), Err(WebError::DegenerateResultant));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let x = Poly2::x();
        let y = Poly2::y();
        let m = vec![
            vec![x.clone(), c(0), &y + &c(1)],
            vec![c(0), c(0), x.clone()],
            vec![&x * &y, c(2), c(-1)],
        ];
        assert_eq!(bareiss_det(m.clone()), laplace_det(&m));
        assert_eq!(modular_det(&m), laplace_det(&m));
    }
}
