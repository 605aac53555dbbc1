//! Determinants of polynomial matrices by evaluation and interpolation
//! modulo word-sized primes, lifted to the integers by Chinese remaindering.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Monomial, Poly2, Rational};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for b in BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
fn primes(count: usize) -> Vec<u64> {
    (0..)
        .map(|i| (1u64 << 62) - 1 - 2 * i)
        .filter(|&n| is_prime(n))
        .take(count)
        .collect()
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

/// Coefficients (constant term first) of the polynomial through
/// `(xs[i], vs[i])` over `Z/p`.
fn interpolate(xs: &[u64], vs: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = vs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            dd[i] = mulmod(num, inv(den, p), p);
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (t - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n - 1 {
            next[k + 1] = (next[k + 1] + out[k]) % p;
        }
        for k in 0..n {
            next[k] = (next[k] + p - mulmod(out[k], xs[i], p)) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        out = next;
    }
    out
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if r != k {
            m.swap(r, k);
            det = (p - det) % p;
        }
        det = mulmod(det, m[k][k], p);
        let pinv = inv(m[k][k], p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut().filter(|r| r[k] != 0) {
            let f = mulmod(row[k], pinv, p);
            for (v, &q) in row[k + 1..].iter_mut().zip(&pivot[k + 1..]) {
                *v = (*v + p - mulmod(f, q, p)) % p;
            }
        }
    }
    det
}

type IntEntry = Vec<(u32, u32, BigInt)>;

/// The determinant modulo `p` as a dense `(bx + 1) x (by + 1)` table of
/// coefficients.
fn det_table(a: &[Vec<IntEntry>], bx: usize, by: usize, p: u64) -> Vec<Vec<u64>> {
    let a: Vec<Vec<Vec<(u32, u32, u64)>>> = a
        .iter()
        .map(|row| row.iter().map(|e| e.iter().map(|(i, j, c)| (*i, *j, reduce(c, p))).collect()).collect())
        .collect();
    let xs: Vec<u64> = (0..=bx as u64).collect();
    let ys: Vec<u64> = (0..=by as u64).collect();
    let maxd = a.iter().flatten().flatten().map(|(i, j, _)| (*i).max(*j)).max().unwrap_or(0) as usize;
    let powers = |t: u64| -> Vec<u64> {
        std::iter::successors(Some(1u64), |v| Some(mulmod(*v, t, p))).take(maxd + 1).collect()
    };
    let ypow: Vec<Vec<u64>> = ys.iter().map(|&y| powers(y)).collect();
    // for each x node, the determinant as a polynomial in y
    let columns: Vec<Vec<u64>> = xs
        .iter()
        .map(|&x| {
            let xp = powers(x);
            let vals: Vec<u64> = ypow
                .iter()
                .map(|yp| {
                    let m = a
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|e| {
                                    e.iter().fold(0, |acc, (i, j, c)| {
                                        (acc + mulmod(*c, mulmod(xp[*i as usize], yp[*j as usize], p), p)) % p
                                    })
                                })
                                .collect()
                        })
                        .collect();
                    det_mod(m, p)
                })
                .collect();
            interpolate(&ys, &vals, p)
        })
        .collect();
    (0..=by)
        .map(|j| {
            let vals: Vec<u64> = columns.iter().map(|c| c[j]).collect();
            interpolate(&xs, &vals, p)
        })
        .collect()
}

/// Determinant of a square matrix over `Q[x, y]`.
///
/// Rows are scaled to integer coefficients. The coefficients of the integer
/// determinant are bounded by the product over rows of the summed 1-norms of
/// the entries, which fixes the number of primes needed.
pub fn modular_det(a: &[Vec<Poly2>]) -> Poly2 {
    let n = a.len();
    if n == 0 {
        return Poly2::one();
    }
    let mut scale = BigInt::one();
    let mut bound = BigInt::one();
    let mut int_rows: Vec<Vec<IntEntry>> = Vec::with_capacity(n);
    for row in a {
        let l = row
            .iter()
            .flat_map(|e| e.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let ints: Vec<IntEntry> = row
            .iter()
            .map(|e| e.terms().map(|(m, c)| (m.x, m.y, c.numer() * (&l / c.denom()))).collect())
            .collect();
        let norm: BigInt = ints.iter().flatten().map(|(_, _, c)| c.abs()).sum();
        if norm.is_zero() {
            return Poly2::zero();
        }
        bound *= norm;
        scale *= l;
        int_rows.push(ints);
    }
    let row_bound = |f: fn(&Poly2) -> u32| -> usize {
        a.iter().map(|row| row.iter().filter(|e| !e.is_zero()).map(f).max().unwrap_or(0) as usize).sum()
    };
    let (bx, by) = (row_bound(Poly2::degree_x), row_bound(Poly2::degree_y));
    // symmetric residues need a modulus above twice the bound
    let count = (bound.bits() as usize + 2).div_ceil(61);
    let ps = primes(count);
    let tables: Vec<Vec<Vec<u64>>> = ps.par_iter().map(|&p| det_table(&int_rows, bx, by, p)).collect();
    let mut terms = BTreeMap::new();
    for j in 0..=by {
        for i in 0..=bx {
            let mut r = BigInt::zero();
            let mut modulus = BigInt::one();
            for (t, &p) in tables.iter().zip(&ps) {
                let v = t[j][i];
                let diff = (v + p - reduce(&r, p)) % p;
                let k = mulmod(diff, inv(reduce(&modulus, p), p), p);
                r += &modulus * BigInt::from(k);
                modulus *= BigInt::from(p);
            }
            if r > &modulus / 2 {
                r -= &modulus;
            }
            if !r.is_zero() {
                terms.insert(Monomial::new(i as u32, j as u32), Rational::new(r, scale.clone()));
            }
        }
    }
    Poly2::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
        assert!(primes(3).windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn interpolation_mod_p() {
        let p = primes(1)[0];
        // 3 - 2t + t^2 through t = 0, 1, 2
        assert_eq!(interpolate(&[0, 1, 2], &[3, 2, 3], p), [3, p - 2, 1]);
    }
}
