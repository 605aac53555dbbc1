#![allow(dead_code)]

use proptest::prelude::*;
use weblab::{Poly2, SymForm};

/// Polynomials of total degree at most `deg` with integer coefficients in
/// `[-height, height]`.
pub fn poly(deg: u32, height: i64, max_terms: usize) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((-height..=height, 0..=deg, 0..=deg), 0..=max_terms).prop_map(move |ts| {
        let ts: Vec<(i64, u32, u32)> = ts.into_iter().filter(|&(_, i, j)| i + j <= deg).collect();
        Poly2::from_i64(&ts)
    })
}

pub fn nonzero_poly(deg: u32, height: i64, max_terms: usize) -> impl Strategy<Value = Poly2> {
    poly(deg, height, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn nonconstant_poly(deg: u32, height: i64, max_terms: usize) -> impl Strategy<Value = Poly2> {
    poly(deg, height, max_terms).prop_filter("nonconstant", |p| !p.is_constant())
}

/// Forms of order `1..=max_k`.
pub fn form(max_k: usize, deg: u32, height: i64) -> impl Strategy<Value = SymForm> {
    (1..=max_k)
        .prop_flat_map(move |k| prop::collection::vec(poly(deg, height, 4), k + 1))
        .prop_filter_map("nonzero form", |cs| SymForm::new(cs).ok())
}

pub fn one_form(deg: u32, height: i64) -> impl Strategy<Value = SymForm> {
    (poly(deg, height, 3), poly(deg, height, 3)).prop_filter_map("nonzero", |(a, b)| SymForm::one_form(a, b).ok())
}

pub fn p(t: &[(i64, u32, u32)]) -> Poly2 {
    Poly2::from_i64(t)
}
