#![allow(dead_code)]

use comdyn_core::{FieldElement, FieldSpec, Monomial, PolyMap, Polynomial};
use proptest::prelude::*;

pub fn q() -> FieldSpec {
    FieldSpec::rational()
}

pub fn r(n: i64) -> FieldElement {
    FieldElement::rational(n, 1)
}

pub fn rat() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=12).prop_map(|(a, b)| FieldElement::rational(a, b))
}

/// A polynomial in `n` variables of degree at most `d` with small rational coefficients.
pub fn poly(n: usize, d: u32, num: i64) -> impl Strategy<Value = Polynomial<FieldElement>> {
    let basis = Monomial::up_to_degree(n, d);
    let len = basis.len();
    proptest::collection::vec((-num..=num, 1i64..=3, proptest::bool::weighted(0.45)), len).prop_map(move |cs| {
        let terms = basis
            .iter()
            .cloned()
            .zip(cs)
            .filter(|(_, (a, _, keep))| *keep && *a != 0)
            .map(|(m, (a, b, _))| (m, FieldElement::rational(a, b)));
        Polynomial::from_terms(n, FieldSpec::rational(), terms)
    })
}

pub fn map(n: usize, d: u32, num: i64) -> impl Strategy<Value = PolyMap> {
    proptest::collection::vec(poly(n, d, num), n).prop_map(|cs| PolyMap::new(cs).unwrap())
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    proptest::collection::vec(rat(), n)
}

/// The monomial map with exponent rows `a`.
pub fn monomial_map(a: &[Vec<u32>], spec: FieldSpec) -> PolyMap {
    comdyn_core::dynamics::MonomialMapSpec::new(a.to_vec()).unwrap().to_map(spec).unwrap()
}

pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_pow(a: &[Vec<u32>], k: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut acc: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for _ in 0..k {
        acc = mat_mul(&acc, a);
    }
    acc
}
