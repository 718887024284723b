//! Monomial maps `x_i ↦ c_i Π_j x_j^{A_ij}` and their periodic points on
//! the torus of `N`-th roots of unity.
//!
//! On `μ_N^n` the point `(ζ^{v_1}, …, ζ^{v_n})` is sent to `ζ^{Av}`, so
//! periodicity reduces to linear algebra over `ℤ/N`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{divisors, is_prime, FieldElement, FieldSpec};
use crate::linalg::nullspace;
use crate::map::{Point, PolyMap};
use crate::poly::{Monomial, Polynomial};

const TORUS_POINT_CAP: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMapSpec {
    exponents: Vec<Vec<u32>>,
    coeffs: Option<Vec<FieldElement>>,
}

impl MonomialMapSpec {
    pub fn new(exponents: Vec<Vec<u32>>) -> Result<Self> {
        let n = exponents.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(row) = exponents.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        Ok(MonomialMapSpec { exponents, coeffs: None })
    }

    pub fn with_coefficients(mut self, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coeffs.len() });
        }
        self.coeffs = Some(coeffs);
        Ok(self)
    }

    /// Reads a map whose every component is a single term.
    pub fn from_map(f: &PolyMap) -> Option<Self> {
        let mut exponents = Vec::new();
        let mut coeffs = Vec::new();
        for c in f.components() {
            if c.num_terms() != 1 {
                return None;
            }
            let (m, a) = c.terms().next().unwrap();
            exponents.push(m.exponents().to_vec());
            coeffs.push(a.clone());
        }
        let spec = MonomialMapSpec { exponents, coeffs: None };
        if coeffs.iter().all(FieldElement::is_one) {
            Some(spec)
        } else {
            Some(MonomialMapSpec { coeffs: Some(coeffs), ..spec })
        }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn coefficients(&self) -> Option<&[FieldElement]> {
        self.coeffs.as_deref()
    }

    /// Maximum row sum.
    pub fn degree(&self) -> u32 {
        self.exponents.iter().map(|r| r.iter().sum()).max().unwrap_or(0)
    }

    pub fn to_map(&self, spec: FieldSpec) -> Result<PolyMap> {
        let n = self.dim();
        let comps = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let c = match &self.coeffs {
                    Some(cs) => {
                        if cs[i].spec() != spec {
                            return Err(Error::MixedFields);
                        }
                        cs[i].clone()
                    }
                    None => spec.one(),
                };
                Ok(Polynomial::from_terms(n, spec, [(Monomial::new(row.clone()), c)]))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(comps)
    }

    /// `A^k mod modulus`.
    pub fn matrix_power_mod(&self, k: usize, modulus: u64) -> Vec<Vec<u64>> {
        let n = self.dim();
        let a: Vec<Vec<u64>> = self.exponents.iter().map(|r| r.iter().map(|&e| e as u64 % modulus).collect()).collect();
        let mut acc: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % modulus).collect()).collect();
        for _ in 0..k {
            acc = mat_mul_mod(&acc, &a, modulus);
        }
        acc
    }
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(0u128, |acc, k| (acc + a[i][k] as u128 * b[k][j] as u128) % m as u128) as u64
                })
                .collect()
        })
        .collect()
}

fn fixes_mod(power: &[Vec<u64>], v: &[u64], m: u64) -> bool {
    power.iter().zip(v).all(|(row, &vi)| {
        let s = row.iter().zip(v).fold(0u128, |acc, (&a, &x)| (acc + a as u128 * x as u128) % m as u128);
        s as u64 == vi
    })
}

/// A point of `μ_N^n` given by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub exponents: Vec<u64>,
    pub point: Point,
    pub exact_period: usize,
}

/// All `v ∈ (ℤ/N)^n` with `(A^m − I)v ≡ 0 (mod N)`, as points of `ℚ(ζ_N)^n`,
/// each with its exact period (the least divisor `k` of `m` with `A^k v ≡ v`).
///
/// Returned in lexicographic order of exponent vectors.
pub fn monomial_periodic_points(spec: &MonomialMapSpec, order: u64, m: usize) -> Result<Vec<TorusPoint>> {
    if !is_prime(order) {
        return Err(Error::UnsupportedOrder(order));
    }
    if m == 0 {
        return Err(Error::InvalidArgument(String::from("period must be at least 1")));
    }
    if let Some(cs) = spec.coefficients() {
        if !cs.iter().all(FieldElement::is_one) {
            return Err(Error::StrategyInapplicable(String::from("torus engine needs unit coefficients")));
        }
    }
    let n = spec.dim();
    let fp = FieldSpec::prime_field(order).map_err(|_| Error::UnsupportedOrder(order))?;
    let power = spec.matrix_power_mod(m, order);
    let system: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = (power[i][j] + order - u64::from(i == j)) % order;
                    FieldElement::from_int(fp, e as i64)
                })
                .collect()
        })
        .collect();
    let kernel = nullspace(&system, n, fp);
    let count = (order as u128).saturating_pow(kernel.len() as u32);
    if count > TORUS_POINT_CAP {
        return Err(Error::ExplosionGuard { what: "torus kernel points", count, cap: TORUS_POINT_CAP });
    }
    let basis: Vec<Vec<u64>> = kernel
        .iter()
        .map(|v| {
            v.iter()
                .map(|e| match e {
                    FieldElement::PrimeField(r) => r.value(),
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    let mut vectors = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut v = vec![0u64; n];
        for (d, b) in digits.iter().zip(&basis) {
            for (slot, &bi) in v.iter_mut().zip(b) {
                *slot = (*slot + d * bi) % order;
            }
        }
        vectors.push(v);
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    vectors.sort();
    let cyc = FieldSpec::cyclotomic(order)?;
    let divs = divisors(m as u64);
    let powers: Vec<Vec<Vec<u64>>> = divs.iter().map(|&k| spec.matrix_power_mod(k as usize, order)).collect();
    vectors
        .into_iter()
        .map(|v| {
            let k = divs
                .iter()
                .zip(&powers)
                .find(|(_, p)| fixes_mod(p, &v, order))
                .map(|(&k, _)| k as usize)
                .expect("m itself fixes v");
            let point = v.iter().map(|&e| FieldElement::zeta_pow(cyc, e)).collect::<Result<Point>>()?;
            Ok(TorusPoint { exponents: v, point, exact_period: k })
        })
        .collect()
}
