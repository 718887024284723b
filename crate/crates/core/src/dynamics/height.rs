//! Weil heights of rational points and enumeration of points of bounded height.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::map::Point;

/// A logarithmic height together with the integer it came from:
/// `log = ln(max_abs)` where `max_abs` is the largest absolute value of a
/// coprime integer representative.
///
/// Comparisons use the integer only, so they are exact.
#[derive(Clone, Debug)]
pub struct HeightValue {
    max_abs: BigUint,
    log: f64,
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return libm::log(n.to_f64().unwrap());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

impl HeightValue {
    /// The height `ln(h)` of a tuple whose largest coordinate is `h ≥ 1`.
    pub fn from_int(h: BigUint) -> Self {
        let h = if h.is_zero() { BigUint::one() } else { h };
        let log = ln_biguint(&h);
        HeightValue { max_abs: h, log }
    }

    /// The bound `B` on the log scale. Points of height at most `B` are those
    /// with `max_abs ≤ ⌊e^B⌋`, so the integer form stores that floor.
    pub fn from_log(b: f64) -> Result<Self> {
        if !b.is_finite() || !(0.0..=690.0).contains(&b) {
            return Err(Error::InvalidArgument(alloc::format!("height bound {b} out of range")));
        }
        let tol = 1e-12;
        let mut h = libm::floor(libm::exp(b)) as u128;
        h = h.max(1);
        while libm::log((h + 1) as f64) <= b + tol {
            h += 1;
        }
        while h > 1 && libm::log(h as f64) > b + tol {
            h -= 1;
        }
        Ok(HeightValue { max_abs: BigUint::from(h), log: b })
    }

    pub fn max_abs(&self) -> &BigUint {
        &self.max_abs
    }

    /// Natural-log height.
    pub fn log(&self) -> f64 {
        self.log
    }
}

impl PartialEq for HeightValue {
    fn eq(&self, other: &Self) -> bool {
        self.max_abs == other.max_abs
    }
}

impl Eq for HeightValue {}

impl PartialOrd for HeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeightValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.max_abs.cmp(&other.max_abs)
    }
}

/// Coprime integer tuple `(a_1, …, a_n, c)` with `c > 0` and `P = (a_i / c)`.
pub fn coprime_tuple(point: &[FieldElement]) -> Result<Vec<BigInt>> {
    let coords: Vec<&BigRational> = point.iter().map(|c| c.as_rational().ok_or(Error::NotRational)).collect::<Result<_>>()?;
    let mut lcm = BigInt::one();
    for q in &coords {
        lcm = lcm.lcm(q.denom());
    }
    let mut tuple: Vec<BigInt> = coords.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    tuple.push(lcm);
    let g = tuple.iter().fold(BigInt::zero(), |acc, t| acc.gcd(t));
    if !g.is_one() {
        for t in tuple.iter_mut() {
            *t = &*t / &g;
        }
    }
    Ok(tuple)
}

/// `h(P) = ln max |a_i|` over the coprime tuple including the homogenizing coordinate.
pub fn weil_height(point: &[FieldElement]) -> Result<HeightValue> {
    let tuple = coprime_tuple(point)?;
    let max = tuple.iter().map(|t| t.magnitude().clone()).max().unwrap_or_else(BigUint::one);
    Ok(HeightValue::from_int(max))
}

/// Streams the points of `𝔸^n(ℚ)` of height at most `bound`.
///
/// Order: increasing common denominator `c`, then numerator tuples in
/// lexicographic order over the sequence `0, 1, -1, 2, -2, …`. A tuple is
/// emitted only when `gcd(a_1, …, a_n, c) = 1`, so every point appears once.
#[derive(Clone, Debug)]
pub struct BoundedHeightPoints {
    n: usize,
    h: i64,
    denom: i64,
    digits: Vec<usize>,
    done: bool,
}

/// Upper bound on the number of points `bounded_height_points` can yield.
pub fn bounded_height_count_bound(n: usize, bound: &HeightValue) -> u128 {
    let h = bound.max_abs().to_u128().unwrap_or(u128::MAX);
    (2 * h + 1).saturating_pow(n as u32).saturating_mul(h)
}

pub fn bounded_height_points(n: usize, bound: &HeightValue, cap: u128) -> Result<BoundedHeightPoints> {
    let count = bounded_height_count_bound(n, bound);
    if count > cap {
        return Err(Error::ExplosionGuard { what: "bounded-height points", count, cap });
    }
    let h = bound.max_abs().to_i64().ok_or(Error::ExplosionGuard { what: "height bound", count, cap })?;
    Ok(BoundedHeightPoints { n, h, denom: 1, digits: vec![0; n], done: false })
}

fn digit_value(d: usize) -> i64 {
    // 0, 1, -1, 2, -2, …
    let k = d.div_ceil(2) as i64;
    if d % 2 == 1 {
        k
    } else {
        -k
    }
}

impl BoundedHeightPoints {
    fn advance(&mut self) {
        let base = (2 * self.h + 1) as usize;
        for i in (0..self.n).rev() {
            self.digits[i] += 1;
            if self.digits[i] < base {
                return;
            }
            self.digits[i] = 0;
        }
        self.denom += 1;
        if self.denom > self.h || self.n == 0 {
            self.done = true;
        }
    }
}

impl Iterator for BoundedHeightPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        while !self.done {
            let nums: Vec<i64> = self.digits.iter().map(|&d| digit_value(d)).collect();
            let c = self.denom;
            self.advance();
            let g = nums.iter().fold(c, |acc, &a| acc.gcd(&a));
            if g == 1 {
                return Some(nums.iter().map(|&a| FieldElement::rational(a, c)).collect());
            }
        }
        None
    }
}
