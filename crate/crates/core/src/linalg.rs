//! Exact dense linear algebra over a field.
#![allow(clippy::needless_range_loop)]

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Determinant by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, and each division is exact.
pub fn determinant(m: &Matrix, spec: FieldSpec) -> FieldElement {
    let n = m.len();
    if n == 0 {
        return spec.one();
    }
    if let Some((rows, scales)) = integer_rows(m) {
        let det = integer_determinant(rows);
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        return FieldElement::Rational(BigRational::new(det, scale));
    }
    let mut a = m.clone();
    let mut prev = spec.one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return spec.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].try_mul(&a[k][k]).unwrap().try_sub(&a[i][k].try_mul(&a[k][j]).unwrap()).unwrap();
                a[i][j] = num.try_div(&prev).unwrap();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.negated()
    } else {
        det
    }
}

/// Row-echelon basis that grows one vector at a time.
///
/// Stored rows are normalized (pivot entry 1) and reduced against earlier
/// pivots, so membership of a new vector in the span is decided by a single
/// forward reduction.
#[derive(Clone, Debug)]
pub struct RankExtender {
    width: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RankExtender {
    pub fn new(width: usize) -> Self {
        RankExtender { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after reduction by the current basis.
    fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if r[pc].is_zero() {
                continue;
            }
            let factor = r[pc].clone();
            for j in pc..self.width {
                if !row[j].is_zero() {
                    r[j] = r[j].try_sub(&factor.try_mul(&row[j]).unwrap()).unwrap();
                }
            }
        }
        r
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn try_insert(&mut self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.width);
        let r = self.reduce(v);
        let Some(pc) = r.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = r[pc].inv().unwrap();
        let r: Vec<FieldElement> = r.iter().map(|e| e.try_mul(&inv).unwrap()).collect();
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }
}

pub fn rank(rows: &Matrix) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    if let Some((ints, _)) = integer_rows(rows) {
        if let Some(r) = integer_rank(ints) {
            return r;
        }
    }
    let mut ext = RankExtender::new(width);
    for r in rows {
        ext.try_insert(r);
    }
    ext.rank()
}

/// Inverse by Gauss-Jordan elimination (fraction-free over the integers for
/// rational input).
pub fn invert(m: &Matrix, spec: FieldSpec) -> Result<Matrix> {
    let n = m.len();
    if let Some((rows, scales)) = integer_rows(m) {
        // (S·A)⁻¹·S = A⁻¹ with S the diagonal of row scales
        let rhs: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { scales[i].clone() } else { BigInt::zero() }).collect())
            .collect();
        match integer_solve(rows, rhs) {
            Ok(Some(x)) => return Ok(x),
            Ok(None) => return Err(Error::SingularFrame),
            Err(()) => {}
        }
    }
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { spec.one() } else { spec.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularFrame)?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for e in a[col].iter_mut() {
            *e = e.try_mul(&inv)?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..2 * n {
                let sub = factor.try_mul(&a[col][j])?;
                a[r][j] = a[r][j].try_sub(&sub)?;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{v : m·v = 0}` for an `r × width` matrix.
pub fn nullspace(m: &Matrix, width: usize, spec: FieldSpec) -> Vec<Vec<FieldElement>> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv().unwrap();
        for e in a[row].iter_mut() {
            *e = e.try_mul(&inv).unwrap();
        }
        for r in 0..a.len() {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..width {
                let sub = factor.try_mul(&a[row][j]).unwrap();
                a[r][j] = a[r][j].try_sub(&sub).unwrap();
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = alloc::vec![spec.zero(); width];
            v[f] = spec.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][f].negated();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[FieldElement], spec: FieldSpec) -> Vec<FieldElement> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(spec.zero(), |acc, (a, b)| acc.try_add(&a.try_mul(b).unwrap()).unwrap())
        })
        .collect()
}

/// Rational rows scaled to integer rows by the lcm of each row's
/// denominators, with the scales. `None` unless every entry is rational.
pub fn integer_rows(m: &Matrix) -> Option<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let mut rows = Vec::with_capacity(m.len());
    let mut scales = Vec::with_capacity(m.len());
    for row in m {
        let qs: Vec<&BigRational> = row.iter().map(FieldElement::as_rational).collect::<Option<_>>()?;
        let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(qs.iter().map(|q| q.numer() * (&l / q.denom())).collect());
        scales.push(l);
    }
    Some((rows, scales))
}

/// Bareiss elimination step `(p·a − b·c) / prev`, checking exactness.
fn bareiss_step(p: &BigInt, a: &BigInt, b: &BigInt, c: &BigInt, prev: &BigInt) -> core::result::Result<BigInt, ()> {
    let num = p * a - b * c;
    if prev.is_one() {
        return Ok(num);
    }
    let (q, r) = num.div_rem(prev);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(())
    }
}

fn integer_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = bareiss_step(&a[k][k], &a[i][j], &a[i][k], &a[k][j], &prev).expect("Bareiss division is exact");
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Rank by fraction-free row echelon reduction; `None` if a division was
/// not exact (never expected, but then the caller falls back).
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> Option<usize> {
    let width = a.first().map(Vec::len).unwrap_or(0);
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..a.len() {
            for j in col + 1..width {
                a[i][j] = bareiss_step(&a[row][col], &a[i][j], &a[i][col], &a[row][j], &prev).ok()?;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        if row == a.len() {
            break;
        }
    }
    Some(row)
}

/// Solves `A·X = B` over `ℚ` for square integer `A` by fraction-free
/// Gauss-Jordan elimination. `Ok(None)` when `A` is singular, `Err` when a
/// division was not exact.
fn integer_solve(mut a: Vec<Vec<BigInt>>, b: Vec<Vec<BigInt>>) -> core::result::Result<Option<Matrix>, ()> {
    let n = a.len();
    let k = b.first().map(Vec::len).unwrap_or(0);
    for (row, extra) in a.iter_mut().zip(b) {
        row.extend(extra);
    }
    let width = n + k;
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(None);
        };
        a.swap(c, p);
        for i in 0..n {
            if i == c {
                continue;
            }
            for j in 0..width {
                if j == c {
                    continue;
                }
                a[i][j] = bareiss_step(&a[c][c], &a[i][j], &a[i][c], &a[c][j], &prev)?;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    Ok(Some(
        a.iter()
            .enumerate()
            .map(|(i, row)| {
                row[n..].iter().map(|x| FieldElement::Rational(BigRational::new(x.clone(), row[i].clone()))).collect()
            })
            .collect(),
    ))
}

const MOD_PRIME: u64 = (1 << 61) - 1;

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_PRIME as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a);
        }
        a = mod_mul(a, a);
        e >>= 1;
    }
    acc
}

fn mod_reduce(q: &BigRational) -> Option<u64> {
    let m = BigInt::from(MOD_PRIME);
    let num = q.numer().mod_floor(&m).to_u64()?;
    let den = q.denom().mod_floor(&m).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(mod_mul(num, mod_pow(den, MOD_PRIME - 2)))
}

/// Echelon basis modulo the prime `2^61 − 1` for rational vectors.
///
/// A vector independent of the stored rows modulo the prime is independent
/// over `ℚ` as long as the stored rows are themselves independent modulo
/// the prime, since a nonzero minor mod p is a nonzero minor. A vector that
/// looks dependent here needs an exact check.
#[derive(Clone, Debug)]
pub struct ModRankFilter {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModRankFilter {
    pub fn new(width: usize) -> Self {
        ModRankFilter { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `Some(true)` if `v` was independent mod p (and was stored),
    /// `Some(false)` if dependent mod p, `None` if `v` has no reduction.
    pub fn try_insert(&mut self, v: &[FieldElement]) -> Option<bool> {
        let mut r: Vec<u64> = v.iter().map(|e| e.as_rational().and_then(mod_reduce)).collect::<Option<_>>()?;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = r[pc];
            if f == 0 {
                continue;
            }
            for j in pc..self.width {
                r[j] = (r[j] + MOD_PRIME - mod_mul(f, row[j])) % MOD_PRIME;
            }
        }
        let Some(pc) = r.iter().position(|&e| e != 0) else {
            return Some(false);
        };
        let inv = mod_pow(r[pc], MOD_PRIME - 2);
        for e in r.iter_mut() {
            *e = mod_mul(*e, inv);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        Some(true)
    }
}
