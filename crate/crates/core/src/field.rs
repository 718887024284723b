//! Exact scalars: the rationals, prime cyclotomic fields and prime fields.
//!
//! A cyclotomic element of order `p` is stored as its coefficient vector in
//! the power basis `1, ζ, …, ζ^{p-2}` of `ℚ[x]/Φ_p`. Since
//! `Φ_p = 1 + x + … + x^{p-1}`, reduction of a residue mod `x^p - 1` only has
//! to fold the coefficient of `ζ^{p-1}` back into the others, and equal values
//! always have equal vectors.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    /// `ℚ(ζ_p)` for a prime `p`.
    Cyclotomic(u64),
    /// `𝔽_p` for a prime `p`.
    PrimeField(u64),
}

/// A validated field description. Parameters are checked for primality at
/// construction, so every `FieldSpec` in circulation is usable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    kind: FieldKind,
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec { kind: FieldKind::Rational };

    pub fn rational() -> Self {
        Self::RATIONAL
    }

    pub fn cyclotomic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { kind: FieldKind::Cyclotomic(p) })
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        // products are formed in u128, so p must fit comfortably in u64
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { kind: FieldKind::PrimeField(p) })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_int(*self, 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(*self, 1)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Cyclotomic(p) => write!(f, "Qzeta:{p}"),
            FieldKind::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// Element of `ℚ(ζ_p)` in canonical power-basis form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    p: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn zero(p: u64) -> Self {
        Cyclotomic { p, coeffs: vec![BigRational::zero(); (p - 1) as usize] }
    }

    /// `q · ζ^e`.
    fn monomial(p: u64, q: BigRational, e: u64) -> Self {
        let mut out = Self::zero(p);
        let e = e % p;
        if e == p - 1 {
            for c in out.coeffs.iter_mut() {
                *c = -q.clone();
            }
        } else {
            out.coeffs[e as usize] = q;
        }
        out
    }

    /// Builds the canonical element from a residue modulo `x^p - 1`.
    fn from_cyclic(p: u64, mut full: Vec<BigRational>) -> Self {
        debug_assert_eq!(full.len() as u64, p);
        let top = full.pop().unwrap();
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Cyclotomic { p, coeffs: full }
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    /// Coefficients with respect to `1, ζ, …, ζ^{p-2}`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { p: self.p, coeffs }
    }

    fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Cyclotomic { p: self.p, coeffs }
    }

    fn neg(&self) -> Self {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Self::from_cyclic(self.p, full)
    }

    /// Image under the automorphism `ζ ↦ ζ^t`.
    fn galois(&self, t: u64) -> Self {
        let p = self.p;
        let mut full = vec![BigRational::zero(); p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[((i as u64 * t) % p) as usize] += c;
            }
        }
        Self::from_cyclic(p, full)
    }

    /// If the element is rational, returns it.
    fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Inverse via the product of the nontrivial Galois conjugates, divided
    /// by the (rational) norm.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut conj = Self::monomial(self.p, BigRational::one(), 0);
        for t in 2..self.p {
            conj = conj.mul(&self.galois(t));
        }
        let norm = self
            .mul(&conj)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        let scale = norm.recip();
        Some(Cyclotomic { p: self.p, coeffs: conj.coeffs.iter().map(|c| c * &scale).collect() })
    }

    /// Field norm down to `ℚ`.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for t in 2..self.p {
            acc = acc.mul(&self.galois(t));
        }
        acc.as_rational().expect("norm of a cyclotomic element is rational")
    }

    /// Returns `(e, q)` with `self = q·ζ^e`, `0 ≤ e < p`, when the element has that shape.
    pub fn monomial_shape(&self) -> Option<(u64, BigRational)> {
        let nonzero: Vec<usize> =
            (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        match nonzero.len() {
            0 => None,
            1 => Some((nonzero[0] as u64, self.coeffs[nonzero[0]].clone())),
            n if n == self.coeffs.len() => {
                // q·ζ^{p-1} = -q(1 + ζ + … + ζ^{p-2})
                let first = &self.coeffs[0];
                if self.coeffs.iter().all(|c| c == first) {
                    Some((self.p - 1, -first.clone()))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// Element of `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeResidue {
    p: u64,
    value: u64,
}

impl PrimeResidue {
    pub fn new(value: u64, p: u64) -> Self {
        PrimeResidue { p, value: value % p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mul(&self, other: &Self) -> Self {
        let v = (self.value as u128 * other.value as u128) % self.p as u128;
        PrimeResidue { p: self.p, value: v as u64 }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = PrimeResidue { p: self.p, value: 1 % self.p };
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
}

/// An exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
    PrimeField(PrimeResidue),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

fn mod_reduce(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    n.mod_floor(&m).to_u64().unwrap()
}

impl FieldElement {
    pub fn from_int(spec: FieldSpec, n: i64) -> Self {
        Self::from_bigint(spec, &BigInt::from(n))
    }

    pub fn from_bigint(spec: FieldSpec, n: &BigInt) -> Self {
        match spec.kind {
            FieldKind::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Cyclotomic(p) => FieldElement::Cyclotomic(Cyclotomic::monomial(
                p,
                BigRational::from_integer(n.clone()),
                0,
            )),
            FieldKind::PrimeField(p) => FieldElement::PrimeField(PrimeResidue::new(mod_reduce(n, p), p)),
        }
    }

    /// Embeds a rational number. Fails in `𝔽_p` when `p` divides the denominator.
    pub fn from_rational(spec: FieldSpec, q: &BigRational) -> Result<Self> {
        match spec.kind {
            FieldKind::Rational => Ok(FieldElement::Rational(q.clone())),
            FieldKind::Cyclotomic(p) => Ok(FieldElement::Cyclotomic(Cyclotomic::monomial(p, q.clone(), 0))),
            FieldKind::PrimeField(_) => {
                let num = Self::from_bigint(spec, q.numer());
                let den = Self::from_bigint(spec, q.denom());
                num.try_div(&den)
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_p^k` in `ℚ(ζ_p)`.
    pub fn zeta_pow(spec: FieldSpec, k: u64) -> Result<Self> {
        match spec.kind {
            FieldKind::Cyclotomic(p) => {
                Ok(FieldElement::Cyclotomic(Cyclotomic::monomial(p, BigRational::one(), k)))
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// `q·ζ_p^k` in `ℚ(ζ_p)`.
    pub fn scaled_zeta_pow(spec: FieldSpec, q: BigRational, k: u64) -> Result<Self> {
        match spec.kind {
            FieldKind::Cyclotomic(p) => Ok(FieldElement::Cyclotomic(Cyclotomic::monomial(p, q, k))),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        let kind = match self {
            FieldElement::Rational(_) => FieldKind::Rational,
            FieldElement::Cyclotomic(c) => FieldKind::Cyclotomic(c.p),
            FieldElement::PrimeField(r) => FieldKind::PrimeField(r.p),
        };
        FieldSpec { kind }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Cyclotomic(c) => c.is_zero(),
            FieldElement::PrimeField(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.spec().one()
    }

    /// Bits needed to write the element down: numerators plus denominators
    /// of every rational coefficient, nothing for `𝔽_p`.
    pub fn bit_size(&self) -> u64 {
        let rat = |q: &BigRational| q.numer().bits() + q.denom().bits();
        match self {
            FieldElement::Rational(q) => rat(q),
            FieldElement::Cyclotomic(c) => c.coefficients().iter().map(rat).sum(),
            FieldElement::PrimeField(_) => 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => FieldElement::Cyclotomic(a.add(b)),
            (FieldElement::PrimeField(a), FieldElement::PrimeField(b)) => {
                let v = (a.value as u128 + b.value as u128) % a.p as u128;
                FieldElement::PrimeField(PrimeResidue { p: a.p, value: v as u64 })
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => FieldElement::Cyclotomic(a.sub(b)),
            (FieldElement::PrimeField(a), FieldElement::PrimeField(b)) => {
                let v = (a.value as u128 + (a.p - b.value) as u128) % a.p as u128;
                FieldElement::PrimeField(PrimeResidue { p: a.p, value: v as u64 })
            }
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => FieldElement::Cyclotomic(a.mul(b)),
            (FieldElement::PrimeField(a), FieldElement::PrimeField(b)) => FieldElement::PrimeField(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(q.recip()))
                }
            }
            FieldElement::Cyclotomic(c) => c.inv().map(FieldElement::Cyclotomic).ok_or(Error::DivisionByZero),
            FieldElement::PrimeField(r) => r.inv().map(FieldElement::PrimeField).ok_or(Error::DivisionByZero),
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Cyclotomic(c) => FieldElement::Cyclotomic(c.neg()),
            FieldElement::PrimeField(r) => {
                FieldElement::PrimeField(PrimeResidue { p: r.p, value: (r.p - r.value) % r.p })
            }
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(Ring::pow(&base, &self.spec(), e.unsigned_abs() as u32))
    }

    /// If `self = q·ζ^e` in a cyclotomic field, returns `(e, q)`.
    pub fn cyclotomic_root_of_unity_part(&self) -> Result<Option<(u64, BigRational)>> {
        match self {
            FieldElement::Cyclotomic(c) => {
                if c.is_zero() {
                    Err(Error::ZeroInput)
                } else {
                    Ok(c.monomial_shape())
                }
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// Approximate value under the embedding `ζ_p ↦ e^{2πi/p}`. Debug output only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        match self {
            FieldElement::Rational(q) => (rational_to_f64(q), 0.0),
            FieldElement::PrimeField(r) => (r.value as f64, 0.0),
            FieldElement::Cyclotomic(c) => {
                let mut re = 0.0;
                let mut im = 0.0;
                for (i, q) in c.coeffs.iter().enumerate() {
                    let angle = 2.0 * core::f64::consts::PI * i as f64 / c.p as f64;
                    let v = rational_to_f64(q);
                    re += v * libm::cos(angle);
                    im += v * libm::sin(angle);
                }
                (re, im)
            }
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

impl Ring for FieldElement {
    type Ctx = FieldSpec;

    fn zero(ctx: &FieldSpec) -> Self {
        ctx.zero()
    }

    fn one(ctx: &FieldSpec) -> Self {
        ctx.one()
    }

    fn from_i64(ctx: &FieldSpec, n: i64) -> Self {
        FieldElement::from_int(*ctx, n)
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    // Ring operations assume a common field; polynomial containers enforce it
    // at construction, so a mismatch here is a logic error.
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("mixed fields")
    }

    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("mixed fields")
    }

    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("mixed fields")
    }

    fn neg(&self) -> Self {
        self.negated()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn zeta_factor(e: u64) -> String {
    match e {
        0 => String::new(),
        1 => String::from("zeta"),
        _ => alloc::format!("zeta^{e}"),
    }
}

/// Signed terms `(coefficient, power of ζ)` used by the canonical printer.
/// Rationals and shaped cyclotomic values give a single term.
pub(crate) fn display_terms(c: &Cyclotomic) -> Vec<(BigRational, u64)> {
    if let Some((e, q)) = c.monomial_shape() {
        return vec![(q, e)];
    }
    (0..c.coeffs.len())
        .rev()
        .filter(|&i| !c.coeffs[i].is_zero())
        .map(|i| (c.coeffs[i].clone(), i as u64))
        .collect()
}

/// Writes `q·ζ^e` as a leading or trailing signed term.
pub(crate) fn write_zeta_term(f: &mut fmt::Formatter<'_>, q: &BigRational, e: u64, leading: bool) -> fmt::Result {
    let neg = q.is_negative();
    let abs = q.abs();
    if leading {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let z = zeta_factor(e);
    if z.is_empty() {
        write_rational(f, &abs)
    } else if abs.is_one() {
        write!(f, "{z}")
    } else {
        write_rational(f, &abs)?;
        write!(f, "*{z}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write_rational(f, q),
            FieldElement::PrimeField(r) => write!(f, "{}", r.value),
            FieldElement::Cyclotomic(c) => {
                let terms = display_terms(c);
                if terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, (q, e)) in terms.iter().enumerate() {
                    write_zeta_term(f, q, *e, i == 0)?;
                }
                Ok(())
            }
        }
    }
}

/// `s` with `s^k = r` when such a rational exists.
///
/// Numerator and denominator of a reduced fraction are coprime, so `r` is a
/// `k`-th power exactly when both are; each is tested with an exact integer root.
pub fn kth_root_in_rationals(r: &BigRational, k: u32) -> Result<Option<BigRational>> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    if k == 0 {
        return Err(Error::InvalidArgument(String::from("root index must be positive")));
    }
    if r.is_negative() && k.is_multiple_of(2) {
        return Ok(None);
    }
    let root_of = |n: &BigUint| -> Option<BigUint> {
        let s = n.nth_root(k);
        if num_traits::pow(s.clone(), k as usize) == *n {
            Some(s)
        } else {
            None
        }
    };
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    match (root_of(num), root_of(den)) {
        (Some(a), Some(b)) => {
            let mut a = BigInt::from(a);
            if r.is_negative() {
                a = -a;
            }
            Ok(Some(BigRational::new(a, BigInt::from(b))))
        }
        _ => Ok(None),
    }
}

/// Outcome of a `k`-th root existence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootVerdict {
    /// A root was found (and is returned).
    Exists(FieldElement),
    /// Proven absent.
    Absent,
    /// The available tests cannot decide.
    Undetermined,
}

/// Largest prime modulus for which roots in `𝔽_p` are found by exhaustive search.
const PRIME_FIELD_SEARCH_LIMIT: u64 = 1 << 20;

impl FieldElement {
    /// Decides whether `self` has a `k`-th root in its own field.
    ///
    /// Exact in `ℚ` and `𝔽_p`. In `ℚ(ζ_p)` roots of the form `±r·ζ^j` are
    /// searched for, and absence is certified when the norm `N(self)` is not a
    /// `k`-th power in `ℚ` (a root `s` would give `N(s)^k = N(self)`).
    pub fn kth_root(&self, k: u32) -> Result<RootVerdict> {
        if k == 0 {
            return Err(Error::InvalidArgument(String::from("root index must be positive")));
        }
        if self.is_zero() {
            return Ok(RootVerdict::Exists(self.clone()));
        }
        match self {
            FieldElement::Rational(q) => Ok(match kth_root_in_rationals(q, k)? {
                Some(s) => RootVerdict::Exists(FieldElement::Rational(s)),
                None => RootVerdict::Absent,
            }),
            FieldElement::PrimeField(r) => {
                let p = r.p;
                let g = (p - 1).gcd(&(k as u64));
                if r.pow((p - 1) / g).value != 1 {
                    return Ok(RootVerdict::Absent);
                }
                if p > PRIME_FIELD_SEARCH_LIMIT {
                    return Ok(RootVerdict::Undetermined);
                }
                for v in 1..p {
                    let cand = PrimeResidue::new(v, p);
                    if cand.pow(k as u64) == *r {
                        return Ok(RootVerdict::Exists(FieldElement::PrimeField(cand)));
                    }
                }
                unreachable!("Euler criterion guarantees a root")
            }
            FieldElement::Cyclotomic(c) => {
                let p = c.p;
                if let Some((e, q)) = c.monomial_shape() {
                    for sign in [BigRational::one(), -BigRational::one()] {
                        // (sign·r·ζ^j)^k = sign^k · r^k · ζ^{jk}
                        let sign_k = if k.is_multiple_of(2) { BigRational::one() } else { sign.clone() };
                        let target = &q / &sign_k;
                        if let Some(r) = kth_root_in_rationals(&target, k)? {
                            for j in 0..p {
                                if (j * k as u64) % p == e {
                                    let s = Cyclotomic::monomial(p, sign * r, j);
                                    return Ok(RootVerdict::Exists(FieldElement::Cyclotomic(s)));
                                }
                            }
                        }
                    }
                }
                if kth_root_in_rationals(&c.norm(), k)?.is_none() {
                    Ok(RootVerdict::Absent)
                } else {
                    Ok(RootVerdict::Undetermined)
                }
            }
        }
    }
}
