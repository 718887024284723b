//! Sparse multivariate polynomials over a generic [`Ring`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed};

use crate::field::{display_terms, FieldElement};
use crate::ring::Ring;

/// Exponent vector `(j_1, …, j_n)`, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `d`,
    /// in decreasing lexicographic order (`x^d` first).
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: usize, rest: u32, out: &mut Vec<Monomial>) {
            if left == 1 {
                prefix.push(rest);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=rest).rev() {
                prefix.push(e);
                rec(prefix, left - 1, rest - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::new(), nvars, d, &mut out);
        out
    }

    /// All monomials of total degree at most `d`: by degree, then `x` before `y`.
    /// This is the Veronese basis order `(1, x, y, x², xy, y², …)`.
    pub fn up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::of_degree(nvars, k)).collect()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Default variable names: `x, y, z` up to three variables, `x1 … xn` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| String::from(*s)).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

/// Multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R: Ring> {
    nvars: usize,
    ctx: R::Ctx,
    terms: BTreeMap<Monomial, R>,
}

/// Ring context of `Polynomial<R>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCtx<C> {
    pub nvars: usize,
    pub inner: C,
}

impl<R: Ring> Polynomial<R> {
    pub fn zero(nvars: usize, ctx: R::Ctx) -> Self {
        Polynomial { nvars, ctx, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, ctx: R::Ctx, c: R) -> Self {
        let mut p = Self::zero(nvars, ctx);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, ctx: R::Ctx) -> Self {
        let one = R::one(&ctx);
        Self::constant(nvars, ctx, one)
    }

    pub fn var(nvars: usize, ctx: R::Ctx, i: usize) -> Self {
        let one = R::one(&ctx);
        let mut p = Self::zero(nvars, ctx);
        p.add_term(Monomial::var(nvars, i), one);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, R)>>(nvars: usize, ctx: R::Ctx, terms: I) -> Self {
        let mut p = Self::zero(nvars, ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: R) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// The part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.ctx.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.nvars, self.ctx.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.ctx.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn max_exponents(&self) -> Vec<u32> {
        let mut maxes = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (slot, &e) in maxes.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
        }
        maxes
    }

    /// Value at `point` (one ring element per variable).
    pub fn evaluate(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong dimension");
        let powers = power_table(point, &self.max_exponents(), &self.ctx, |a, b| a.mul(b), R::one);
        let mut acc = R::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[j][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// `self(g_1, …, g_n)`: substitutes polynomial `subs[j]` for variable `j`.
    pub fn substitute(&self, subs: &[Polynomial<R>]) -> Polynomial<R> {
        assert_eq!(subs.len(), self.nvars, "substitution has wrong arity");
        let target_vars = subs.first().map(|s| s.nvars).unwrap_or(0);
        let powers = power_table(subs, &self.max_exponents(), &(), |a: &Polynomial<R>, b| a.mul(b), |_| {
            Polynomial::one(target_vars, self.ctx.clone())
        });
        let mut acc = Polynomial::zero(target_vars, self.ctx.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_vars, self.ctx.clone(), c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[j][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.ctx.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c.mul(&R::from_i64(&self.ctx, e as i64)));
        }
        out
    }

    /// Changes the coefficient ring.
    pub fn map_coeffs<S: Ring, F: Fn(&R) -> S>(&self, ctx: S::Ctx, f: F) -> Polynomial<S> {
        let mut out = Polynomial::zero(self.nvars, ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-indexes variables: variable `j` of `self` becomes variable `slot[j]`
    /// of a polynomial in `nvars` variables.
    pub fn embed_vars(&self, nvars: usize, slot: &[usize]) -> Self {
        let mut out = Self::zero(nvars, self.ctx.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; nvars];
            for (j, &e) in m.exponents().iter().enumerate() {
                exps[slot[j]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }
}

/// `table[j][e] = base[j]^e` for `e ≤ maxes[j]`.
fn power_table<T: Clone, C>(
    base: &[T],
    maxes: &[u32],
    ctx: &C,
    mul: impl Fn(&T, &T) -> T,
    one: impl Fn(&C) -> T,
) -> Vec<Vec<T>> {
    base.iter()
        .zip(maxes)
        .map(|(b, &m)| {
            let mut row = Vec::with_capacity(m as usize + 1);
            row.push(one(ctx));
            for e in 1..=m as usize {
                let next = mul(&row[e - 1], b);
                row.push(next);
            }
            row
        })
        .collect()
}

impl<R: Ring> Ring for Polynomial<R> {
    type Ctx = PolyCtx<R::Ctx>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Polynomial::zero(ctx.nvars, ctx.inner.clone())
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Polynomial::one(ctx.nvars, ctx.inner.clone())
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Polynomial::constant(ctx.nvars, ctx.inner.clone(), R::from_i64(&ctx.inner, n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        Polynomial::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Polynomial::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Polynomial::mul(self, other)
    }

    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
}

impl<R: Ring> Polynomial<R> {
    pub fn poly_ctx(&self) -> PolyCtx<R::Ctx> {
        PolyCtx { nvars: self.nvars, inner: self.ctx.clone() }
    }
}

fn write_signed(
    out: &mut String,
    negative: bool,
    factors: &[String],
    leading: bool,
) {
    if leading {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    if factors.is_empty() {
        out.push('1');
    } else {
        out.push_str(&factors.join("*"));
    }
}

impl Polynomial<FieldElement> {
    /// Canonical text with the given variable names: terms in decreasing
    /// graded-lex order, lowest-terms rationals, explicit `^`.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        let mut leading = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = m.fmt_with(names);
            let mut push = |negative: bool, scalar: Option<String>, zeta: u64| {
                let mut factors = Vec::new();
                if let Some(s) = scalar {
                    factors.push(s);
                }
                match zeta {
                    0 => {}
                    1 => factors.push(String::from("zeta")),
                    e => factors.push(format!("zeta^{e}")),
                }
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                write_signed(&mut out, negative, &factors, leading);
                leading = false;
            };
            match c {
                FieldElement::Rational(q) => {
                    let abs = q.abs();
                    let scalar = if abs.is_one() { None } else { Some(format!("{}", FieldElement::Rational(abs))) };
                    push(q.is_negative(), scalar, 0);
                }
                FieldElement::PrimeField(r) => {
                    let scalar = if r.value() == 1 { None } else { Some(format!("{}", r.value())) };
                    push(false, scalar, 0);
                }
                FieldElement::Cyclotomic(cy) => {
                    for (q, e) in display_terms(cy) {
                        let abs = q.abs();
                        let scalar = if abs.is_one() { None } else { Some(format!("{}", FieldElement::Rational(abs))) };
                        push(q.is_negative(), scalar, e);
                    }
                }
            }
        }
        if leading {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Polynomial<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_names(self.nvars)))
    }
}
