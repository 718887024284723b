//! Text input: fields, scalars, points and maps.
//!
//! ```text
//! map    := '(' expr {',' expr} ')' | '[' expr {',' expr} ']'
//! expr   := ['+' | '-'] term {('+' | '-') term}
//! term   := power {'*' power}
//! power  := atom ['^' nat]
//! atom   := int ['/' nat] | 'zeta' | var | '(' expr ')'
//! ```
//!
//! Variables are `x, y, z` (any case) or `x1 … xn`. A map in round brackets
//! with `n` components is affine in `n` variables; square brackets give a
//! projective map in as many homogeneous variables as components.

use comdyn_core::poly::default_names;
use comdyn_core::{FieldElement, FieldKind, FieldSpec, Monomial, Point, PolyMap, Polynomial, ProjMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{CliError, Result};

/// Larger powers are refused rather than expanded.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedMap {
    Affine(PolyMap),
    Projective(ProjMap),
}

impl ParsedMap {
    pub fn to_text(&self) -> String {
        match self {
            ParsedMap::Affine(f) => f.to_text(),
            ParsedMap::Projective(f) => f.to_text(),
        }
    }

    pub fn affine(self) -> Result<PolyMap> {
        match self {
            ParsedMap::Affine(f) => Ok(f),
            ParsedMap::Projective(_) => Err(CliError::Usage(String::from("expected an affine map in round brackets"))),
        }
    }
}

/// `Q`, `Qzeta:p` or `Fp:p`.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    let bad = || CliError::Usage(format!("unknown field `{t}` (use Q, Qzeta:p or Fp:p)"));
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::rational());
    }
    let (head, p) = t.split_once(':').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let spec = match head.trim().to_ascii_lowercase().as_str() {
        "qzeta" => FieldSpec::cyclotomic(p),
        "fp" => FieldSpec::prime_field(p),
        _ => return Err(bad()),
    };
    spec.map_err(|_| CliError::Usage(format!("{p} is not a supported prime")))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) || c == '−' {
            out.push((i, Tok::Sym(if c == '−' { '-' } else { c })));
            i += 1;
        } else {
            return Err(CliError::Syntax { pos: i, expected: String::from("a number, variable or operator") });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    spec: FieldSpec,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(CliError::Syntax { pos: self.pos(), expected: String::from(expected) })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("`{c}`"))
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.fail("a natural number"),
        }
    }

    fn constant(&self, c: FieldElement) -> Polynomial<FieldElement> {
        Polynomial::constant(self.names.len(), self.spec, c)
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Polynomial<FieldElement>> {
        let n = self.names.len();
        let lower = name.to_ascii_lowercase();
        let idx = self.names.iter().position(|v| *v == lower).or_else(|| {
            // x1, x2, x3 are accepted alongside x, y, z
            let k: usize = lower.strip_prefix('x')?.parse().ok()?;
            (n <= 3 && (1..=n).contains(&k)).then(|| k - 1)
        });
        match idx {
            Some(j) => Ok(Polynomial::var(n, self.spec, j)),
            None => Err(CliError::UnknownVariable { name: String::from(name), pos }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial<FieldElement>> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<FieldElement>> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<FieldElement>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let e = self.nat()?;
        match e.to_u32() {
            Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => Err(CliError::Syntax { pos, expected: format!("an exponent at most {MAX_EXPONENT}") }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<FieldElement>> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.at += 1;
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    let dpos = self.pos();
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(CliError::Syntax { pos: dpos, expected: String::from("a nonzero denominator") });
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(self.constant(FieldElement::from_rational(self.spec, &q)?))
            }
            Tok::Ident(name) => {
                self.at += 1;
                if name == "zeta" {
                    if !matches!(self.spec.kind(), FieldKind::Cyclotomic(_)) {
                        return Err(CliError::FieldMismatch { field: self.spec.to_string() });
                    }
                    return Ok(self.constant(FieldElement::zeta_pow(self.spec, 1)?));
                }
                self.variable(&name, pos)
            }
            Tok::Sym('(') => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => self.fail("a number, variable or `(`"),
        }
    }

    fn end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

/// Number of top-level comma-separated items inside the outer bracket.
fn count_items(toks: &[(usize, Tok)]) -> usize {
    let mut depth = 0i32;
    let mut items = 1;
    for (_, t) in toks {
        match t {
            Tok::Sym('(') | Tok::Sym('[') => depth += 1,
            Tok::Sym(')') | Tok::Sym(']') => depth -= 1,
            Tok::Sym(',') if depth == 1 => items += 1,
            _ => {}
        }
    }
    items
}

/// A bracketed list of polynomials: `(…)` affine or `[…]` projective.
pub fn parse_map(text: &str, spec: FieldSpec) -> Result<ParsedMap> {
    let toks = tokenize(text)?;
    let (open, close) = match toks[0].1 {
        Tok::Sym('(') => ('(', ')'),
        Tok::Sym('[') => ('[', ']'),
        _ => return Err(CliError::Syntax { pos: toks[0].0, expected: String::from("`(` or `[`") }),
    };
    let n = count_items(&toks);
    let mut p = Parser { toks: &toks, at: 1, spec, names: default_names(n) };
    let mut comps = vec![p.expr()?];
    while p.eat(',') {
        comps.push(p.expr()?);
    }
    p.expect(close)?;
    p.end()?;
    Ok(if open == '(' { ParsedMap::Affine(PolyMap::new(comps)?) } else { ParsedMap::Projective(ProjMap::new(comps)?) })
}

pub fn parse_affine(text: &str, spec: FieldSpec) -> Result<PolyMap> {
    parse_map(text, spec)?.affine()
}

/// One polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize, spec: FieldSpec) -> Result<Polynomial<FieldElement>> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, at: 0, spec, names: default_names(nvars) };
    let v = p.expr()?;
    p.end()?;
    Ok(v)
}

/// A single constant expression such as `3/2`, `-zeta^3` or `1 + zeta`.
pub fn parse_scalar(text: &str, spec: FieldSpec) -> Result<FieldElement> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, at: 0, spec, names: Vec::new() };
    let v = p.expr()?;
    p.end()?;
    Ok(v.coeff(&Monomial::one(0)))
}

/// Comma-separated coordinates, optionally in round brackets: `0,2` or `(zeta, zeta^2)`.
pub fn parse_point(text: &str, spec: FieldSpec) -> Result<Point> {
    let toks = tokenize(text)?;
    let bracketed = toks[0].1 == Tok::Sym('(') && wraps_all(&toks);
    let mut p = Parser { toks: &toks, at: usize::from(bracketed), spec, names: Vec::new() };
    let mut out = vec![p.expr()?.coeff(&Monomial::one(0))];
    while p.eat(',') {
        out.push(p.expr()?.coeff(&Monomial::one(0)));
    }
    if bracketed {
        p.expect(')')?;
    }
    p.end()?;
    Ok(out)
}

/// The opening bracket at 0 closes at the last token.
fn wraps_all(toks: &[(usize, Tok)]) -> bool {
    let mut depth = 0i32;
    for (k, (_, t)) in toks.iter().enumerate() {
        match t {
            Tok::Sym('(') => depth += 1,
            Tok::Sym(')') => {
                depth -= 1;
                if depth == 0 {
                    return k == toks.len() - 2;
                }
            }
            _ => {}
        }
    }
    false
}

/// Points separated by `;`.
pub fn parse_points(text: &str, spec: FieldSpec) -> Result<Vec<Point>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_point(s, spec)).collect()
}

/// Canonical text of a point: `(a, b, …)`.
pub fn point_text(p: &[FieldElement]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
