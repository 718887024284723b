//! Polynomial self-maps of affine space and homogeneous endomorphisms of
//! projective space.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{determinant, Matrix};
use crate::poly::{default_names, Monomial, Polynomial};
use crate::ring::Ring;

/// A point of affine or projective space, one scalar per coordinate.
pub type Point = Vec<FieldElement>;

/// Checks that every coordinate lies in `spec`.
pub fn check_point(point: &[FieldElement], dim: usize, spec: FieldSpec) -> Result<()> {
    if point.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: point.len() });
    }
    if point.iter().any(|c| c.spec() != spec) {
        return Err(Error::MixedFields);
    }
    Ok(())
}

/// `n` polynomials in `n` variables: a map `𝔸^n → 𝔸^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<R: Ring = FieldElement> {
    comps: Vec<Polynomial<R>>,
}

impl<R: Ring> PolyMap<R> {
    pub fn new(comps: Vec<Polynomial<R>>) -> Result<Self> {
        let n = comps.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for c in &comps {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.nvars() });
            }
            if c.ctx() != comps[0].ctx() {
                return Err(Error::MixedFields);
            }
        }
        Ok(PolyMap { comps })
    }

    pub fn identity(n: usize, ctx: R::Ctx) -> Self {
        PolyMap { comps: (0..n).map(|i| Polynomial::var(n, ctx.clone(), i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial<R>] {
        &self.comps
    }

    pub fn ctx(&self) -> &R::Ctx {
        self.comps[0].ctx()
    }

    /// Maximum total degree of the components (0 for a map of constants).
    pub fn degree(&self) -> u32 {
        self.comps.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// `self ∘ g`, i.e. `P ↦ self(g(P))`.
    pub fn compose(&self, g: &PolyMap<R>) -> Result<PolyMap<R>> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: g.dim() });
        }
        if self.ctx() != g.ctx() {
            return Err(Error::MixedFields);
        }
        Ok(PolyMap { comps: self.comps.iter().map(|c| c.substitute(&g.comps)).collect() })
    }

    /// `self^k` under composition.
    pub fn iterate(&self, k: u32) -> PolyMap<R> {
        let mut acc = PolyMap::identity(self.dim(), self.ctx().clone());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same dimension");
        }
        acc
    }

    pub fn map_coeffs<S: Ring, F: Fn(&R) -> S>(&self, ctx: S::Ctx, f: F) -> PolyMap<S> {
        PolyMap { comps: self.comps.iter().map(|c| c.map_coeffs(ctx.clone(), &f)).collect() }
    }
}

impl PolyMap<FieldElement> {
    pub fn field(&self) -> FieldSpec {
        *self.ctx()
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<Point> {
        check_point(point, self.dim(), self.field())?;
        Ok(self.comps.iter().map(|c| c.evaluate(point)).collect())
    }

    /// Formal Jacobian matrix `(∂f_i/∂x_j)`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial<FieldElement>>> {
        self.comps.iter().map(|c| (0..self.dim()).map(|j| c.derivative(j)).collect()).collect()
    }

    pub fn jacobian_at(&self, point: &[FieldElement]) -> Result<Matrix> {
        check_point(point, self.dim(), self.field())?;
        Ok(self.jacobian().iter().map(|row| row.iter().map(|p| p.evaluate(point)).collect()).collect())
    }

    /// Exact determinant of the Jacobian matrix at `point`.
    pub fn jacobian_det_at(&self, point: &[FieldElement]) -> Result<FieldElement> {
        Ok(determinant(&self.jacobian_at(point)?, self.field()))
    }

    /// Homogenizes to degree `d` with the new variable in position 0:
    /// `[X_0^d, X_0^d f_1(X/X_0), …, X_0^d f_n(X/X_0)]`.
    pub fn homogenize(&self, d: u32) -> Result<ProjMap> {
        let deg = self.degree();
        if d < deg {
            return Err(Error::DegreeTooSmall { required: deg as usize, given: d as usize });
        }
        let n = self.dim();
        let spec = self.field();
        let mut comps = Vec::with_capacity(n + 1);
        let mut lead = alloc::vec![0u32; n + 1];
        lead[0] = d;
        comps.push(Polynomial::from_terms(n + 1, spec, [(Monomial::new(lead), spec.one())]));
        for c in &self.comps {
            let terms = c.terms().map(|(m, a)| {
                let mut e = Vec::with_capacity(n + 1);
                e.push(d - m.degree());
                e.extend_from_slice(m.exponents());
                (Monomial::new(e), a.clone())
            });
            comps.push(Polynomial::from_terms(n + 1, spec, terms));
        }
        ProjMap::new(comps)
    }

    /// Moves the map into `spec`. Coefficients must be rational (or already in `spec`).
    pub fn change_field(&self, spec: FieldSpec) -> Result<PolyMap> {
        if spec == self.field() {
            return Ok(self.clone());
        }
        let comps = self
            .comps
            .iter()
            .map(|c| {
                let terms = c
                    .terms()
                    .map(|(m, a)| {
                        let q = a.as_rational().ok_or(Error::MixedFields)?;
                        Ok((m.clone(), FieldElement::from_rational(spec, q)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Polynomial::from_terms(self.dim(), spec, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(comps)
    }

    /// Canonical text `(p_1, …, p_n)` in the default variable names.
    pub fn to_text(&self) -> String {
        let names = default_names(self.dim());
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_text(&names)).collect();
        alloc::format!("({})", parts.join(", "))
    }
}

impl fmt::Display for PolyMap<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `n+1` homogeneous polynomials of a common degree in `n+1` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjMap<R: Ring = FieldElement> {
    comps: Vec<Polynomial<R>>,
    degree: u32,
}

impl<R: Ring> ProjMap<R> {
    pub fn new(comps: Vec<Polynomial<R>>) -> Result<Self> {
        let m = comps.len();
        if m < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: m });
        }
        for c in &comps {
            if c.nvars() != m {
                return Err(Error::DimensionMismatch { expected: m, found: c.nvars() });
            }
            if c.ctx() != comps[0].ctx() {
                return Err(Error::MixedFields);
            }
        }
        let degree = comps.iter().find_map(Polynomial::degree).ok_or(Error::ZeroMap)?;
        if !comps.iter().all(|c| c.is_homogeneous_of(degree)) {
            return Err(Error::NotHomogeneous);
        }
        Ok(ProjMap { comps, degree })
    }

    /// Dimension `n` of the projective space `ℙ^n`.
    pub fn dim(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial<R>] {
        &self.comps
    }

    pub fn ctx(&self) -> &R::Ctx {
        self.comps[0].ctx()
    }

    /// Componentwise `self ∘ g`. The result may fail to be a morphism, so it
    /// is returned as raw components (possibly all zero).
    pub fn compose_raw(&self, g: &ProjMap<R>) -> Result<Vec<Polynomial<R>>> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: g.dim() });
        }
        if self.ctx() != g.ctx() {
            return Err(Error::MixedFields);
        }
        Ok(self.comps.iter().map(|c| c.substitute(&g.comps)).collect())
    }
}

impl ProjMap<FieldElement> {
    pub fn field(&self) -> FieldSpec {
        *self.ctx()
    }

    /// Restriction to the affine chart `X_chart = 1`.
    ///
    /// Requires the chart component to restrict to a nonzero constant there,
    /// which holds for homogenized polynomial maps on chart 0.
    pub fn dehomogenize(&self, chart: usize) -> Result<PolyMap> {
        let m = self.comps.len();
        if chart >= m {
            return Err(Error::InvalidChart { chart, dim: m });
        }
        let spec = self.field();
        let slot: Vec<usize> = (0..m).filter(|&j| j != chart).collect();
        let restrict = |p: &Polynomial<FieldElement>| {
            let terms = p.terms().map(|(mono, c)| {
                let e: Vec<u32> = slot.iter().map(|&j| mono.exponents()[j]).collect();
                (Monomial::new(e), c.clone())
            });
            Polynomial::from_terms(m - 1, spec, terms)
        };
        let denom = restrict(&self.comps[chart]);
        if denom.degree() != Some(0) {
            return Err(Error::NotPolynomialOnChart(chart));
        }
        let inv = denom.coeff(&Monomial::one(m - 1)).inv()?;
        let comps = slot.iter().map(|&j| restrict(&self.comps[j]).scale(&inv)).collect();
        PolyMap::new(comps)
    }

    /// Scales so that the first nonzero coefficient (components in order,
    /// terms in decreasing graded-lex order) equals 1.
    pub fn normalized(&self) -> ProjMap {
        let lead = self
            .comps
            .iter()
            .find_map(|c| c.terms().next_back().map(|(_, a)| a.clone()))
            .expect("nonzero map");
        let inv = lead.inv().expect("nonzero");
        ProjMap { comps: self.comps.iter().map(|c| c.scale(&inv)).collect(), degree: self.degree }
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<Point> {
        check_point(point, self.comps.len(), self.field())?;
        Ok(self.comps.iter().map(|c| c.evaluate(point)).collect())
    }

    pub fn to_text(&self) -> String {
        let names = default_names(self.comps.len());
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_text(&names)).collect();
        alloc::format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for ProjMap<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn var(n: usize, i: usize) -> Polynomial<FieldElement> {
        Polynomial::var(n, q(), i)
    }

    fn r(n: i64) -> FieldElement {
        FieldElement::rational(n, 1)
    }

    fn squares() -> PolyMap {
        PolyMap::new(vec![var(2, 0).pow(2), var(2, 1).pow(2)]).unwrap()
    }

    fn g_example() -> PolyMap {
        PolyMap::new(vec![var(2, 0), var(2, 0).mul(&var(2, 1))]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(squares().evaluate(&[r(0), r(1)]).unwrap(), vec![r(0), r(1)]);
        let id = PolyMap::identity(2, q());
        assert_eq!(id.evaluate(&[r(3), r(-7)]).unwrap(), vec![r(3), r(-7)]);
        assert_eq!(
            squares().evaluate(&[r(1)]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn evaluate_zeta_point() {
        let spec = FieldSpec::cyclotomic(7).unwrap();
        let v = |i| Polynomial::var(2, spec, i);
        let f = PolyMap::new(vec![v(1).pow(2), v(0).pow(2)]).unwrap();
        let z = |k| FieldElement::zeta_pow(spec, k).unwrap();
        assert_eq!(f.evaluate(&[z(1), z(2)]).unwrap(), vec![z(4), z(2)]);
        assert_eq!(f.evaluate(&[r(1), r(1)]), Err(Error::MixedFields));
    }

    #[test]
    fn composition_example() {
        let fg = squares().compose(&g_example()).unwrap();
        let gf = g_example().compose(&squares()).unwrap();
        assert_eq!(fg.to_string(), "(x^2, x^2*y^2)");
        assert_eq!(fg, gf);
        assert_eq!(squares().compose(&PolyMap::identity(2, q())).unwrap(), squares());
    }

    #[test]
    fn jacobian_examples() {
        let swap_sq = PolyMap::new(vec![var(2, 1).pow(2), var(2, 0).pow(2)]).unwrap();
        assert_eq!(swap_sq.jacobian_det_at(&[r(3), r(5)]).unwrap(), r(-60));
        assert_eq!(PolyMap::identity(3, q()).jacobian_det_at(&[r(1), r(2), r(3)]).unwrap(), r(1));
        let f = PolyMap::new(vec![var(2, 0).pow(3).add(&var(2, 1)), var(2, 0).add(&var(2, 1).pow(2))]).unwrap();
        assert_eq!(f.jacobian_det_at(&[r(1), r(1)]).unwrap(), r(5));
    }

    #[test]
    fn homogenize_roundtrip() {
        let phi = squares().homogenize(2).unwrap();
        assert_eq!(phi.to_string(), "[x^2, y^2, z^2]");
        assert_eq!(phi.dehomogenize(0).unwrap(), squares());
        let line = PolyMap::new(vec![var(1, 0).add(&Polynomial::one(1, q()))]).unwrap();
        assert_eq!(line.homogenize(1).unwrap().to_string(), "[x, x + y]");
        assert!(matches!(squares().homogenize(1), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(phi.dehomogenize(3), Err(Error::InvalidChart { .. })));
    }

    #[test]
    fn projective_validation() {
        let a = var(2, 0).pow(2);
        let b = var(2, 1);
        assert_eq!(ProjMap::new(vec![a, b]), Err(Error::NotHomogeneous));
        let z = Polynomial::<FieldElement>::zero(2, q());
        assert_eq!(ProjMap::new(vec![z.clone(), z]), Err(Error::ZeroMap));
    }
}
