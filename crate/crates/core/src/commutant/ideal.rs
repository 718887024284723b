//! Equations in unknown coefficients `b_{iJ}` cutting out the maps that
//! commute with a fixed map.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::commutant::predicates::cross_products;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::map::{PolyMap, ProjMap};
use crate::poly::{Monomial, PolyCtx, Polynomial};

/// Default cap on the number of equations collected.
pub const EQUATION_CAP: usize = 100_000;

/// The map the ideal is built for.
#[derive(Clone, Copy, Debug)]
pub enum IdealTarget<'a> {
    Affine(&'a PolyMap),
    Projective(&'a ProjMap),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutationIdeal {
    projective: bool,
    /// Number of coordinates `X` of the maps (`n` affine, `n+1` projective).
    coords: usize,
    d: u32,
    spec: FieldSpec,
    unknowns: Vec<(usize, Monomial)>,
    labels: Vec<String>,
    equations: Vec<Polynomial<FieldElement>>,
}

fn label(i: usize, m: &Monomial) -> String {
    let mut s = format!("b_{i}");
    for e in m.exponents() {
        s.push_str(&format!("_{e}"));
    }
    s
}

/// Builds the ideal for maps of degree `d`: all monomials of degree at most
/// `d` per component in the affine case, exactly `d` in the projective case.
///
/// Affine equations are the coefficients of `φ∘ψ − ψ∘φ`; projective ones are
/// the coefficients of every cross product `(ψ∘φ)_i (φ∘ψ)_j − (ψ∘φ)_j (φ∘ψ)_i`.
pub fn commutation_ideal(target: IdealTarget<'_>, d: u32, cap: usize) -> Result<CommutationIdeal> {
    if d == 0 {
        return Err(Error::DegreeTooSmall { required: 1, given: 0 });
    }
    let (projective, coords, spec) = match target {
        IdealTarget::Affine(f) => (false, f.dim(), f.field()),
        IdealTarget::Projective(f) => (true, f.dim() + 1, f.field()),
    };
    let basis = if projective { Monomial::of_degree(coords, d) } else { Monomial::up_to_degree(coords, d) };
    let unknowns: Vec<(usize, Monomial)> =
        (0..coords).flat_map(|i| basis.iter().map(move |m| (i, m.clone()))).collect();
    let labels: Vec<String> = unknowns.iter().map(|(i, m)| label(*i, m)).collect();
    let nb = unknowns.len();
    let bctx = PolyCtx { nvars: nb, inner: spec };
    let psi_comps: Vec<Polynomial<Polynomial<FieldElement>>> = (0..coords)
        .map(|i| {
            let terms = unknowns
                .iter()
                .enumerate()
                .filter(|(_, (c, _))| *c == i)
                .map(|(k, (_, m))| (m.clone(), Polynomial::var(nb, spec, k)));
            Polynomial::from_terms(coords, bctx.clone(), terms)
        })
        .collect();
    let lift = |p: &Polynomial<FieldElement>| p.map_coeffs(bctx.clone(), |c| Polynomial::constant(nb, spec, c.clone()));
    let raw: Vec<Polynomial<Polynomial<FieldElement>>> = match target {
        IdealTarget::Affine(f) => {
            let phi = PolyMap::new(f.components().iter().map(lift).collect())?;
            let psi = PolyMap::new(psi_comps)?;
            let a = phi.compose(&psi)?;
            let b = psi.compose(&phi)?;
            a.components().iter().zip(b.components()).map(|(x, y)| x.sub(y)).collect()
        }
        IdealTarget::Projective(f) => {
            let phi: Vec<_> = f.components().iter().map(lift).collect();
            let psi_phi: Vec<_> = psi_comps.iter().map(|c| c.substitute(&phi)).collect();
            let phi_psi: Vec<_> = phi.iter().map(|c| c.substitute(&psi_comps)).collect();
            cross_products(&psi_phi, &phi_psi)
        }
    };
    let mut equations = Vec::new();
    for p in &raw {
        for (_, c) in p.terms() {
            if equations.len() == cap {
                return Err(Error::ExplosionGuard { what: "ideal equations", count: cap as u128 + 1, cap: cap as u128 });
            }
            equations.push(c.clone());
        }
    }
    Ok(CommutationIdeal { projective, coords, d, spec, unknowns, labels, equations })
}

impl CommutationIdeal {
    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.spec
    }

    /// `(component, monomial)` of each unknown, in label order.
    pub fn unknowns(&self) -> &[(usize, Monomial)] {
        &self.unknowns
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn equations(&self) -> &[Polynomial<FieldElement>] {
        &self.equations
    }

    /// Equations as text in the variables `b_i_J`.
    pub fn equation_texts(&self) -> Vec<String> {
        self.equations.iter().map(|e| e.to_text(&self.labels)).collect()
    }

    /// Coefficients of a concrete map in unknown order.
    pub fn coefficients_of(&self, comps: &[Polynomial<FieldElement>]) -> Result<Vec<FieldElement>> {
        if comps.len() != self.coords {
            return Err(Error::DimensionMismatch { expected: self.coords, found: comps.len() });
        }
        for c in comps {
            if c.ctx() != &self.spec {
                return Err(Error::MixedFields);
            }
            let fits = c.terms().all(|(m, _)| {
                let deg = m.degree();
                if self.projective { deg == self.d } else { deg <= self.d }
            });
            if !fits {
                return Err(Error::DegreeTooSmall { required: c.degree().unwrap_or(0) as usize, given: self.d as usize });
            }
        }
        Ok(self.unknowns.iter().map(|(i, m)| comps[*i].coeff(m)).collect())
    }

    /// Values of every equation at the coefficient vector `b`.
    pub fn evaluate_at(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if b.len() != self.unknowns.len() {
            return Err(Error::DimensionMismatch { expected: self.unknowns.len(), found: b.len() });
        }
        Ok(self.equations.iter().map(|e| e.evaluate(b)).collect())
    }

    pub fn vanishes_at(&self, b: &[FieldElement]) -> Result<bool> {
        if b.len() != self.unknowns.len() {
            return Err(Error::DimensionMismatch { expected: self.unknowns.len(), found: b.len() });
        }
        Ok(self.equations.iter().all(|e| e.evaluate(b).is_zero()))
    }

    /// The map with coefficient vector `b`, as polynomials in the map's coordinates.
    pub fn components_from(&self, b: &[FieldElement]) -> Vec<Polynomial<FieldElement>> {
        (0..self.coords)
            .map(|i| {
                let terms = self
                    .unknowns
                    .iter()
                    .zip(b)
                    .filter(|((c, _), v)| *c == i && !v.is_zero())
                    .map(|((_, m), v)| (m.clone(), v.clone()));
                Polynomial::from_terms(self.coords, self.spec, terms)
            })
            .collect()
    }

    /// Every coefficient vector with entries from `values` at which all
    /// equations vanish, in lexicographic order of `values` positions.
    pub fn grid_solutions(&self, values: &[FieldElement], cap: u128) -> Result<Vec<Vec<FieldElement>>> {
        let nb = self.unknowns.len();
        let count = (values.len() as u128).saturating_pow(nb as u32);
        if count > cap {
            return Err(Error::ExplosionGuard { what: "ideal grid", count, cap });
        }
        let mut out = Vec::new();
        if values.is_empty() {
            return Ok(out);
        }
        let mut digits = alloc::vec![0usize; nb];
        loop {
            let b: Vec<FieldElement> = digits.iter().map(|&k| values[k].clone()).collect();
            if self.vanishes_at(&b)? {
                out.push(b);
            }
            let mut i = nb;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < values.len() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}
