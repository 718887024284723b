//! `Aut(φ) = Com(φ, 1)`: the invertible degree-one maps commuting with `φ`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::commutant::predicates::commutes_projective;
use crate::commutant::search::CommutantResult;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{determinant, invert, Matrix};
use crate::map::{PolyMap, ProjMap};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismReport {
    /// The degree-one search this was read from.
    pub com: CommutantResult,
    /// The invertible members, in the same order.
    pub invertible: Vec<PolyMap>,
}

/// Linear part `A` and translation `c` of a map of degree at most one.
pub fn affine_parts(g: &PolyMap) -> Option<(Matrix, Vec<FieldElement>)> {
    if g.degree() > 1 {
        return None;
    }
    let n = g.dim();
    let a = g
        .components()
        .iter()
        .map(|c| (0..n).map(|j| c.coeff(&Monomial::var(n, j))).collect())
        .collect();
    let t = g.components().iter().map(|c| c.coeff(&Monomial::one(n))).collect();
    Some((a, t))
}

/// The inverse `x ↦ A⁻¹(x − c)` of an affine map `x ↦ Ax + c`, if it exists.
pub fn affine_inverse(g: &PolyMap) -> Option<PolyMap> {
    let (a, c) = affine_parts(g)?;
    let spec = g.field();
    let inv = invert(&a, spec).ok()?;
    let n = g.dim();
    let shifted: Vec<Polynomial<FieldElement>> =
        (0..n).map(|j| Polynomial::var(n, spec, j).sub(&Polynomial::constant(n, spec, c[j].clone()))).collect();
    let comps = inv
        .iter()
        .map(|row| {
            row.iter().zip(&shifted).fold(Polynomial::zero(n, spec), |acc, (a, s)| acc.add(&s.scale(a)))
        })
        .collect();
    PolyMap::new(comps).ok()
}

/// Splits a degree-one commutant into its invertible members.
pub fn automorphisms(com: CommutantResult) -> Result<AutomorphismReport> {
    if com.d != 1 {
        return Err(Error::InvalidArgument(String::from("automorphisms come from the degree-one commutant")));
    }
    let invertible = com
        .maps
        .iter()
        .filter(|g| affine_parts(g).is_some_and(|(a, _)| !determinant(&a, g.field()).is_zero()))
        .cloned()
        .collect();
    Ok(AutomorphismReport { com, invertible })
}

/// Invertible linear maps of `ℙ^n` commuting with `φ`, over matrices with
/// entries from `values`. Each projective class is listed once, normalized
/// so that its first nonzero coefficient is 1.
pub fn projective_automorphisms(phi: &ProjMap, values: &[FieldElement], cap: u128) -> Result<Vec<ProjMap>> {
    let m = phi.dim() + 1;
    let spec = phi.field();
    let cells = m * m;
    let count = (values.len() as u128).saturating_pow(cells as u32);
    if count > cap {
        return Err(Error::ExplosionGuard { what: "projective linear grid", count, cap });
    }
    let mut found: BTreeMap<String, ProjMap> = BTreeMap::new();
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let mut digits = alloc::vec![0usize; cells];
    loop {
        let entries: Vec<&FieldElement> = digits.iter().map(|&k| &values[k]).collect();
        if entries.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_one()) {
            let a: Matrix = (0..m).map(|i| (0..m).map(|j| entries[i * m + j].clone()).collect()).collect();
            if !determinant(&a, spec).is_zero() {
                let comps = a
                    .iter()
                    .map(|row| {
                        let terms = row.iter().enumerate().map(|(j, c)| (Monomial::var(m, j), c.clone()));
                        Polynomial::from_terms(m, spec, terms.filter(|(_, c)| !c.is_zero()))
                    })
                    .collect();
                let psi = ProjMap::new(comps)?;
                if commutes_projective(phi, &psi)? {
                    let psi = psi.normalized();
                    found.insert(psi.to_text(), psi);
                }
            }
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(found.into_values().collect());
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::search::{brute_force_commutant, GridSpec, CANDIDATE_CAP};
    use crate::field::FieldSpec;
    use alloc::vec;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn squares_have_identity_and_swap() {
        let v = |i| Polynomial::var(2, q(), i);
        let f = PolyMap::new(vec![v(0).pow(2), v(1).pow(2)]).unwrap();
        let com = brute_force_commutant(&f, 1, &GridSpec::new(1, 1), CANDIDATE_CAP).unwrap();
        let aut = automorphisms(com).unwrap();
        let texts: Vec<String> = aut.invertible.iter().map(PolyMap::to_text).collect();
        assert_eq!(texts, ["(x, y)", "(y, x)"]);
    }

    #[test]
    fn inverse_of_affine_map() {
        let v = |i| Polynomial::var(2, q(), i);
        let one = Polynomial::one(2, q());
        let g = PolyMap::new(vec![v(0).add(&v(1)), v(1).sub(&one)]).unwrap();
        let h = affine_inverse(&g).unwrap();
        assert_eq!(g.compose(&h).unwrap(), PolyMap::identity(2, q()));
        let sing = PolyMap::new(vec![v(0), v(0)]).unwrap();
        assert!(affine_inverse(&sing).is_none());
    }

    #[test]
    fn projective_squares() {
        let v = |i| Polynomial::var(2, q(), i);
        let phi = ProjMap::new(vec![v(0).pow(2), v(1).pow(2)]).unwrap();
        let vals: Vec<FieldElement> = [-1, 0, 1].iter().map(|&k| FieldElement::rational(k, 1)).collect();
        let auts = projective_automorphisms(&phi, &vals, 1 << 20).unwrap();
        let texts: Vec<String> = auts.iter().map(ProjMap::to_text).collect();
        assert_eq!(texts, ["[x, y]", "[y, x]"]);
    }
}
