//! Is a tuple of forms an endomorphism of `ℙ^n`, i.e. without common
//! nontrivial zero?

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, FieldSpec};
use crate::linalg::determinant;
use crate::map::{Point, ProjMap};
use crate::poly::{Monomial, Polynomial};

pub const DEFAULT_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Cap on the points of `ℙ^n(𝔽_p)` enumerated per prime.
const PROJECTIVE_POINT_CAP: u128 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum MorphismVerdict {
    Morphism,
    /// A common zero exists; `witness` is an exact one when it was found.
    NotMorphism { witness: Option<Point> },
    /// No common zero over the small rational box nor over `ℙ^n(𝔽_p)` for
    /// these primes of good reduction. Evidence, not proof.
    ProbablyMorphism { primes: Vec<u64> },
}

/// Sylvester resultant of two binary forms of degree `d` in `X, Y`.
pub fn binary_resultant(a: &Polynomial<FieldElement>, b: &Polynomial<FieldElement>, d: u32, spec: FieldSpec) -> FieldElement {
    let coeffs = |p: &Polynomial<FieldElement>| -> Vec<FieldElement> {
        (0..=d).map(|i| p.coeff(&Monomial::new(alloc::vec![d - i, i]))).collect()
    };
    let (ca, cb) = (coeffs(a), coeffs(b));
    let size = 2 * d as usize;
    let mut m = alloc::vec![alloc::vec![spec.zero(); size]; size];
    for r in 0..d as usize {
        for (i, c) in ca.iter().enumerate() {
            m[r][r + i] = c.clone();
        }
        for (i, c) in cb.iter().enumerate() {
            m[d as usize + r][r + i] = c.clone();
        }
    }
    determinant(&m, spec)
}

fn reduce_mod(phi: &ProjMap, p: u64) -> Option<Vec<Polynomial<FieldElement>>> {
    let fp = FieldSpec::prime_field(p).ok()?;
    let m = phi.components().len();
    let mut out = Vec::with_capacity(m);
    for c in phi.components() {
        let mut terms = Vec::new();
        for (mono, a) in c.terms() {
            terms.push((mono.clone(), FieldElement::from_rational(fp, a.as_rational()?).ok()?));
        }
        let r = Polynomial::from_terms(m, fp, terms);
        if r.degree() != Some(phi.degree()) {
            return None;
        }
        out.push(r);
    }
    Some(out)
}

/// Points of `ℙ^{m-1}` over `values`, normalized so the first nonzero coordinate is 1.
fn projective_points(values: &[FieldElement], m: usize, one: &FieldElement) -> Vec<Point> {
    let mut out = Vec::new();
    for lead in 0..m {
        let mut digits = alloc::vec![0usize; m - lead - 1];
        loop {
            let mut p: Point = Vec::with_capacity(m);
            p.extend((0..lead).map(|_| one.spec().zero()));
            p.push(one.clone());
            p.extend(digits.iter().map(|&k| values[k].clone()));
            out.push(p);
            let mut i = digits.len();
            let mut done = true;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < values.len() {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

fn common_zero(comps: &[Polynomial<FieldElement>], p: &[FieldElement]) -> bool {
    comps.iter().all(|c| c.evaluate(p).is_zero())
}

/// Decides membership in `Mor_d^n` where possible.
///
/// On `ℙ^1` the Sylvester resultant decides exactly. In higher dimension an
/// exact common zero is searched among small integer points, then among all
/// points of `ℙ^n(𝔽_p)` for each prime of good reduction; a zero mod `p` is
/// lifted with symmetric representatives and kept only if it is an exact zero.
pub fn is_morphism(phi: &ProjMap, primes: &[u64]) -> Result<MorphismVerdict> {
    let spec = phi.field();
    let m = phi.components().len();
    if let FieldKind::Cyclotomic(_) = spec.kind() {
        return Err(Error::StrategyInapplicable(alloc::string::String::from("morphism check needs Q or F_p")));
    }
    if m == 2 {
        let res = binary_resultant(&phi.components()[0], &phi.components()[1], phi.degree(), spec);
        if !res.is_zero() {
            return Ok(MorphismVerdict::Morphism);
        }
        let inf = alloc::vec![spec.one(), spec.zero()];
        let witness = common_zero(phi.components(), &inf).then_some(inf);
        return Ok(MorphismVerdict::NotMorphism { witness });
    }
    if let FieldKind::PrimeField(p) = spec.kind() {
        let count = (p as u128).saturating_pow(m as u32);
        if count > PROJECTIVE_POINT_CAP {
            return Err(Error::ExplosionGuard { what: "projective points", count, cap: PROJECTIVE_POINT_CAP });
        }
        let values: Vec<FieldElement> = (0..p).map(|v| FieldElement::from_int(spec, v as i64)).collect();
        for pt in projective_points(&values, m, &spec.one()) {
            if common_zero(phi.components(), &pt) {
                return Ok(MorphismVerdict::NotMorphism { witness: Some(pt) });
            }
        }
        return Ok(MorphismVerdict::ProbablyMorphism { primes: alloc::vec![p] });
    }
    let small: Vec<FieldElement> = [0, 1, -1, 2, -2].iter().map(|&v| FieldElement::from_int(spec, v)).collect();
    for pt in projective_points(&small, m, &spec.one()) {
        if common_zero(phi.components(), &pt) {
            return Ok(MorphismVerdict::NotMorphism { witness: Some(pt) });
        }
    }
    let mut tested = Vec::new();
    for &p in primes {
        let Some(reduced) = reduce_mod(phi, p) else { continue };
        let count = (p as u128).saturating_pow(m as u32);
        if count > PROJECTIVE_POINT_CAP {
            return Err(Error::ExplosionGuard { what: "projective points", count, cap: PROJECTIVE_POINT_CAP });
        }
        let fp = FieldSpec::prime_field(p)?;
        let values: Vec<FieldElement> = (0..p).map(|v| FieldElement::from_int(fp, v as i64)).collect();
        for pt in projective_points(&values, m, &fp.one()) {
            if !common_zero(&reduced, &pt) {
                continue;
            }
            let lift: Point = pt
                .iter()
                .map(|c| {
                    let v = match c {
                        FieldElement::PrimeField(r) => r.value() as i64,
                        _ => unreachable!(),
                    };
                    let sym = if v > p as i64 / 2 { v - p as i64 } else { v };
                    FieldElement::from_int(spec, sym)
                })
                .collect();
            if common_zero(phi.components(), &lift) {
                return Ok(MorphismVerdict::NotMorphism { witness: Some(lift) });
            }
        }
        tested.push(p);
    }
    if tested.is_empty() {
        return Err(Error::NoGoodPrime);
    }
    Ok(MorphismVerdict::ProbablyMorphism { primes: tested })
}
