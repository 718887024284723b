//! Finding the degree-`d` maps commuting with `f`: the catalog method and
//! a coefficient-grid oracle.
//!
//! Both searches expose their candidates by index ([`CandidateSpace`]) so a
//! caller may split the range across threads; [`run_sequential`] walks it in
//! order. Results are sorted by canonical text, so the schedule never shows.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::commutant::predicates::commutes_affine;
use crate::dynamics::catalog::{Certification, PreperiodicCatalog};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::map::{Point, PolyMap};
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;
use crate::veronese::{find_general_position, VeroneseFrame};

/// Default cap on the number of candidates a search may examine.
pub const CANDIDATE_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum SearchMethod {
    CatalogSearch {
        catalog: String,
        certification: Certification,
        frame: Vec<Point>,
        /// Largest minimal `m` among the frame points.
        m_d: usize,
        /// Number of catalog points with minimal `m ≤ m_d`.
        v_d: usize,
    },
    CoefficientGrid {
        coeff_bound: i64,
        denom_bound: i64,
        restricted_support: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every commuting map in the method's domain was found.
    CompleteForMethod,
    /// The domain was restricted; the list is only part of `Com(f, d)`.
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutantResult {
    pub f: PolyMap,
    pub d: u32,
    pub method: SearchMethod,
    /// Sorted by canonical text, no duplicates.
    pub maps: Vec<PolyMap>,
    pub completeness: Completeness,
    /// Number of candidates examined.
    pub explored: u128,
    /// `Π M_{m,l}^{M_{m,l}}` for the catalog method.
    pub counting_bound: Option<BigUint>,
}

impl CommutantResult {
    pub fn texts(&self) -> Vec<String> {
        self.maps.iter().map(PolyMap::to_text).collect()
    }
}

/// Candidates addressable by index `0..len()`.
pub trait CandidateSpace: Sync {
    fn len(&self) -> u128;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The commuting map of degree exactly `d` at this index, if it is one.
    fn test(&self, idx: u128) -> Result<Option<PolyMap>>;

    /// Packs the maps found into a result.
    fn finish(&self, found: Vec<PolyMap>) -> CommutantResult;
}

/// Tests every index in order.
pub fn run_sequential<S: CandidateSpace + ?Sized>(space: &S) -> Result<CommutantResult> {
    let mut found = Vec::new();
    let mut idx = 0;
    while idx < space.len() {
        if let Some(g) = space.test(idx)? {
            found.push(g);
        }
        idx += 1;
    }
    Ok(space.finish(found))
}

/// Sorts by canonical text and drops duplicates.
pub fn canonical_order(maps: Vec<PolyMap>) -> Vec<PolyMap> {
    let keyed: BTreeMap<String, PolyMap> = maps.into_iter().map(|g| (g.to_text(), g)).collect();
    keyed.into_values().collect()
}

/// Cheap exact necessary condition for commuting: `f(g(P)) = g(f(P))` at a
/// few fixed points, with `f` evaluated once per point.
#[derive(Clone, Debug)]
struct PointFilter {
    /// `(P, f(P))`.
    samples: Vec<(Point, Point)>,
}

impl PointFilter {
    fn new(f: &PolyMap) -> Result<Self> {
        let spec = f.field();
        let n = f.dim();
        let mut samples = Vec::new();
        for t in 0..2i64 {
            let p: Point = (0..n as i64)
                .map(|j| {
                    let q = BigRational::new((2 + j + 3 * t).into(), (3 + 2 * j + t).into());
                    FieldElement::from_rational(spec, &q).unwrap_or_else(|_| FieldElement::from_int(spec, 2 + j + t))
                })
                .collect();
            let fp = f.evaluate(&p)?;
            samples.push((p, fp));
        }
        Ok(PointFilter { samples })
    }

    fn passes(&self, f: &PolyMap, g: &PolyMap) -> Result<bool> {
        for (p, fp) in &self.samples {
            if f.evaluate(&g.evaluate(p)?)? != g.evaluate(fp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn mixed_radix(mut idx: u128, radices: &[usize]) -> Vec<usize> {
    let mut digits = alloc::vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        *slot = (idx % r as u128) as usize;
        idx /= r as u128;
    }
    digits
}

fn product(sizes: &[usize]) -> u128 {
    sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128))
}

/// The catalog method: a frame `S_d` inside the catalog, and for each frame
/// point an image drawn from the catalog's `Pre_{m,l}(f)` for that point's
/// minimal `(m, l)`. Each assignment determines at most one map of degree
/// at most `d`.
#[derive(Clone, Debug)]
pub struct CatalogSearch {
    f: PolyMap,
    d: u32,
    frame: VeroneseFrame,
    candidates: Vec<Vec<Point>>,
    /// `contrib[k][j][i][r]`: contribution of image `j` of frame point `k`
    /// to coefficient `r` of component `i`.
    contrib: Vec<Vec<Vec<Vec<FieldElement>>>>,
    filter: PointFilter,
    method: SearchMethod,
    counting_bound: BigUint,
}

impl CatalogSearch {
    pub fn new(f: &PolyMap, d: u32, catalog: &PreperiodicCatalog, cap: u128) -> Result<Self> {
        let spec = catalog.map().field();
        let f = f.change_field(spec)?;
        if f != *catalog.map() {
            return Err(Error::InvalidArgument(String::from("catalog was built for a different map")));
        }
        let n = f.dim();
        let frame = find_general_position(catalog.points().cloned(), n, d, spec)?;
        let strata: Vec<(usize, usize)> = frame.points().iter().map(|p| catalog.stratum_of(p).unwrap()).collect();
        let m_d = strata.iter().map(|s| s.0).max().unwrap_or(0);
        let v_d = catalog.strata().iter().filter(|(s, _)| s.0 <= m_d).map(|(_, pts)| pts.len()).sum();
        let candidates: Vec<Vec<Point>> = strata.iter().map(|&s| catalog.pre_set(s).cloned().collect()).collect();
        let sizes: Vec<usize> = candidates.iter().map(Vec::len).collect();
        let count = product(&sizes);
        if count > cap {
            return Err(Error::ExplosionGuard { what: "image assignments", count, cap });
        }
        let inv: &Matrix = frame.inverse();
        let big_n = frame.basis().len();
        let contrib = candidates
            .iter()
            .enumerate()
            .map(|(k, imgs)| {
                imgs.iter()
                    .map(|q| {
                        (0..n)
                            .map(|i| (0..big_n).map(|r| inv[r][k].mul(&q[i])).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let method = SearchMethod::CatalogSearch {
            catalog: String::from(catalog.description()),
            certification: catalog.certification().clone(),
            frame: frame.points().to_vec(),
            m_d,
            v_d,
        };
        let filter = PointFilter::new(&f)?;
        Ok(CatalogSearch { counting_bound: catalog.counting_bound(m_d), f, d, frame, candidates, contrib, filter, method })
    }

    pub fn frame(&self) -> &VeroneseFrame {
        &self.frame
    }

    /// Number of candidate images for each frame point.
    pub fn candidate_counts(&self) -> Vec<usize> {
        self.candidates.iter().map(Vec::len).collect()
    }
}

impl CandidateSpace for CatalogSearch {
    fn len(&self) -> u128 {
        product(&self.candidate_counts())
    }

    fn test(&self, idx: u128) -> Result<Option<PolyMap>> {
        let digits = mixed_radix(idx, &self.candidate_counts());
        let n = self.f.dim();
        let spec = self.f.field();
        let basis = self.frame.basis();
        let mut comps = Vec::with_capacity(n);
        for i in 0..n {
            let mut coeffs = alloc::vec![spec.zero(); basis.len()];
            for (k, &j) in digits.iter().enumerate() {
                for (c, a) in coeffs.iter_mut().zip(&self.contrib[k][j][i]) {
                    if !a.is_zero() {
                        *c = c.add(a);
                    }
                }
            }
            let terms = basis.iter().cloned().zip(coeffs).filter(|(_, c)| !c.is_zero());
            comps.push(Polynomial::from_terms(n, spec, terms));
        }
        let g = PolyMap::new(comps)?;
        if g.degree() != self.d || g.components().iter().all(Polynomial::is_zero) {
            return Ok(None);
        }
        if !self.filter.passes(&self.f, &g)? || !commutes_affine(&self.f, &g)? {
            return Ok(None);
        }
        Ok(Some(g))
    }

    fn finish(&self, found: Vec<PolyMap>) -> CommutantResult {
        CommutantResult {
            f: self.f.clone(),
            d: self.d,
            method: self.method.clone(),
            maps: canonical_order(found),
            completeness: Completeness::CompleteForMethod,
            explored: self.len(),
            counting_bound: Some(self.counting_bound.clone()),
        }
    }
}

/// Runs the catalog method to completion.
pub fn commutant_search(f: &PolyMap, d: u32, catalog: &PreperiodicCatalog, cap: u128) -> Result<CommutantResult> {
    run_sequential(&CatalogSearch::new(f, d, catalog, cap)?)
}

/// Coefficient grid for the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    /// Numerators range over `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Denominators range over `1..=denom_bound`.
    pub denom_bound: i64,
    /// Allowed monomials per component; all of degree at most `d` when `None`.
    pub support: Option<Vec<Vec<Monomial>>>,
}

impl GridSpec {
    pub fn new(coeff_bound: i64, denom_bound: i64) -> Self {
        GridSpec { coeff_bound, denom_bound, support: None }
    }

    pub fn with_support(mut self, support: Vec<Vec<Monomial>>) -> Self {
        self.support = Some(support);
        self
    }

    /// Distinct values `a/b`, `|a| ≤ coeff_bound`, `1 ≤ b ≤ denom_bound`, in increasing order.
    pub fn values(&self, spec: FieldSpec) -> Result<Vec<FieldElement>> {
        if self.coeff_bound < 0 || self.denom_bound < 1 {
            return Err(Error::InvalidArgument(String::from("grid bounds must be nonnegative")));
        }
        let mut qs = alloc::collections::BTreeSet::new();
        for b in 1..=self.denom_bound {
            for a in -self.coeff_bound..=self.coeff_bound {
                qs.insert(BigRational::new(a.into(), b.into()));
            }
        }
        let mut out: Vec<FieldElement> = Vec::new();
        for q in &qs {
            let v = FieldElement::from_rational(spec, q)?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// Every map with coefficients from the grid, tested one by one.
///
/// Component candidates are tabulated once with their values at the filter
/// points, so a candidate costs one evaluation of `f` per filter point.
#[derive(Clone, Debug)]
pub struct GridSearch {
    f: PolyMap,
    d: u32,
    grid: GridSpec,
    /// Candidate polynomials per component.
    comps: Vec<Vec<Polynomial<FieldElement>>>,
    degrees: Vec<Vec<u32>>,
    /// `at_p[t][i][k]` and `at_fp[t][i][k]`: candidate `k` of component `i`
    /// at filter point `t` and at its image.
    at_p: Vec<Vec<Vec<FieldElement>>>,
    at_fp: Vec<Vec<Vec<FieldElement>>>,
}

impl GridSearch {
    pub fn new(f: &PolyMap, d: u32, grid: &GridSpec, cap: u128) -> Result<Self> {
        let n = f.dim();
        let spec = f.field();
        let values = grid.values(spec)?;
        let support: Vec<Vec<Monomial>> = match &grid.support {
            Some(s) => {
                if s.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: s.len() });
                }
                if s.iter().flatten().any(|m| m.nvars() != n || m.degree() > d) {
                    return Err(Error::InvalidArgument(String::from("support monomial outside the degree range")));
                }
                s.clone()
            }
            None => alloc::vec![Monomial::up_to_degree(n, d); n],
        };
        let sizes: Vec<u128> = support.iter().map(|s| (values.len() as u128).saturating_pow(s.len() as u32)).collect();
        let count = sizes.iter().fold(1u128, |a, &s| a.saturating_mul(s));
        if count > cap {
            return Err(Error::ExplosionGuard { what: "grid maps", count, cap });
        }
        let comps: Vec<Vec<Polynomial<FieldElement>>> = support
            .iter()
            .map(|mons| {
                let radices = alloc::vec![values.len(); mons.len()];
                (0..product(&radices))
                    .map(|idx| {
                        let digits = mixed_radix(idx, &radices);
                        let terms = mons.iter().cloned().zip(digits.iter().map(|&k| values[k].clone()));
                        Polynomial::from_terms(n, spec, terms.filter(|(_, c)| !c.is_zero()))
                    })
                    .collect()
            })
            .collect();
        let degrees = comps.iter().map(|cs| cs.iter().map(|c| c.degree().unwrap_or(0)).collect()).collect();
        let filter = PointFilter::new(f)?;
        let table = |pts: &dyn Fn(&(Point, Point)) -> &Point| -> Vec<Vec<Vec<FieldElement>>> {
            filter
                .samples
                .iter()
                .map(|s| comps.iter().map(|cs| cs.iter().map(|c| c.evaluate(pts(s))).collect()).collect())
                .collect()
        };
        let at_p = table(&|s| &s.0);
        let at_fp = table(&|s| &s.1);
        Ok(GridSearch { f: f.clone(), d, grid: grid.clone(), comps, degrees, at_p, at_fp })
    }

    fn sizes(&self) -> Vec<usize> {
        self.comps.iter().map(Vec::len).collect()
    }
}

impl CandidateSpace for GridSearch {
    fn len(&self) -> u128 {
        product(&self.sizes())
    }

    fn test(&self, idx: u128) -> Result<Option<PolyMap>> {
        let digits = mixed_radix(idx, &self.sizes());
        if digits.iter().enumerate().map(|(i, &k)| self.degrees[i][k]).max() != Some(self.d) {
            return Ok(None);
        }
        if digits.iter().enumerate().all(|(i, &k)| self.comps[i][k].is_zero()) {
            return Ok(None);
        }
        for (at_p, at_fp) in self.at_p.iter().zip(&self.at_fp) {
            let gp: Point = digits.iter().enumerate().map(|(i, &k)| at_p[i][k].clone()).collect();
            let fgp = self.f.evaluate(&gp)?;
            if fgp.iter().enumerate().any(|(i, v)| *v != at_fp[i][digits[i]]) {
                return Ok(None);
            }
        }
        let g = PolyMap::new(digits.iter().enumerate().map(|(i, &k)| self.comps[i][k].clone()).collect())?;
        Ok(if commutes_affine(&self.f, &g)? { Some(g) } else { None })
    }

    fn finish(&self, found: Vec<PolyMap>) -> CommutantResult {
        let restricted = self.grid.support.is_some();
        CommutantResult {
            f: self.f.clone(),
            d: self.d,
            method: SearchMethod::CoefficientGrid {
                coeff_bound: self.grid.coeff_bound,
                denom_bound: self.grid.denom_bound,
                restricted_support: restricted,
            },
            maps: canonical_order(found),
            completeness: if restricted { Completeness::LowerBoundOnly } else { Completeness::CompleteForMethod },
            explored: self.len(),
            counting_bound: None,
        }
    }
}

/// Runs the grid oracle to completion.
pub fn brute_force_commutant(f: &PolyMap, d: u32, grid: &GridSpec, cap: u128) -> Result<CommutantResult> {
    run_sequential(&GridSearch::new(f, d, grid, cap)?)
}

/// `Π M^M` helper for callers holding bare counts.
pub fn power_product(counts: &[usize]) -> BigUint {
    counts.iter().fold(BigUint::one(), |acc, &c| acc * num_traits::pow(BigUint::from(c), c))
}
