//! Finite catalogs of preperiodic points stratified by minimal `(m, l)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::dynamics::height::{bounded_height_count_bound, bounded_height_points, HeightValue};
use crate::dynamics::monomial::MonomialMapSpec;
use crate::dynamics::orbit::{orbit, OrbitStatus};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldElement, FieldKind, FieldSpec};
use crate::map::{Point, PolyMap};

/// Minimal `(m, l)` of a preperiodic point: `f^m(P) = f^l(P)`, `m > l ≥ 0`.
pub type Stratum = (usize, usize);

/// Whether a point of minimal stratum `inner` satisfies `f^m(Q) = f^l(Q)`
/// for `outer = (m, l)`, i.e. lies in the (non-minimal) set `Pre_{m,l}(f)`.
pub fn stratum_within(inner: Stratum, outer: Stratum) -> bool {
    let (m1, l1) = inner;
    let (m2, l2) = outer;
    l1 <= l2 && (m2 - l2) % (m1 - l1) == 0
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogStrategy {
    /// All rational points of height at most the bound, run through their orbits.
    BoundedHeight(HeightValue),
    /// The torus `μ_N^n` (or `(±μ_N)^n` when some coefficient is `-1`) for a prime `N`.
    MonomialExact(u64),
    /// Every point of `𝔽_p^n`.
    FiniteFieldFull,
}

impl CatalogStrategy {
    /// Text form; the height bound is on the log scale, as accepted by `from_log`.
    pub fn describe(&self) -> String {
        match self {
            CatalogStrategy::BoundedHeight(b) => format!("bounded:{}", b.log()),
            CatalogStrategy::MonomialExact(n) => format!("monomial:{n}"),
            CatalogStrategy::FiniteFieldFull => String::from("finite-field"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The catalog is the full preperiodic set within the searched domain.
    Exact,
    /// Complete only under the assertion that `Pre(f)` has height at most the bound.
    RelativeToBound(HeightValue),
}

#[derive(Clone, Debug)]
pub struct CatalogConfig {
    /// Cap on the number of candidate points examined.
    pub point_cap: u128,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig { point_cap: 1_000_000 }
    }
}

/// The sets `Pre_{m,l}(f)` found by one search, stratified by minimal `(m, l)`.
#[derive(Clone, Debug)]
pub struct PreperiodicCatalog {
    map: PolyMap,
    description: String,
    certification: Certification,
    strata: BTreeMap<Stratum, BTreeSet<Point>>,
    index: BTreeMap<Point, Stratum>,
}

impl PreperiodicCatalog {
    /// Assembles a catalog from explicit strata, re-verifying every claim:
    /// each point's minimal `(m, l)` and closure under `f`.
    pub fn from_strata(
        map: PolyMap,
        description: String,
        certification: Certification,
        strata: BTreeMap<Stratum, BTreeSet<Point>>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (&s, pts) in &strata {
            for p in pts {
                let rec = orbit(&map, p, s.0.max(1), None)?;
                if rec.status != (OrbitStatus::Preperiodic { m: s.0, l: s.1 }) {
                    return Err(Error::InvalidArgument(format!("point is not in stratum {s:?}")));
                }
                if index.insert(p.clone(), s).is_some() {
                    return Err(Error::InvalidArgument(String::from("duplicate catalog point")));
                }
            }
        }
        let cat = PreperiodicCatalog { map, description, certification, strata, index };
        if !cat.is_closed()? {
            return Err(Error::InvalidArgument(String::from("catalog is not closed under the map")));
        }
        Ok(cat)
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn strata(&self) -> &BTreeMap<Stratum, BTreeSet<Point>> {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Points stratum by stratum (increasing `(m, l)`), each stratum in point order.
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.strata.values().flat_map(|s| s.iter())
    }

    pub fn stratum_of(&self, p: &[FieldElement]) -> Option<Stratum> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &[FieldElement]) -> bool {
        self.index.contains_key(p)
    }

    /// Catalog points lying in `Pre_{m,l}(f)` (all `Q` with `f^m(Q) = f^l(Q)`).
    pub fn pre_set(&self, s: Stratum) -> impl Iterator<Item = &Point> {
        self.strata.iter().filter(move |(&t, _)| stratum_within(t, s)).flat_map(|(_, pts)| pts.iter())
    }

    /// `M_{m,l} = |Pre_{m,l}(f)|` restricted to the catalog.
    pub fn pre_count(&self, s: Stratum) -> usize {
        self.strata.iter().filter(|(&t, _)| stratum_within(t, s)).map(|(_, pts)| pts.len()).sum()
    }

    /// `Π_{m=1}^{m_max} Π_{l<m} M_{m,l}^{M_{m,l}}`.
    pub fn counting_bound(&self, m_max: usize) -> BigUint {
        let mut acc = BigUint::one();
        for m in 1..=m_max {
            for l in 0..m {
                let c = self.pre_count((m, l));
                acc *= num_traits::pow(BigUint::from(c), c);
            }
        }
        acc
    }

    /// `f(P)` is a catalog point for every catalog point `P`.
    pub fn is_closed(&self) -> Result<bool> {
        for p in self.index.keys() {
            if !self.contains(&self.map.evaluate(p)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Runs the chosen search and returns the stratified catalog.
pub fn build_catalog(f: &PolyMap, strategy: &CatalogStrategy, config: &CatalogConfig) -> Result<PreperiodicCatalog> {
    let n = f.dim();
    let (map, candidates, bound, certification): (PolyMap, Vec<Point>, Option<HeightValue>, Certification) = match strategy {
        CatalogStrategy::BoundedHeight(b) => {
            if !f.field().is_rational() {
                return Err(Error::StrategyInapplicable(String::from("bounded-height search needs a map over Q")));
            }
            let pts: Vec<Point> = bounded_height_points(n, b, config.point_cap)?.collect();
            (f.clone(), pts, Some(b.clone()), Certification::RelativeToBound(b.clone()))
        }
        CatalogStrategy::MonomialExact(order) => {
            let order = *order;
            if !is_prime(order) {
                return Err(Error::UnsupportedOrder(order));
            }
            let spec = FieldSpec::cyclotomic(order)?;
            let lifted = f.change_field(spec)?;
            let lifted_mono = MonomialMapSpec::from_map(&lifted)
                .ok_or_else(|| Error::StrategyInapplicable(String::from("map is not monomial")))?;
            let one = spec.one();
            let minus = one.negated();
            let signed = match lifted_mono.coefficients() {
                None => false,
                Some(cs) if cs.iter().all(|c| *c == one || *c == minus) => true,
                Some(_) => {
                    return Err(Error::StrategyInapplicable(String::from("monomial coefficients must be ±1")));
                }
            };
            let per_coord: Vec<FieldElement> = (0..order)
                .map(|k| FieldElement::zeta_pow(spec, k).unwrap())
                .flat_map(|z| if signed { alloc::vec![z.clone(), z.negated()] } else { alloc::vec![z] })
                .collect();
            let count = (per_coord.len() as u128).saturating_pow(n as u32);
            if count > config.point_cap {
                return Err(Error::ExplosionGuard { what: "torus points", count, cap: config.point_cap });
            }
            (lifted, cartesian(&per_coord, n), None, Certification::Exact)
        }
        CatalogStrategy::FiniteFieldFull => {
            let p = match f.field().kind() {
                FieldKind::PrimeField(p) => p,
                _ => return Err(Error::StrategyInapplicable(String::from("full enumeration needs a map over F_p"))),
            };
            let count = (p as u128).saturating_pow(n as u32);
            if count > config.point_cap {
                return Err(Error::ExplosionGuard { what: "finite-field points", count, cap: config.point_cap });
            }
            let per_coord: Vec<FieldElement> = (0..p).map(|v| FieldElement::from_int(f.field(), v as i64)).collect();
            (f.clone(), cartesian(&per_coord, n), None, Certification::Exact)
        }
    };
    // Every orbit staying inside the candidate set repeats within |set| steps.
    let step_limit = match strategy {
        CatalogStrategy::BoundedHeight(b) => bounded_height_count_bound(n, b).to_usize().unwrap_or(usize::MAX - 1),
        _ => candidates.len(),
    } + 1;
    let mut index: BTreeMap<Point, Stratum> = BTreeMap::new();
    for p in &candidates {
        if index.contains_key(p) {
            continue;
        }
        let rec = orbit(&map, p, step_limit, bound.as_ref())?;
        if let OrbitStatus::Preperiodic { .. } = rec.status {
            for (k, q) in rec.points.iter().enumerate() {
                index.entry(q.clone()).or_insert_with(|| rec.stratum_of_iterate(k).unwrap());
            }
        }
    }
    let mut strata: BTreeMap<Stratum, BTreeSet<Point>> = BTreeMap::new();
    for (p, s) in &index {
        strata.entry(*s).or_default().insert(p.clone());
    }
    let cat = PreperiodicCatalog { map, description: strategy.describe(), certification, strata, index };
    debug_assert!(cat.is_closed().unwrap());
    Ok(cat)
}

fn cartesian(values: &[FieldElement], n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = alloc::vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}
