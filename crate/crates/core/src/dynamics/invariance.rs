//! Checking that a commuting map preserves the preperiodic strata of `f`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::commutant::predicates::require_commuting;
use crate::dynamics::catalog::{stratum_within, PreperiodicCatalog, Stratum};
use crate::dynamics::orbit::orbit;
use crate::error::Result;
use crate::map::{Point, PolyMap};

/// A catalog point whose image escapes its `Pre_{m,l}(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: Point,
    pub stratum: Stratum,
    pub image: Point,
    /// Minimal stratum of the image, or `None` when the image is not in the catalog.
    pub image_stratum: Option<Stratum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    /// `g(Pre_{m,l}(f)) ⊂ Pre_{m,l}(f)` held for every catalog point.
    pub containment: bool,
    pub violations: Vec<Violation>,
    /// `g` maps the catalog onto itself.
    pub surjective: bool,
    /// Catalog points not of the form `g(P)` for a catalog point `P`.
    pub missing_from_image: Vec<Point>,
    /// Every catalog point is `g`-preperiodic.
    pub pre_f_in_pre_g: bool,
}

/// Checks `g(Pre_{m,l}(f)) ⊂ Pre_{m,l}(f)` on the catalog.
///
/// A point of minimal stratum `(m, l)` may be sent to a point of a smaller
/// stratum, as long as the image still satisfies `f^m = f^l`. A map over
/// `ℚ` is lifted to the catalog's field first.
pub fn verify_invariance(g: &PolyMap, catalog: &PreperiodicCatalog) -> Result<InvarianceReport> {
    let f = catalog.map();
    let g = if g.field() != f.field() { g.change_field(f.field())? } else { g.clone() };
    require_commuting(f, &g)?;
    let mut violations = Vec::new();
    let mut image = BTreeSet::new();
    for (&s, pts) in catalog.strata() {
        for p in pts {
            let q = g.evaluate(p)?;
            let qs = catalog.stratum_of(&q);
            if !qs.is_some_and(|t| stratum_within(t, s)) {
                violations.push(Violation { point: p.clone(), stratum: s, image: q.clone(), image_stratum: qs });
            }
            image.insert(q);
        }
    }
    let missing_from_image: Vec<Point> = catalog.points().filter(|p| !image.contains(*p)).cloned().collect();
    let mut pre_f_in_pre_g = true;
    for p in catalog.points() {
        if !orbit(&g, p, catalog.len() + 1, None)?.is_preperiodic() {
            pre_f_in_pre_g = false;
            break;
        }
    }
    Ok(InvarianceReport {
        containment: violations.is_empty(),
        violations,
        surjective: missing_from_image.is_empty(),
        missing_from_image,
        pre_f_in_pre_g,
    })
}
