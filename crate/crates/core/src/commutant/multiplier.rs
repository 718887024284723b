//! Multipliers of periodic points and the period-preservation certificate.

use alloc::string::String;
use alloc::vec::Vec;

use crate::commutant::predicates::require_commuting;
use crate::dynamics::orbit::orbit;
use crate::error::{Error, Result};
use crate::field::{divisors, FieldElement, RootVerdict};
use crate::map::{Point, PolyMap};
use crate::ring::Ring;

/// What a commuting `g` does to the period of `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionReport {
    pub image: Point,
    pub image_period: usize,
    /// `l₀ = (period of P) / (period of g(P))`.
    pub l0: usize,
    pub image_multiplier: FieldElement,
    /// `det J_g(P) = 0`.
    pub critical_for_g: bool,
    /// `λ_f(P) = λ_f(g(P))^{l₀}`; `None` when `P` is critical for `g`.
    pub relation_holds: Option<bool>,
    /// Root test of `λ_f(P)` for each divisor `k > 1` of the period.
    pub root_checks: Vec<(u64, RootVerdict)>,
    /// Every root test came back `Absent`, which proves `g` keeps the period.
    pub preservation_certified: bool,
    pub period_preserved: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierReport {
    pub point: Point,
    pub period: usize,
    /// The cycle `P, f(P), …, f^{l-1}(P)`.
    pub cycle: Vec<Point>,
    pub multiplier: FieldElement,
    /// Some Jacobian factor along the cycle vanishes.
    pub critical: bool,
    pub companion: Option<CompanionReport>,
}

fn cycle_multiplier(f: &PolyMap, cycle: &[Point]) -> Result<(FieldElement, bool)> {
    let spec = f.field();
    let mut lambda = spec.one();
    let mut critical = false;
    for q in cycle {
        let det = f.jacobian_det_at(q)?;
        critical |= det.is_zero();
        lambda = lambda.mul(&det);
    }
    Ok((lambda, critical))
}

fn periodic_cycle(f: &PolyMap, p: &[FieldElement], step_limit: usize) -> Result<Vec<Point>> {
    let rec = orbit(f, p, step_limit, None)?;
    match rec.period() {
        Some(l) => Ok(rec.points[..l].to_vec()),
        None => Err(Error::NotPeriodic),
    }
}

/// `λ_f(P) = det J_{f^l}(P)`, the product of `det J_f` along the cycle of `P`.
///
/// With a companion `g` commuting with `f`, also reports the period of
/// `g(P)`, checks `λ_f(P) = λ_f(g(P))^{l₀}` when `P` is not critical for
/// `g`, and tests whether `λ_f(P)` has a `k`-th root for each divisor `k > 1`
/// of the period. If none has one, `g` provably preserves the period.
pub fn multiplier(f: &PolyMap, p: &[FieldElement], companion: Option<&PolyMap>, step_limit: usize) -> Result<MultiplierReport> {
    let cycle = periodic_cycle(f, p, step_limit)?;
    let period = cycle.len();
    let (lambda, critical) = cycle_multiplier(f, &cycle)?;
    let companion = match companion {
        None => None,
        Some(g) => {
            let g = if g.field() != f.field() { g.change_field(f.field())? } else { g.clone() };
            require_commuting(f, &g)?;
            let image = g.evaluate(p)?;
            let image_cycle = periodic_cycle(f, &image, step_limit)?;
            let image_period = image_cycle.len();
            if period % image_period != 0 {
                return Err(Error::InvalidArgument(String::from("image period does not divide the period")));
            }
            let l0 = period / image_period;
            let (image_multiplier, _) = cycle_multiplier(f, &image_cycle)?;
            let critical_for_g = g.jacobian_det_at(p)?.is_zero();
            let relation_holds = if critical_for_g { None } else { Some(image_multiplier.powi(l0 as i64)? == lambda) };
            let mut root_checks = Vec::new();
            if !lambda.is_zero() {
                for k in divisors(period as u64).into_iter().filter(|&k| k > 1) {
                    root_checks.push((k, lambda.kth_root(k as u32)?));
                }
            }
            let preservation_certified =
                !lambda.is_zero() && root_checks.iter().all(|(_, v)| matches!(v, RootVerdict::Absent));
            Some(CompanionReport {
                image,
                image_period,
                l0,
                image_multiplier,
                critical_for_g,
                relation_holds,
                root_checks,
                preservation_certified,
                period_preserved: l0 == 1,
            })
        }
    };
    Ok(MultiplierReport { point: p.to_vec(), period, cycle, multiplier: lambda, critical, companion })
}
