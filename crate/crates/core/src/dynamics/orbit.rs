use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dynamics::height::{weil_height, HeightValue};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::map::{check_point, Point, PolyMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    /// `f^m(P) = f^l(P)` with `(m, l)` minimal.
    Preperiodic { m: usize, l: usize },
    /// `f^step(P)` has height above the bound. Under the caller's assertion
    /// that every preperiodic point has height at most the bound, `P` is not
    /// preperiodic.
    EscapedHeightBound { bound: HeightValue, step: usize, height: HeightValue },
    StepLimitReached,
}

/// Forward orbit `P, f(P), f²(P), …` up to the first repetition or stop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub base: Point,
    /// Distinct iterates `f^0(P), …, f^k(P)` in order.
    pub points: Vec<Point>,
    pub status: OrbitStatus,
}

impl OrbitRecord {
    pub fn tail_length(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Preperiodic { l, .. } => Some(l),
            _ => None,
        }
    }

    pub fn cycle_length(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Preperiodic { m, l } => Some(m - l),
            _ => None,
        }
    }

    pub fn is_preperiodic(&self) -> bool {
        matches!(self.status, OrbitStatus::Preperiodic { .. })
    }

    /// Exact period when `P` is periodic (`l = 0`).
    pub fn period(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Preperiodic { m, l: 0 } => Some(m),
            _ => None,
        }
    }

    /// Minimal `(m, l)` of the `k`-th stored iterate, derived from this orbit.
    pub fn stratum_of_iterate(&self, k: usize) -> Option<(usize, usize)> {
        match self.status {
            OrbitStatus::Preperiodic { m, l } => {
                let c = m - l;
                let tail = l.saturating_sub(k);
                Some((tail + c, tail))
            }
            _ => None,
        }
    }
}

/// Largest total coordinate size, in bits, an orbit may reach.
pub const ORBIT_BIT_CAP: u64 = 1 << 16;

/// Iterates `f` from `p`, detecting the first exact repetition.
///
/// At most `step_limit` applications of `f` are made, and an iterate whose
/// coordinates need more than [`ORBIT_BIT_CAP`] bits stops the run with
/// `ExplosionGuard`. When `height_bound`
/// is given, each new iterate `f^k(P)`, `k ≥ 1`, is checked against it; a
/// repetition takes precedence over the height test.
pub fn orbit(f: &PolyMap, p: &[FieldElement], step_limit: usize, height_bound: Option<&HeightValue>) -> Result<OrbitRecord> {
    check_point(p, f.dim(), f.field())?;
    if step_limit == 0 {
        return Err(Error::InvalidArgument(String::from("step limit must be at least 1")));
    }
    if height_bound.is_some() && !f.field().is_rational() {
        return Err(Error::NotRational);
    }
    let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
    let mut points = Vec::new();
    seen.insert(p.to_vec(), 0);
    points.push(p.to_vec());
    for step in 1..=step_limit {
        let next = f.evaluate(points.last().unwrap())?;
        let bits: u64 = next.iter().map(FieldElement::bit_size).sum();
        if bits > ORBIT_BIT_CAP {
            return Err(Error::ExplosionGuard { what: "orbit coordinate bits", count: bits.into(), cap: ORBIT_BIT_CAP.into() });
        }
        if let Some(&l) = seen.get(&next) {
            return Ok(OrbitRecord { base: p.to_vec(), points, status: OrbitStatus::Preperiodic { m: step, l } });
        }
        if let Some(bound) = height_bound {
            let h = weil_height(&next)?;
            if h > *bound {
                points.push(next);
                return Ok(OrbitRecord {
                    base: p.to_vec(),
                    points,
                    status: OrbitStatus::EscapedHeightBound { bound: bound.clone(), step, height: h },
                });
            }
        }
        seen.insert(next.clone(), step);
        points.push(next);
    }
    Ok(OrbitRecord { base: p.to_vec(), points, status: OrbitStatus::StepLimitReached })
}
