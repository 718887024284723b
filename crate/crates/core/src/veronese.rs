//! Veronese evaluation vectors, frames of points in general position of
//! degree `d`, and reconstruction of a map from its images on a frame.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{determinant, integer_rank, integer_rows, invert, nullspace, Matrix, ModRankFilter, RankExtender};
use crate::map::{check_point, Point, PolyMap};
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// `C(n + d, d)`, the number of monomials of degree at most `d` in `n` variables.
pub fn basis_size(n: usize, d: u32) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc * (n as u128 + i) / i;
    }
    acc as usize
}

fn monomial_value(m: &Monomial, p: &[FieldElement], spec: FieldSpec) -> FieldElement {
    let mut acc = spec.one();
    for (x, &e) in p.iter().zip(m.exponents()) {
        if e > 0 {
            acc = acc.mul(&x.pow(&spec, e));
        }
    }
    acc
}

/// Values at `p` of every monomial of degree at most `d`, in basis order.
pub fn veronese_vector(p: &[FieldElement], d: u32) -> Result<Vec<FieldElement>> {
    let spec = p.first().map(FieldElement::spec).ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    check_point(p, p.len(), spec)?;
    Ok(Monomial::up_to_degree(p.len(), d).iter().map(|m| monomial_value(m, p, spec)).collect())
}

/// `N` points whose Veronese vectors form an invertible matrix `τ(S_d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseFrame {
    n: usize,
    d: u32,
    spec: FieldSpec,
    basis: Vec<Monomial>,
    points: Vec<Point>,
    matrix: Matrix,
    inverse: Matrix,
}

impl VeroneseFrame {
    /// Builds a frame from exactly `N` given points, failing with
    /// `SingularFrame` when they are not in general position.
    pub fn from_points(points: Vec<Point>, d: u32) -> Result<Self> {
        let first = points.first().ok_or(Error::SingularFrame)?;
        let n = first.len();
        let spec = first.first().map(FieldElement::spec).ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let basis = Monomial::up_to_degree(n, d);
        if points.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: points.len() });
        }
        let mut matrix = Vec::with_capacity(points.len());
        for p in &points {
            check_point(p, n, spec)?;
            matrix.push(basis.iter().map(|m| monomial_value(m, p, spec)).collect());
        }
        let inverse = invert(&matrix, spec)?;
        Ok(VeroneseFrame { n, d, spec, basis, points, matrix, inverse })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.spec
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// `τ(S_d)`, one row per frame point.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn determinant(&self) -> FieldElement {
        determinant(&self.matrix, self.spec)
    }
}

/// Keeps each point of the stream whose Veronese vector raises the rank,
/// stopping as soon as `N` independent points are held.
///
/// Fails with `StreamExhausted` carrying the rank reached when the stream
/// runs out first.
pub fn find_general_position<I>(stream: I, n: usize, d: u32, spec: FieldSpec) -> Result<VeroneseFrame>
where
    I: IntoIterator<Item = Point>,
{
    let basis = Monomial::up_to_degree(n, d);
    let needed = basis.len();
    let mut tracker = if spec.is_rational() {
        Tracker::Rational { filter: ModRankFilter::new(needed), exact: false }
    } else {
        Tracker::Field(RankExtender::new(needed))
    };
    let mut kept = Vec::with_capacity(needed);
    let mut rows: Matrix = Vec::with_capacity(needed);
    for p in stream {
        check_point(&p, n, spec)?;
        let row: Vec<FieldElement> = basis.iter().map(|m| monomial_value(m, &p, spec)).collect();
        if tracker.accepts(&rows, &row) {
            kept.push(p);
            rows.push(row);
            if kept.len() == needed {
                let inverse = invert(&rows, spec)?;
                return Ok(VeroneseFrame { n, d, spec, basis, points: kept, matrix: rows, inverse });
            }
        }
    }
    Err(Error::StreamExhausted { rank: rows.len(), needed })
}

enum Tracker {
    Field(RankExtender),
    /// Rank mod a large prime, with an exact integer check whenever the
    /// modular answer is "dependent". Once an exact check overrules the
    /// modular filter its echelon form is stale, so every later row is
    /// checked exactly.
    Rational { filter: ModRankFilter, exact: bool },
}

impl Tracker {
    fn accepts(&mut self, kept: &Matrix, row: &[FieldElement]) -> bool {
        match self {
            Tracker::Field(ext) => ext.try_insert(row),
            Tracker::Rational { filter, exact } => {
                if !*exact && filter.try_insert(row) == Some(true) {
                    return true;
                }
                let mut all = kept.clone();
                all.push(row.to_vec());
                let independent = match integer_rows(&all).and_then(|(ints, _)| integer_rank(ints)) {
                    Some(r) => r == all.len(),
                    None => crate::linalg::rank(&all) == all.len(),
                };
                if independent {
                    *exact = true;
                }
                independent
            }
        }
    }
}

/// The unique map of degree at most `d` sending `frame.points()[k]` to
/// `images[k]`, checked against every image before it is returned.
pub fn interpolate_map(frame: &VeroneseFrame, images: &[Point]) -> Result<PolyMap> {
    let big_n = frame.basis.len();
    if images.len() != big_n {
        return Err(Error::DimensionMismatch { expected: big_n, found: images.len() });
    }
    for q in images {
        check_point(q, frame.n, frame.spec)?;
    }
    let spec = frame.spec;
    let mut comps = Vec::with_capacity(frame.n);
    for i in 0..frame.n {
        let mut terms = Vec::new();
        for (row, m) in frame.inverse.iter().zip(&frame.basis) {
            let mut c = spec.zero();
            for (a, q) in row.iter().zip(images) {
                if !a.is_zero() && !q[i].is_zero() {
                    c = c.add(&a.mul(&q[i]));
                }
            }
            if !c.is_zero() {
                terms.push((m.clone(), c));
            }
        }
        comps.push(Polynomial::from_terms(frame.n, spec, terms));
    }
    let g = PolyMap::new(comps)?;
    for (p, q) in frame.points.iter().zip(images) {
        if g.evaluate(p)? != *q {
            return Err(Error::SingularFrame);
        }
    }
    Ok(g)
}

/// A nonzero polynomial of degree at most `d` vanishing on every given
/// point, when one exists (always when there are fewer than `N` points).
///
/// Adding it to any component of a map leaves the values on the points
/// unchanged, so fewer than `N` points never pin down a map.
pub fn vanishing_polynomial(points: &[Point], n: usize, d: u32, spec: FieldSpec) -> Result<Option<Polynomial<FieldElement>>> {
    let basis = Monomial::up_to_degree(n, d);
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        check_point(p, n, spec)?;
        rows.push(basis.iter().map(|m| monomial_value(m, p, spec)).collect());
    }
    let kernel = nullspace(&rows, basis.len(), spec);
    Ok(kernel.into_iter().next().map(|v| {
        Polynomial::from_terms(n, spec, basis.into_iter().zip(v).filter(|(_, c)| !c.is_zero()))
    }))
}

/// First point of `stream` at which none of `polys` vanishes.
pub fn first_point_avoiding<I>(polys: &[Polynomial<FieldElement>], stream: I) -> Option<Point>
where
    I: IntoIterator<Item = Point>,
{
    stream.into_iter().find(|p| polys.iter().all(|h| !h.evaluate(p).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn r(n: i64) -> FieldElement {
        FieldElement::rational(n, 1)
    }

    fn line(vals: &[i64]) -> Vec<Point> {
        vals.iter().map(|&v| vec![r(v)]).collect()
    }

    #[test]
    fn vectors() {
        assert_eq!(veronese_vector(&[r(2), r(3)], 2).unwrap(), [1, 2, 3, 4, 6, 9].map(r));
        assert_eq!(veronese_vector(&[r(0), r(0)], 2).unwrap(), [1, 0, 0, 0, 0, 0].map(r));
        let t = FieldElement::rational(1, 2);
        assert_eq!(
            veronese_vector(&[t], 3).unwrap(),
            [(1, 1), (1, 2), (1, 4), (1, 8)].map(|(a, b)| FieldElement::rational(a, b))
        );
        assert_eq!(basis_size(2, 2), 6);
        assert_eq!(basis_size(3, 4), 35);
    }

    #[test]
    fn greedy_frames() {
        let fr = find_general_position(line(&[0, 1, 2, 3]), 1, 1, q()).unwrap();
        assert_eq!(fr.points(), line(&[0, 1]).as_slice());
        assert_eq!(fr.matrix(), &vec![vec![r(1), r(0)], vec![r(1), r(1)]]);
        let fr = find_general_position(line(&[0, 1, 1, 2]), 1, 2, q()).unwrap();
        assert_eq!(fr.points(), line(&[0, 1, 2]).as_slice());
        assert_eq!(fr.determinant(), r(2));
        let grid: Vec<Point> = [0, 1, -1]
            .iter()
            .flat_map(|&a| [0, 1, -1].iter().map(move |&b| vec![r(a), r(b)]))
            .collect();
        assert_eq!(find_general_position(grid, 2, 2, q()).unwrap().points().len(), 6);
    }

    #[test]
    fn exhausted_stream() {
        assert_eq!(
            find_general_position(line(&[0, 1]), 1, 2, q()),
            Err(Error::StreamExhausted { rank: 2, needed: 3 })
        );
    }

    #[test]
    fn interpolation() {
        let fr = find_general_position(line(&[0, 1, 2]), 1, 2, q()).unwrap();
        let g = interpolate_map(&fr, &line(&[0, 1, 4])).unwrap();
        assert_eq!(g.to_text(), "(x^2)");
        let id = interpolate_map(&fr, fr.points()).unwrap();
        assert_eq!(id, PolyMap::identity(1, q()));
    }

    #[test]
    fn underdetermined_points_admit_a_kernel() {
        let pts = line(&[0, 1]);
        let h = vanishing_polynomial(&pts, 1, 2, q()).unwrap().unwrap();
        assert!(pts.iter().all(|p| h.evaluate(p).is_zero()));
        assert!(vanishing_polynomial(&line(&[0, 1, 2]), 1, 2, q()).unwrap().is_none());
    }

    #[test]
    fn avoids_hyperplanes() {
        let x = Polynomial::var(2, q(), 0);
        let y = Polynomial::var(2, q(), 1);
        let hs = [x.clone(), y.clone(), x.sub(&y)];
        let grid = [0, 1, 2].iter().flat_map(|&a| [0, 1, 2].iter().map(move |&b| vec![r(a), r(b)]));
        assert_eq!(first_point_avoiding(&hs, grid), Some(vec![r(1), r(2)]));
    }
}
