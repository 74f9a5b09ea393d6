//! Lines against polynomial zero sets: containment, crossing counts,
//! critical-line censuses, and lines shared by two surfaces. Everything is
//! decided by exact restriction to the line — a line lies in a zero set iff
//! its restriction is the identically-zero univariate polynomial.

use crate::geom::Line3;
use crate::poly::uni::rational_roots;
use crate::poly::{MultiPoly, PolyError};

/// Errors from surface/line queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    /// A line whose restriction vanishes identically was passed to a
    /// crossing count; callers filter those with [`lines_in_zero_set`].
    #[error("line at index {index} lies inside the zero set")]
    LineInZeroSet { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The lines whose restriction to `p` is identically zero — exactly the
/// lines contained in the zero set of `p`.
pub fn lines_in_zero_set(p: &MultiPoly, lines: &[Line3]) -> Vec<Line3> {
    assert!(!p.is_zero(), "zero set of the zero polynomial is everything");
    lines
        .iter()
        .filter(|l| p.restrict_to_line(l).is_zero())
        .cloned()
        .collect()
}

/// Crossing counts for one line against a surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCrossings {
    pub line_index: usize,
    /// Distinct rational parameters where the restriction vanishes.
    pub distinct_rational_roots: usize,
    /// True when the restriction may have further irrational real roots.
    pub nonrational_roots_possible: bool,
}

/// Crossing counts for a family of lines, each not inside the zero set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLineIncidences {
    pub count: usize,
    pub per_line: Vec<LineCrossings>,
}

/// Counts, per line, the distinct rational parameters at which the line
/// meets the zero set of `p`. Each line's count is at most deg p (the
/// restriction has degree ≤ deg p); irrational crossings are flagged, not
/// counted.
pub fn surface_line_incidences(
    p: &MultiPoly,
    lines: &[Line3],
) -> Result<SurfaceLineIncidences, SurfaceError> {
    assert!(!p.is_zero(), "crossings with the zero polynomial");
    let degree = p.degree().expect("nonzero polynomial") as usize;
    let mut per_line = Vec::with_capacity(lines.len());
    for (index, line) in lines.iter().enumerate() {
        let restriction = p.restrict_to_line(line);
        if restriction.is_zero() {
            return Err(SurfaceError::LineInZeroSet { index });
        }
        let roots = rational_roots(&restriction);
        let distinct = roots.roots.len();
        assert!(
            distinct <= degree,
            "restriction cannot have more roots than its degree"
        );
        per_line.push(LineCrossings {
            line_index: index,
            distinct_rational_roots: distinct,
            nonrational_roots_possible: roots.nonrational_roots_possible,
        });
    }
    let count = per_line.iter().map(|c| c.distinct_rational_roots).sum();
    Ok(SurfaceLineIncidences { count, per_line })
}

/// Result of a critical-line census over candidate lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalLineCensus {
    /// Candidates on which the square-free part and all three of its
    /// partial derivatives vanish identically.
    pub critical: Vec<Line3>,
    /// (deg p)², the cap on critical lines of any surface.
    pub bound: u64,
    pub within_bound: bool,
}

/// Finds, among the candidates, the lines every point of which is a
/// critical point of the zero set: the square-free part of `p` and its
/// entire gradient restrict to zero along the line.
///
/// Needs the square-free part, so `p` must carry a factored form or be
/// certifiably square-free (see [`MultiPoly::square_free_part`]).
pub fn critical_line_census(
    p: &MultiPoly,
    candidates: &[Line3],
) -> Result<CriticalLineCensus, SurfaceError> {
    assert!(!p.is_zero(), "census over the zero polynomial");
    let p_sf = p.square_free_part()?;
    let gradient = p_sf.gradient();
    let critical: Vec<Line3> = candidates
        .iter()
        .filter(|line| {
            p_sf.restrict_to_line(line).is_zero()
                && gradient
                    .iter()
                    .all(|partial| partial.restrict_to_line(line).is_zero())
        })
        .cloned()
        .collect();
    let degree = p.degree().expect("nonzero polynomial") as u64;
    let bound = degree * degree;
    let within_bound = critical.len() as u64 <= bound;
    Ok(CriticalLineCensus { critical, bound, within_bound })
}

/// Lines lying in both zero sets, with the Bézout-style cap deg p₁·deg p₂
/// that applies when the polynomials share no factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonZeroLines {
    pub lines: Vec<Line3>,
    pub bound: u64,
    /// Checked only when the caller asserts coprimality — the cap says
    /// nothing about polynomials with a shared factor.
    pub within_bound: Option<bool>,
}

/// Finds the candidates contained in the zero sets of both polynomials.
/// Multivariate coprimality testing is out of scope, so the caller states
/// it; `within_bound` is reported only under that assertion.
pub fn common_zero_lines(
    p1: &MultiPoly,
    p2: &MultiPoly,
    candidates: &[Line3],
    coprime_asserted: bool,
) -> CommonZeroLines {
    assert!(!p1.is_zero() && !p2.is_zero(), "zero polynomial has no line census");
    let lines: Vec<Line3> = candidates
        .iter()
        .filter(|l| {
            p1.restrict_to_line(l).is_zero() && p2.restrict_to_line(l).is_zero()
        })
        .cloned()
        .collect();
    let bound = p1.degree().unwrap() as u64 * p2.degree().unwrap() as u64;
    let within_bound = coprime_asserted.then(|| lines.len() as u64 <= bound);
    CommonZeroLines { lines, bound, within_bound }
}
