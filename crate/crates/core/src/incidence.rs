//! Exact incidence counting and incidence-bound reports.
//!
//! The incidence count I(P, L) is the number of pairs (p, l) with p ∈ l,
//! decided exactly. Reports compare the count against the classical
//! point–line incidence bound C·(|P|^{2/3}|L|^{2/3} + |P| + |L|), and the
//! rich-points count against c₀·(L²k⁻³ + Lk⁻¹). Spatial inputs go through
//! a certified generic projection first, which preserves the exact count.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::geom::{line_intersection, IntersectionKind, Line3, LineId, Point3};
use crate::numeric::{pow_two_thirds, ratio_to_f64};
use crate::projection::{
    project_generic, PlanarLine, PlanarPoint, ProjectionCertificate, ProjectionError,
};

/// Constant wired into the incidence bound.
pub const INCIDENCE_BOUND_CONST: f64 = 2.5;

/// Constant wired into the rich-points bound.
pub const RICH_POINTS_CONST: f64 = 10.0;

/// Exact incidence count for spatial points and lines.
pub fn count_incidences(points: &[Point3], lines: &[Line3]) -> u64 {
    let mut count = 0;
    for p in points {
        for l in lines {
            if l.contains(p) {
                count += 1;
            }
        }
    }
    count
}

/// Exact incidence count for planar points and lines.
pub fn count_incidences_planar(points: &[PlanarPoint], lines: &[PlanarLine]) -> u64 {
    let mut count = 0;
    for p in points {
        for l in lines {
            if l.contains(p) {
                count += 1;
            }
        }
    }
    count
}

/// Incidence count compared against the point–line incidence bound.
#[derive(Clone, Debug)]
pub struct IncidenceReport {
    pub point_count: u64,
    pub line_count: u64,
    /// Exact incidence count.
    pub incidences: u64,
    /// C·(P^{2/3}·L^{2/3} + P + L), relative error < 1e-12.
    pub bound: f64,
    /// incidences / bound.
    pub ratio: f64,
    /// Present when the inputs were spatial and projected first.
    pub certificate: Option<ProjectionCertificate>,
}

fn incidence_bound(p: u64, l: u64) -> BigRational {
    let cross = pow_two_thirds(p) * pow_two_thirds(l);
    let linear = BigRational::from_integer((p + l).into());
    let c = BigRational::new(25.into(), 10.into());
    c * (cross + linear)
}

/// Incidence report for planar data.
pub fn st_report_planar(points: &[PlanarPoint], lines: &[PlanarLine]) -> IncidenceReport {
    let incidences = count_incidences_planar(points, lines);
    finish_report(points.len() as u64, lines.len() as u64, incidences, None)
}

/// Incidence report for spatial data: projects generically (seeded), then
/// counts in the plane. The projection preserves the exact count, and the
/// certificate is included in the report.
pub fn st_report_spatial(
    points: &[Point3],
    lines: &[Line3],
    seed: u64,
) -> Result<IncidenceReport, ProjectionError> {
    let (pp, pl, certificate) = project_generic(points, lines, seed)?;
    let incidences = count_incidences_planar(&pp, &pl);
    debug_assert_eq!(incidences, count_incidences(points, lines));
    Ok(finish_report(
        points.len() as u64,
        lines.len() as u64,
        incidences,
        Some(certificate),
    ))
}

fn finish_report(
    point_count: u64,
    line_count: u64,
    incidences: u64,
    certificate: Option<ProjectionCertificate>,
) -> IncidenceReport {
    let bound = incidence_bound(point_count, line_count);
    let ratio = if point_count == 0 && line_count == 0 {
        0.0
    } else {
        ratio_to_f64(&(BigRational::from_integer(incidences.into()) / &bound))
    };
    IncidenceReport {
        point_count,
        line_count,
        incidences,
        bound: ratio_to_f64(&bound),
        ratio,
        certificate,
    }
}

/// Count of k-rich points of a line configuration with its bound terms.
#[derive(Clone, Debug)]
pub struct RichPointsReport {
    pub k: u64,
    pub line_count: u64,
    /// Number of points lying on at least k of the lines.
    pub rich_count: u64,
    /// L²/k³.
    pub term_quadratic: f64,
    /// L/k.
    pub term_linear: f64,
    /// c₀·(L²/k³ + L/k).
    pub bound: f64,
    /// rich_count / bound.
    pub ratio: f64,
}

/// All points lying on at least two lines, with the ids of every line
/// through each (sorted). Candidates come from pairwise intersections, so
/// the enumeration is exhaustive.
pub fn multi_line_points(lines: &[Line3]) -> BTreeMap<Point3, Vec<LineId>> {
    let mut through: BTreeMap<Point3, Vec<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let IntersectionKind::Point(p) = line_intersection(&lines[i], &lines[j]) {
                let entry = through.entry(p).or_default();
                for idx in [i, j] {
                    if !entry.contains(&idx) {
                        entry.push(idx);
                    }
                }
            }
        }
    }
    through
        .into_iter()
        .map(|(p, mut idxs)| {
            idxs.sort_unstable();
            (p, idxs.into_iter().map(|i| lines[i].id).collect())
        })
        .collect()
}

/// Counts points on ≥ k lines and quotes the bound terms.
///
/// Requires k ≥ 2: a 1-rich point is any point of any line.
pub fn rich_points_report(lines: &[Line3], k: u64) -> RichPointsReport {
    assert!(k >= 2, "rich points need k >= 2");
    let rich_count = multi_line_points(lines)
        .values()
        .filter(|ids| ids.len() as u64 >= k)
        .count() as u64;
    let l = lines.len() as u64;
    let term_quadratic = BigRational::new((l * l).into(), (k * k * k).into());
    let term_linear = BigRational::new(l.into(), k.into());
    let c0 = BigRational::from_integer(10.into());
    let bound = c0 * (&term_quadratic + &term_linear);
    let ratio = if bound.numer().bits() == 0 {
        0.0
    } else {
        ratio_to_f64(&(BigRational::from_integer(rich_count.into()) / &bound))
    };
    RichPointsReport {
        k,
        line_count: l,
        rich_count,
        term_quadratic: ratio_to_f64(&term_quadratic),
        term_linear: ratio_to_f64(&term_linear),
        bound: ratio_to_f64(&bound),
        ratio,
    }
}
