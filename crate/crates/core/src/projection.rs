//! Generic projection of spatial configurations to the plane.
//!
//! Plane-only theorems (incidence bounds in particular) are applied to
//! spatial data by projecting along a direction that is *generic* for the
//! configuration: distinct points stay distinct, distinct lines stay
//! distinct, no line is parallel to the projection direction, and no new
//! point–line incidence appears. Directions are drawn from a seeded RNG and
//! every candidate is checked exactly; the accepted direction and the
//! number of rejected draws are returned as a certificate, so a run can be
//! replayed and audited.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{Direction3, GeomError, Line3, LineId, Point3};
use crate::incidence::{count_incidences, count_incidences_planar};
use crate::scalar::ExactScalar;

/// Default cap on direction draws before giving up.
pub const DEFAULT_MAX_DRAWS: u32 = 64;

/// Coordinate range for candidate projection directions.
const DRAW_BOUND: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectionError {
    /// No admissible direction found within the draw budget.
    #[error("no generic projection direction found in {attempts} draws")]
    GenericityExhausted { attempts: u32 },
}

/// A point of R² with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarPoint {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl PlanarPoint {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        PlanarPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlanarPoint::new(x.into(), y.into())
    }
}

impl fmt::Display for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A line of R² in canonical implicit form `a·x + b·y = c` with
/// `gcd(a,b,c) = 1` and the first nonzero of `(a, b)` positive.
///
/// Equality and hashing use only `(a, b, c)`; the id labels the spatial
/// line the planar line came from (or an index for native planar data).
#[derive(Clone)]
pub struct PlanarLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    pub id: LineId,
}

impl PlanarLine {
    pub fn from_coeffs(a: BigInt, b: BigInt, c: BigInt, id: LineId) -> Result<Self, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let g = a.gcd(&b).gcd(&c);
        let mut a = &a / &g;
        let mut b = &b / &g;
        let mut c = &c / &g;
        let lead_negative = if a.is_zero() {
            b.is_negative()
        } else {
            a.is_negative()
        };
        if lead_negative {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(PlanarLine { a, b, c, id })
    }

    /// Line through `p` with direction `d` (normal is `d` rotated 90°).
    pub fn from_point_dir(
        p: &PlanarPoint,
        d: &[ExactScalar; 2],
        id: LineId,
    ) -> Result<Self, GeomError> {
        let normal = [-&d[1], d[0].clone()];
        let rhs = &normal[0] * &p.x + &normal[1] * &p.y;
        // Clear denominators jointly, then canonicalize.
        let mut den = BigInt::from(1);
        for s in [&normal[0], &normal[1], &rhs] {
            den = den.lcm(s.denom());
        }
        let scale = |s: &ExactScalar| s.numer() * (&den / s.denom());
        Self::from_coeffs(scale(&normal[0]), scale(&normal[1]), scale(&rhs), id)
    }

    pub fn coeffs(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// Exact incidence test `a·x + b·y = c`.
    pub fn contains(&self, p: &PlanarPoint) -> bool {
        let lhs = ExactScalar::from_bigint(self.a.clone()) * &p.x
            + ExactScalar::from_bigint(self.b.clone()) * &p.y;
        lhs == ExactScalar::from_bigint(self.c.clone())
    }

    fn key(&self) -> (BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }
}

impl PartialEq for PlanarLine {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl Eq for PlanarLine {}

impl std::hash::Hash for PlanarLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.c.hash(state);
    }
}

impl fmt::Display for PlanarLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}·x + {}·y = {}", self.id, self.a, self.b, self.c)
    }
}

impl fmt::Debug for PlanarLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Audit record of an accepted projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCertificate {
    /// The direction that passed every genericity check.
    pub direction: Direction3,
    /// How many seeded draws were rejected before acceptance.
    pub rejections: u32,
}

/// The linear map R³ → R² with kernel `v`: `x ↦ (a·x, b·x)` for an integer
/// basis `a, b` of the plane orthogonal to `v`.
struct Projector {
    a: [BigInt; 3],
    b: [BigInt; 3],
}

impl Projector {
    fn new(v: &Direction3) -> Self {
        // v × e_i spans v-perp as i ranges over a basis; pick the first two
        // independent (nonzero) ones, deterministically.
        let mut rows: Vec<[BigInt; 3]> = Vec::new();
        for i in 0..3 {
            let mut e = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
            e[i] = BigInt::from(1);
            let d = v.components();
            let r = [
                &d[1] * &e[2] - &d[2] * &e[1],
                &d[2] * &e[0] - &d[0] * &e[2],
                &d[0] * &e[1] - &d[1] * &e[0],
            ];
            if r.iter().all(|x| x.is_zero()) {
                continue;
            }
            if let Some(first) = rows.first() {
                let cr = [
                    &first[1] * &r[2] - &first[2] * &r[1],
                    &first[2] * &r[0] - &first[0] * &r[2],
                    &first[0] * &r[1] - &first[1] * &r[0],
                ];
                if cr.iter().all(|x| x.is_zero()) {
                    continue;
                }
            }
            rows.push(r);
            if rows.len() == 2 {
                break;
            }
        }
        let b = rows.pop().expect("two independent rows");
        let a = rows.pop().expect("two independent rows");
        Projector { a, b }
    }

    fn point(&self, p: &Point3) -> PlanarPoint {
        let dot = |row: &[BigInt; 3]| {
            ExactScalar::from_bigint(row[0].clone()) * &p.x
                + ExactScalar::from_bigint(row[1].clone()) * &p.y
                + ExactScalar::from_bigint(row[2].clone()) * &p.z
        };
        PlanarPoint::new(dot(&self.a), dot(&self.b))
    }

    /// Image of a direction; `None` when it is parallel to the kernel.
    fn dir(&self, d: &Direction3) -> Option<[ExactScalar; 2]> {
        let c = d.components();
        let dot = |row: &[BigInt; 3]| {
            ExactScalar::from_bigint(&row[0] * &c[0] + &row[1] * &c[1] + &row[2] * &c[2])
        };
        let u = [dot(&self.a), dot(&self.b)];
        if u[0].is_zero() && u[1].is_zero() {
            None
        } else {
            Some(u)
        }
    }

    fn line(&self, l: &Line3) -> Option<PlanarLine> {
        let d = self.dir(l.dir())?;
        let p = self.point(l.base());
        Some(PlanarLine::from_point_dir(&p, &d, l.id).expect("nonzero direction"))
    }
}

fn project_with(
    points: &[Point3],
    lines: &[Line3],
    v: &Direction3,
) -> Option<(Vec<PlanarPoint>, Vec<PlanarLine>)> {
    let proj = Projector::new(v);
    let planar_points: Vec<PlanarPoint> = points.iter().map(|p| proj.point(p)).collect();
    let mut planar_lines = Vec::with_capacity(lines.len());
    for l in lines {
        planar_lines.push(proj.line(l)?);
    }
    // Distinctness must be preserved exactly.
    let distinct3: HashSet<&Point3> = points.iter().collect();
    let distinct2: HashSet<&PlanarPoint> = planar_points.iter().collect();
    if distinct2.len() != distinct3.len() {
        return None;
    }
    let distinct_l3: HashSet<&Line3> = lines.iter().collect();
    let distinct_l2: HashSet<(BigInt, BigInt, BigInt)> =
        planar_lines.iter().map(|l| l.key()).collect();
    if distinct_l2.len() != distinct_l3.len() {
        return None;
    }
    // A linear projection never destroys an incidence, so equality of the
    // exact counts says no incidence was created either.
    if count_incidences(points, lines) != count_incidences_planar(&planar_points, &planar_lines) {
        return None;
    }
    Some((planar_points, planar_lines))
}

/// Is `v` a generic projection direction for this configuration?
pub fn projection_admissible(points: &[Point3], lines: &[Line3], v: &Direction3) -> bool {
    project_with(points, lines, v).is_some()
}

/// Projects along a seeded generic direction, trying up to
/// [`DEFAULT_MAX_DRAWS`] candidates.
pub fn project_generic(
    points: &[Point3],
    lines: &[Line3],
    seed: u64,
) -> Result<(Vec<PlanarPoint>, Vec<PlanarLine>, ProjectionCertificate), ProjectionError> {
    project_generic_with(points, lines, seed, DEFAULT_MAX_DRAWS)
}

/// Projects along a seeded generic direction with an explicit draw budget.
pub fn project_generic_with(
    points: &[Point3],
    lines: &[Line3],
    seed: u64,
    max_draws: u32,
) -> Result<(Vec<PlanarPoint>, Vec<PlanarLine>, ProjectionCertificate), ProjectionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = 0;
    for _ in 0..max_draws {
        let v = loop {
            let x = rng.gen_range(-DRAW_BOUND..=DRAW_BOUND);
            let y = rng.gen_range(-DRAW_BOUND..=DRAW_BOUND);
            let z = rng.gen_range(-DRAW_BOUND..=DRAW_BOUND);
            if let Ok(v) = Direction3::from_ints(x, y, z) {
                break v;
            }
        };
        if let Some((pp, pl)) = project_with(points, lines, &v) {
            let certificate = ProjectionCertificate {
                direction: v,
                rejections,
            };
            return Ok((pp, pl, certificate));
        }
        rejections += 1;
    }
    Err(ProjectionError::GenericityExhausted {
        attempts: rejections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 12 axis-parallel edges-through-vertices lines of the 2×2×2 grid
    /// and its 8 vertices: every vertex lies on 3 lines.
    fn small_grid() -> (Vec<Point3>, Vec<Line3>) {
        let mut points = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    points.push(Point3::from_ints(x, y, z));
                }
            }
        }
        let mut lines = Vec::new();
        let mut id = 0;
        for a in 0..2 {
            for b in 0..2 {
                lines.push(Line3::from_ints((0, a, b), (1, 0, 0), id).unwrap());
                lines.push(Line3::from_ints((a, 0, b), (0, 1, 0), id + 1).unwrap());
                lines.push(Line3::from_ints((a, b, 0), (0, 0, 1), id + 2).unwrap());
                id += 3;
            }
        }
        (points, lines)
    }

    #[test]
    fn planar_line_canonical_form() {
        let l = PlanarLine::from_point_dir(
            &PlanarPoint::from_ints(0, 0),
            &[ExactScalar::from(1), ExactScalar::from(1)],
            LineId(0),
        )
        .unwrap();
        let (a, b, c) = l.coeffs();
        assert_eq!(
            (a.clone(), b.clone(), c.clone()),
            (BigInt::from(1), BigInt::from(-1), BigInt::from(0))
        );
        assert!(l.contains(&PlanarPoint::from_ints(2, 2)));
        assert!(!l.contains(&PlanarPoint::from_ints(2, 3)));

        // Same geometric line from a different description.
        let m = PlanarLine::from_point_dir(
            &PlanarPoint::from_ints(5, 5),
            &[ExactScalar::from(-2), ExactScalar::from(-2)],
            LineId(1),
        )
        .unwrap();
        assert_eq!(l, m);
    }

    #[test]
    fn rejects_point_collapsing_direction() {
        let points = vec![Point3::from_ints(0, 0, 0), Point3::from_ints(0, 0, 5)];
        let v = Direction3::from_ints(0, 0, 1).unwrap();
        assert!(!projection_admissible(&points, &[], &v));
        let v = Direction3::from_ints(1, 0, 0).unwrap();
        assert!(projection_admissible(&points, &[], &v));
    }

    #[test]
    fn rejects_direction_parallel_to_a_line() {
        let lines = vec![Line3::from_ints((0, 0, 0), (1, 0, 0), 0).unwrap()];
        let v = Direction3::from_ints(1, 0, 0).unwrap();
        assert!(!projection_admissible(&[], &lines, &v));
    }

    #[test]
    fn rejects_direction_creating_an_incidence() {
        // (0,0,1) is not on the x-axis, but projecting along z drops it
        // onto the x-axis image.
        let points = vec![Point3::from_ints(0, 0, 1)];
        let lines = vec![Line3::from_ints((0, 0, 0), (1, 0, 0), 0).unwrap()];
        let v = Direction3::from_ints(0, 0, 1).unwrap();
        assert!(!projection_admissible(&points, &lines, &v));
        let v = Direction3::from_ints(0, 1, 3).unwrap();
        assert!(projection_admissible(&points, &lines, &v));
    }

    #[test]
    fn rejects_line_collapsing_direction() {
        // Two parallel lines merge when projecting along a direction inside
        // their common plane.
        let lines = vec![
            Line3::from_ints((0, 0, 0), (1, 0, 0), 0).unwrap(),
            Line3::from_ints((0, 1, 0), (1, 0, 0), 1).unwrap(),
        ];
        let v = Direction3::from_ints(0, 1, 0).unwrap();
        assert!(!projection_admissible(&[], &lines, &v));
    }

    #[test]
    fn grid_projection_preserves_counts() {
        let (points, lines) = small_grid();
        assert_eq!(count_incidences(&points, &lines), 24);
        let (pp, pl, cert) = project_generic(&points, &lines, 7).unwrap();
        assert_eq!(pp.len(), 8);
        assert_eq!(pl.len(), 12);
        assert_eq!(count_incidences_planar(&pp, &pl), 24);
        // The certificate direction must reproduce the projection.
        assert!(projection_admissible(&points, &lines, &cert.direction));
    }

    #[test]
    fn determinism_per_seed() {
        let (points, lines) = small_grid();
        let (_, _, c1) = project_generic(&points, &lines, 3).unwrap();
        let (_, _, c2) = project_generic(&points, &lines, 3).unwrap();
        assert_eq!(c1, c2);
    }
}
