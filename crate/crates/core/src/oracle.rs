//! Independent reference implementations for cross-checking.
//!
//! Everything here re-derives results through a deliberately different
//! route from the main engine: intersections by 2×2 Cramer elimination on
//! coordinate pairs instead of cross products, membership by parameter
//! solving instead of the cross-product test, determinants by Laplace
//! expansion over rationals instead of integer cofactors. The equivalence
//! suites compare the two paths on seeded configurations, and the CLI's
//! `--verify` flag replays a run through this module before trusting it.

use std::collections::BTreeSet;

use crate::geom::{Line3, Point3};
use crate::joints::JointRecord;
use crate::scalar::ExactScalar;

/// Direction of a line as a plain rational vector.
fn dir_scalars(l: &Line3) -> [ExactScalar; 3] {
    let c = l.dir().components();
    [
        ExactScalar::from_bigint(c[0].clone()),
        ExactScalar::from_bigint(c[1].clone()),
        ExactScalar::from_bigint(c[2].clone()),
    ]
}

/// 3×3 determinant by Laplace expansion along the first row.
pub fn det3_naive(
    a: &[ExactScalar; 3],
    b: &[ExactScalar; 3],
    c: &[ExactScalar; 3],
) -> ExactScalar {
    let m0 = &(&b[1] * &c[2]) - &(&b[2] * &c[1]);
    let m1 = &(&b[0] * &c[2]) - &(&b[2] * &c[0]);
    let m2 = &(&b[0] * &c[1]) - &(&b[1] * &c[0]);
    &(&a[0] * &m0) - &(&a[1] * &m1) + &(&a[2] * &m2)
}

/// Exact membership via parameter solving: find t from the first usable
/// coordinate, then check all three.
pub fn contains_naive(l: &Line3, x: &Point3) -> bool {
    let p = l.base().coords();
    let d = dir_scalars(l);
    let xc = x.coords();
    let Some(i) = (0..3).find(|&i| !d[i].is_zero()) else {
        return false;
    };
    let t = &(xc[i] - p[i]) / &d[i];
    (0..3).all(|j| &(p[j] + &(&t * &d[j])) == xc[j])
}

/// The unique common point of two lines, if there is exactly one, found by
/// solving the 2×2 linear system over a coordinate pair and verifying the
/// third coordinate.
pub fn unique_intersection_naive(l1: &Line3, l2: &Line3) -> Option<Point3> {
    let p = l1.base().coords();
    let q = l2.base().coords();
    let d = dir_scalars(l1);
    let e = dir_scalars(l2);
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        // [ d_i  -e_i ] [t]   [ q_i - p_i ]
        // [ d_j  -e_j ] [s] = [ q_j - p_j ]
        let det = &(&d[j] * &e[i]) - &(&d[i] * &e[j]);
        if det.is_zero() {
            continue;
        }
        let ri = q[i] - p[i];
        let rj = q[j] - p[j];
        let t = &(&(&rj * &e[i]) - &(&ri * &e[j])) / &det;
        let s = &(&(&d[i] * &rj) - &(&d[j] * &ri)) / &det;
        // Verify the remaining coordinate.
        let k = 3 - i - j;
        let lhs = p[k] + &(&t * &d[k]);
        let rhs = q[k] + &(&s * &e[k]);
        if lhs != rhs {
            return None; // skew
        }
        let at = |m: usize| p[m] + &(&t * &d[m]);
        return Some(Point3::new(at(0), at(1), at(2)));
    }
    None // parallel or identical: no unique point
}

/// Joint detection from first principles: candidate points from all pairs,
/// membership by parameter solving, multiplicity by Laplace determinants.
/// Records are sorted by location, ids within a record sorted.
pub fn detect_joints_naive(lines: &[Line3]) -> Vec<JointRecord> {
    let mut candidates: BTreeSet<Point3> = BTreeSet::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let Some(p) = unique_intersection_naive(&lines[i], &lines[j]) {
                candidates.insert(p);
            }
        }
    }
    let mut joints = Vec::new();
    for location in candidates {
        let through: Vec<usize> = (0..lines.len())
            .filter(|&i| contains_naive(&lines[i], &location))
            .collect();
        if through.len() < 3 {
            continue;
        }
        let dirs: Vec<[ExactScalar; 3]> = through.iter().map(|&i| dir_scalars(&lines[i])).collect();
        let mut multiplicity = 0u64;
        for a in 0..dirs.len() {
            for b in (a + 1)..dirs.len() {
                for c in (b + 1)..dirs.len() {
                    if !det3_naive(&dirs[a], &dirs[b], &dirs[c]).is_zero() {
                        multiplicity += 1;
                    }
                }
            }
        }
        if multiplicity == 0 {
            continue;
        }
        let mut incident_lines: Vec<_> = through.iter().map(|&i| lines[i].id).collect();
        incident_lines.sort_unstable();
        joints.push(JointRecord {
            k_count: incident_lines.len(),
            incident_lines,
            location,
            multiplicity,
        });
    }
    joints
}

/// Σ √N in plain floating point, an independent check of the
/// high-precision path at coarse tolerance.
pub fn weighted_sum_naive(joints: &[JointRecord]) -> f64 {
    joints.iter().map(|j| (j.multiplicity as f64).sqrt()).sum()
}
