//! Joint detection, multiplicities, and weighted-bound reports.
//!
//! A *joint* of a line configuration is a point lying on at least three
//! lines whose directions span R³. Its *multiplicity* N(x) is the number of
//! unordered triples of lines through x with linearly independent
//! directions — concurrent-but-coplanar bundles contribute nothing. The
//! detection pipeline is deliberately the transparent one: intersect all
//! pairs, group by exact location, test every triple. At desk scale this is
//! both the implementation and its own best explanation; an independent
//! re-derivation lives in [`crate::oracle`] for cross-checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::geom::{triple_spans, Direction3, GeomError, Line3, LineId, Point3};
use crate::incidence::multi_line_points;
use crate::numeric::{pow_three_halves, ratio_to_f64, sqrt_int};
use crate::scalar::ExactScalar;

/// Hard cap on the number of lines through a single candidate point; the
/// exhaustive triple loop is cubic, so beyond this the engine refuses
/// rather than silently grinding.
pub const MAX_LINES_THROUGH_POINT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JointsError {
    /// The operation needs at least one line.
    #[error("configuration has no lines")]
    EmptyConfig,
    /// More concurrent lines than the exhaustive triple loop accepts.
    #[error("{count} lines through one point exceeds cap {cap}")]
    ResourceLimit { count: usize, cap: usize },
    /// A checker was called on inputs that violate its hypothesis.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// A deduplicated, canonically represented set of lines.
///
/// Ids are assigned by first-occurrence order, so `LineId(i)` is the index
/// into [`LineConfig::lines`]. Geometric duplicates in the input are
/// collapsed and counted.
#[derive(Clone, Debug)]
pub struct LineConfig {
    lines: Vec<Line3>,
    provenance: String,
    duplicates_collapsed: usize,
}

impl LineConfig {
    /// Builds a config from canonical lines, deduplicating by geometry and
    /// reassigning sequential ids.
    pub fn new(input: Vec<Line3>, provenance: impl Into<String>) -> Self {
        let mut seen = BTreeSet::new();
        let mut lines = Vec::new();
        let mut duplicates = 0;
        for l in input {
            let key = (l.base().clone(), l.dir().clone());
            if seen.insert(key) {
                let id = LineId(lines.len() as u32);
                lines.push(l.with_id(id));
            } else {
                duplicates += 1;
            }
        }
        LineConfig {
            lines,
            provenance: provenance.into(),
            duplicates_collapsed: duplicates,
        }
    }

    /// Builds a config from raw (point, direction) descriptions.
    pub fn from_descriptions(
        descriptions: &[(Point3, [ExactScalar; 3])],
        provenance: impl Into<String>,
    ) -> Result<Self, GeomError> {
        let mut lines = Vec::with_capacity(descriptions.len());
        for (i, (p, d)) in descriptions.iter().enumerate() {
            lines.push(Line3::new(p, d, LineId(i as u32))?);
        }
        Ok(Self::new(lines, provenance))
    }

    pub fn lines(&self) -> &[Line3] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn duplicates_collapsed(&self) -> usize {
        self.duplicates_collapsed
    }

    pub fn line(&self, id: LineId) -> Option<&Line3> {
        self.lines.get(id.0 as usize)
    }

    /// Ids of all lines passing through `p` (exact membership scan).
    pub fn lines_through(&self, p: &Point3) -> Vec<LineId> {
        self.lines
            .iter()
            .filter(|l| l.contains(p))
            .map(|l| l.id)
            .collect()
    }
}

/// A detected joint: where it is, which lines meet there, how many, and the
/// number of spanning triples among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointRecord {
    pub location: Point3,
    /// Sorted ids of every configuration line through the location.
    pub incident_lines: Vec<LineId>,
    /// Number of lines through the location.
    pub k_count: usize,
    /// Number of unordered spanning triples through the location.
    pub multiplicity: u64,
}

fn ensure_cap(count: usize) -> Result<(), JointsError> {
    if count > MAX_LINES_THROUGH_POINT {
        Err(JointsError::ResourceLimit {
            count,
            cap: MAX_LINES_THROUGH_POINT,
        })
    } else {
        Ok(())
    }
}

/// Number of unordered triples of directions that span R³, by exhaustive
/// enumeration. Directions are deduplicated first (they are projective, so
/// repeats can never span anyway).
pub fn spanning_triples(dirs: &[&Direction3]) -> u64 {
    let distinct: Vec<&Direction3> = {
        let mut seen = BTreeSet::new();
        dirs.iter().filter(|d| seen.insert(**d)).copied().collect()
    };
    let n = distinct.len();
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if triple_spans(distinct[i], distinct[j], distinct[k]) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Multiplicity of a point with respect to a configuration: the number of
/// spanning triples among the lines through it. Zero means "not a joint".
pub fn multiplicity_at(config: &LineConfig, x: &Point3) -> Result<u64, JointsError> {
    let through = config.lines_through(x);
    ensure_cap(through.len())?;
    let dirs: Vec<&Direction3> = through
        .iter()
        .map(|id| config.line(*id).expect("id from scan").dir())
        .collect();
    Ok(spanning_triples(&dirs))
}

/// Detects every joint of the configuration.
///
/// Candidates are the pairwise intersection points; grouping them by exact
/// location recovers all lines through each candidate (any line through a
/// point shared with another line shows up in some pair). Points whose
/// incident lines are fewer than three, or all coplanar, are discarded.
/// Records are sorted by location.
pub fn detect_joints(config: &LineConfig) -> Result<Vec<JointRecord>, JointsError> {
    let mut joints = Vec::new();
    for (location, incident) in multi_line_points(config.lines()) {
        ensure_cap(incident.len())?;
        if incident.len() < 3 {
            continue;
        }
        let dirs: Vec<&Direction3> = incident
            .iter()
            .map(|id| config.line(*id).expect("id from scan").dir())
            .collect();
        let multiplicity = spanning_triples(&dirs);
        if multiplicity == 0 {
            continue;
        }
        joints.push(JointRecord {
            k_count: incident.len(),
            incident_lines: incident,
            location,
            multiplicity,
        });
    }
    Ok(joints)
}

/// Dyadic bucket key: a joint with multiplicity N and k lines through it
/// lands in (λ, μ) with 2^λ ≤ N < 2^{λ+1} and 2^μ ≤ k < 2^{μ+1}.
pub fn dyadic_key(record: &JointRecord) -> (u32, u32) {
    (record.multiplicity.ilog2(), (record.k_count as u64).ilog2())
}

/// Joints of one dyadic bucket.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DyadicBucket {
    pub count: u64,
    /// Indices into the joint list the stats were built from.
    pub joints: Vec<usize>,
}

/// Dyadic histogram of a joint list plus the weighted-sum accumulator.
#[derive(Clone, Debug)]
pub struct DyadicStats {
    pub buckets: BTreeMap<(u32, u32), DyadicBucket>,
    /// Σ √N(x) over all joints (relative error < 1e-12).
    pub weighted_sum: f64,
}

/// Buckets joints dyadically by (multiplicity, line count).
pub fn dyadic_stats(joints: &[JointRecord]) -> DyadicStats {
    let mut buckets: BTreeMap<(u32, u32), DyadicBucket> = BTreeMap::new();
    for (i, record) in joints.iter().enumerate() {
        let bucket = buckets.entry(dyadic_key(record)).or_default();
        bucket.count += 1;
        bucket.joints.push(i);
    }
    DyadicStats {
        buckets,
        weighted_sum: ratio_to_f64(&weighted_sum_exact(joints)),
    }
}

/// Σ √N(x) as a rational with relative error < 1e-15.
pub fn weighted_sum_exact(joints: &[JointRecord]) -> BigRational {
    weighted_sum_of(joints.iter().map(|j| j.multiplicity))
}

/// The weighted joints count compared against L^{3/2}.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub line_count: u64,
    pub joint_count: u64,
    /// Σ √N(x), relative error < 1e-12.
    pub weighted_sum: f64,
    /// L^{3/2}.
    pub rhs: f64,
    /// weighted_sum / rhs.
    pub ratio: f64,
}

/// Builds the weighted-bound report for a configuration's joints.
///
/// `joints` must be the records detected for `config` (callers typically
/// hold them already; recomputing here would hide the dependency).
pub fn bound_report(config: &LineConfig, joints: &[JointRecord]) -> Result<BoundReport, JointsError> {
    if config.is_empty() {
        return Err(JointsError::EmptyConfig);
    }
    let l = config.len() as u64;
    let ws = weighted_sum_exact(joints);
    let rhs = pow_three_halves(l);
    let ratio = ratio_to_f64(&(&ws / &rhs));
    Ok(BoundReport {
        line_count: l,
        joint_count: joints.len() as u64,
        weighted_sum: ratio_to_f64(&ws),
        rhs: ratio_to_f64(&rhs),
        ratio,
    })
}

/// One dyadic class (multiplicity in [n, 2n), line count in [k, 2k))
/// compared against its two bound terms.
#[derive(Clone, Debug)]
pub struct ClassBoundReport {
    pub n: u64,
    pub k: u64,
    /// |J_n^k|: joints in the class.
    pub class_size: u64,
    /// |J_n^k| · √n.
    pub lhs: f64,
    /// L^{3/2} / √k.
    pub term1: f64,
    /// (L/k) · √n.
    pub term2: f64,
}

/// Measures one dyadic class of joints against the two-term bound shape.
pub fn class_bound_report(
    config: &LineConfig,
    joints: &[JointRecord],
    n: u64,
    k: u64,
) -> ClassBoundReport {
    assert!(n >= 1, "class base multiplicity must be >= 1");
    assert!(k >= 3, "a joint lies on at least 3 lines");
    let class_size = joints
        .iter()
        .filter(|j| {
            j.multiplicity >= n
                && j.multiplicity < 2 * n
                && j.k_count as u64 >= k
                && (j.k_count as u64) < 2 * k
        })
        .count() as u64;
    let l = config.len() as u64;
    let sqrt_n = sqrt_int(n);
    let sqrt_k = sqrt_int(k);
    let lhs = BigRational::from_integer(class_size.into()) * &sqrt_n;
    let term1 = pow_three_halves(l) / &sqrt_k;
    let term2 = BigRational::new(l.into(), k.into()) * &sqrt_n;
    ClassBoundReport {
        n,
        k,
        class_size,
        lhs: ratio_to_f64(&lhs),
        term1: ratio_to_f64(&term1),
        term2: ratio_to_f64(&term2),
    }
}

/// The floor N/(1000·k²) that both line-count checks compare against.
pub fn multiplicity_line_floor(n: u64, k: u64) -> ExactScalar {
    ExactScalar::from(BigRational::new(
        BigInt::from(n),
        BigInt::from(1000u64) * BigInt::from(k) * BigInt::from(k),
    ))
}

/// Outcome of [`check_residual_line_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualLineCheck {
    /// Lines outside the subset through the joint.
    pub lhs_lines: u64,
    /// N/(1000·k²), exact.
    pub rhs: ExactScalar,
    pub holds: bool,
}

/// Outcome of [`check_off_plane_line_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffPlaneLineCheck {
    /// Lines through the joint not contained in the plane.
    pub off_plane_lines: u64,
    /// N/(1000·k²), exact.
    pub rhs: ExactScalar,
    pub holds: bool,
}

struct JointContext {
    through: Vec<LineId>,
    multiplicity: u64,
}

/// Shared hypothesis verification: x is a joint of the configuration and
/// lies in at most 2k of its lines.
fn joint_in_at_most_2k_lines(
    config: &LineConfig,
    x: &Point3,
    k: u64,
) -> Result<JointContext, JointsError> {
    if k == 0 {
        return Err(JointsError::HypothesisViolated("k must be >= 1".into()));
    }
    let through = config.lines_through(x);
    ensure_cap(through.len())?;
    if through.len() as u64 > 2 * k {
        return Err(JointsError::HypothesisViolated(format!(
            "point lies in {} lines, more than 2k = {}",
            through.len(),
            2 * k
        )));
    }
    let dirs: Vec<&Direction3> = through
        .iter()
        .map(|id| config.line(*id).expect("id from scan").dir())
        .collect();
    let multiplicity = spanning_triples(&dirs);
    if multiplicity == 0 {
        return Err(JointsError::HypothesisViolated(
            "point is not a joint of the configuration".into(),
        ));
    }
    Ok(JointContext {
        through,
        multiplicity,
    })
}

/// Checks the residual line-count floor at a joint after removing a subset.
///
/// Hypotheses, verified exactly: x is a joint of the configuration with
/// multiplicity N, lying in at most 2k of its lines, and the subset induces
/// multiplicity at most N/2 at x (in particular 0, i.e. "no joint",
/// qualifies). Violations return [`JointsError::HypothesisViolated`].
/// The conclusion — at least N/(1000·k²) lines outside the subset pass
/// through x — must then hold; `holds = false` indicates a bug, and the
/// property suites assert it never happens.
pub fn check_residual_line_bound(
    config: &LineConfig,
    subset: &BTreeSet<LineId>,
    x: &Point3,
    k: u64,
) -> Result<ResidualLineCheck, JointsError> {
    for id in subset {
        if config.line(*id).is_none() {
            return Err(JointsError::HypothesisViolated(format!(
                "subset id {id} is not in the configuration"
            )));
        }
    }
    let ctx = joint_in_at_most_2k_lines(config, x, k)?;
    let sub_dirs: Vec<&Direction3> = ctx
        .through
        .iter()
        .filter(|id| subset.contains(id))
        .map(|id| config.line(*id).expect("id from scan").dir())
        .collect();
    let sub_multiplicity = spanning_triples(&sub_dirs);
    if 2 * sub_multiplicity > ctx.multiplicity {
        return Err(JointsError::HypothesisViolated(format!(
            "subset induces multiplicity {} > N/2 with N = {}",
            sub_multiplicity, ctx.multiplicity
        )));
    }
    let lhs_lines = (ctx.through.len() - sub_dirs.len()) as u64;
    let rhs = multiplicity_line_floor(ctx.multiplicity, k);
    let holds = ExactScalar::from(BigInt::from(lhs_lines)) >= rhs;
    Ok(ResidualLineCheck {
        lhs_lines,
        rhs,
        holds,
    })
}

/// Checks the off-plane line-count floor at a joint.
///
/// Hypotheses, verified exactly: x is a joint of the configuration lying in
/// at most 2k of its lines. The plane is the one through x with the given
/// normal. The conclusion — at least N/(1000·k²) lines through x leave the
/// plane — must then hold; `holds = false` indicates a bug.
pub fn check_off_plane_line_bound(
    config: &LineConfig,
    x: &Point3,
    plane_normal: &Direction3,
    k: u64,
) -> Result<OffPlaneLineCheck, JointsError> {
    let ctx = joint_in_at_most_2k_lines(config, x, k)?;
    let off_plane_lines = ctx
        .through
        .iter()
        .filter(|id| {
            let dir = config.line(**id).expect("id from scan").dir();
            let dot = dir
                .components()
                .iter()
                .zip(plane_normal.components())
                .map(|(a, b)| a * b)
                .sum::<BigInt>();
            !num_traits::Zero::is_zero(&dot)
        })
        .count() as u64;
    let rhs = multiplicity_line_floor(ctx.multiplicity, k);
    let holds = ExactScalar::from(BigInt::from(off_plane_lines)) >= rhs;
    Ok(OffPlaneLineCheck {
        off_plane_lines,
        rhs,
        holds,
    })
}

/// Σ √N over a set of multiplicities, exact-rational path, for callers that
/// need the rational rather than the f64 view.
pub fn weighted_sum_of(multiplicities: impl IntoIterator<Item = u64>) -> BigRational {
    multiplicities
        .into_iter()
        .map(sqrt_int)
        .fold(BigRational::from_integer(0.into()), |a, b| a + b)
}

impl fmt::Display for JointRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "joint at {} on {} lines, multiplicity {}",
            self.location, self.k_count, self.multiplicity
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes_config() -> LineConfig {
        LineConfig::new(
            vec![
                Line3::from_ints((0, 0, 0), (1, 0, 0), 0).unwrap(),
                Line3::from_ints((0, 0, 0), (0, 1, 0), 0).unwrap(),
                Line3::from_ints((0, 0, 0), (0, 0, 1), 0).unwrap(),
            ],
            "axes",
        )
    }

    /// Lines through the origin with moment-curve directions (1, i, i²):
    /// any three distinct ones are linearly independent (Vandermonde), so
    /// the origin has multiplicity C(L, 3) exactly.
    fn moment_bush(l: usize) -> LineConfig {
        let lines = (0..l)
            .map(|i| {
                let i = i as i64 + 1;
                Line3::from_ints((0, 0, 0), (1, i, i * i), 0).unwrap()
            })
            .collect();
        LineConfig::new(lines, "moment-bush")
    }

    #[test]
    fn config_dedup_and_ids() {
        let cfg = LineConfig::new(
            vec![
                Line3::from_ints((0, 0, 0), (1, 0, 0), 9).unwrap(),
                Line3::from_ints((5, 0, 0), (-1, 0, 0), 4).unwrap(), // same line
                Line3::from_ints((0, 0, 0), (0, 1, 0), 7).unwrap(),
            ],
            "test",
        );
        assert_eq!(cfg.len(), 2);
        assert_eq!(cfg.duplicates_collapsed(), 1);
        assert_eq!(cfg.lines()[0].id, LineId(0));
        assert_eq!(cfg.lines()[1].id, LineId(1));
    }

    #[test]
    fn three_axes_single_joint() {
        let cfg = axes_config();
        let joints = detect_joints(&cfg).unwrap();
        assert_eq!(joints.len(), 1);
        let j = &joints[0];
        assert_eq!(j.location, Point3::origin());
        assert_eq!(j.k_count, 3);
        assert_eq!(j.multiplicity, 1);
        assert_eq!(j.incident_lines, vec![LineId(0), LineId(1), LineId(2)]);
    }

    #[test]
    fn axes_plus_diagonal_multiplicity_four() {
        let mut lines = axes_config().lines().to_vec();
        lines.push(Line3::from_ints((0, 0, 0), (1, 1, 1), 0).unwrap());
        let cfg = LineConfig::new(lines, "axes+diag");
        let joints = detect_joints(&cfg).unwrap();
        assert_eq!(joints.len(), 1);
        assert_eq!(joints[0].k_count, 4);
        assert_eq!(joints[0].multiplicity, 4);
    }

    #[test]
    fn coplanar_pencil_has_no_joints() {
        // Five concurrent lines in the z = 0 plane: many intersections, no
        // spanning triple.
        let lines = (0..5)
            .map(|m| Line3::from_ints((0, 0, 0), (1, m, 0), 0).unwrap())
            .collect();
        let cfg = LineConfig::new(lines, "pencil");
        assert!(detect_joints(&cfg).unwrap().is_empty());
        assert_eq!(multiplicity_at(&cfg, &Point3::origin()).unwrap(), 0);
    }

    #[test]
    fn skew_and_parallel_produce_nothing() {
        let cfg = LineConfig::new(
            vec![
                Line3::from_ints((0, 0, 0), (1, 0, 0), 0).unwrap(),
                Line3::from_ints((0, 1, 0), (1, 0, 0), 0).unwrap(),
                Line3::from_ints((0, 0, 1), (0, 1, 0), 0).unwrap(),
            ],
            "flat",
        );
        assert!(detect_joints(&cfg).unwrap().is_empty());
    }

    #[test]
    fn moment_bush_multiplicity_is_choose_three() {
        let cfg = moment_bush(7);
        let joints = detect_joints(&cfg).unwrap();
        assert_eq!(joints.len(), 1);
        assert_eq!(joints[0].k_count, 7);
        assert_eq!(joints[0].multiplicity, 35); // C(7,3)
    }

    #[test]
    fn records_lie_on_their_lines() {
        let cfg = moment_bush(5);
        for j in detect_joints(&cfg).unwrap() {
            for id in &j.incident_lines {
                assert!(cfg.line(*id).unwrap().contains(&j.location));
            }
        }
    }

    #[test]
    fn dyadic_bucketing() {
        let cfg = axes_config();
        let joints = detect_joints(&cfg).unwrap();
        let stats = dyadic_stats(&joints);
        // N = 1 → λ = 0; k = 3 → μ = 1.
        assert_eq!(stats.buckets.len(), 1);
        assert_eq!(stats.buckets[&(0, 1)].count, 1);
        assert!((stats.weighted_sum - 1.0).abs() < 1e-12);

        let cfg = moment_bush(20);
        let joints = detect_joints(&cfg).unwrap();
        // N = C(20,3) = 1140 → λ = 10; k = 20 → μ = 4.
        assert_eq!(dyadic_key(&joints[0]), (10, 4));
    }

    #[test]
    fn bound_report_for_axes() {
        let cfg = axes_config();
        let joints = detect_joints(&cfg).unwrap();
        let report = bound_report(&cfg, &joints).unwrap();
        assert_eq!(report.line_count, 3);
        assert_eq!(report.joint_count, 1);
        assert!((report.weighted_sum - 1.0).abs() < 1e-12);
        assert!((report.rhs - 3f64.powf(1.5)).abs() < 1e-9);
        assert!((report.ratio - 1.0 / 3f64.powf(1.5)).abs() < 1e-9);
    }

    #[test]
    fn bound_report_rejects_empty_config() {
        let cfg = LineConfig::new(vec![], "empty");
        assert!(matches!(
            bound_report(&cfg, &[]),
            Err(JointsError::EmptyConfig)
        ));
    }

    #[test]
    fn class_bound_for_axes() {
        let cfg = axes_config();
        let joints = detect_joints(&cfg).unwrap();
        let r = class_bound_report(&cfg, &joints, 1, 3);
        assert_eq!(r.class_size, 1);
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!((r.term1 - 3.0).abs() < 1e-9); // 3^{3/2}/√3 = 3
        assert!((r.term2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn residual_check_axes_empty_subset() {
        let cfg = axes_config();
        let check =
            check_residual_line_bound(&cfg, &BTreeSet::new(), &Point3::origin(), 2).unwrap();
        assert_eq!(check.lhs_lines, 3);
        assert_eq!(check.rhs, ExactScalar::ratio(1, 4000));
        assert!(check.holds);
    }

    #[test]
    fn residual_check_bush_half_subset() {
        let cfg = moment_bush(10);
        let subset: BTreeSet<LineId> = (0..5).map(LineId).collect();
        // Subset multiplicity C(5,3) = 10 ≤ N/2 = 60.
        let check = check_residual_line_bound(&cfg, &subset, &Point3::origin(), 5).unwrap();
        assert_eq!(check.lhs_lines, 5);
        assert_eq!(check.rhs, ExactScalar::ratio(120, 25000));
        assert!(check.holds);
    }

    #[test]
    fn residual_check_rejects_fat_subset() {
        let cfg = axes_config();
        let subset: BTreeSet<LineId> = (0..3).map(LineId).collect();
        // Subset multiplicity 1 > N/2 = 1/2: hypothesis fails.
        let err = check_residual_line_bound(&cfg, &subset, &Point3::origin(), 2).unwrap_err();
        assert!(matches!(err, JointsError::HypothesisViolated(_)));
    }

    #[test]
    fn residual_check_rejects_non_joint() {
        let cfg = axes_config();
        let err = check_residual_line_bound(&cfg, &BTreeSet::new(), &Point3::from_ints(1, 1, 1), 2)
            .unwrap_err();
        assert!(matches!(err, JointsError::HypothesisViolated(_)));
    }

    #[test]
    fn residual_check_rejects_too_many_lines() {
        // Origin lies in 10 lines but k = 2 allows at most 4.
        let cfg = moment_bush(10);
        let err =
            check_residual_line_bound(&cfg, &BTreeSet::new(), &Point3::origin(), 2).unwrap_err();
        assert!(matches!(err, JointsError::HypothesisViolated(_)));
    }

    #[test]
    fn off_plane_check_axes() {
        let cfg = axes_config();
        let normal = Direction3::from_ints(0, 0, 1).unwrap();
        let check = check_off_plane_line_bound(&cfg, &Point3::origin(), &normal, 2).unwrap();
        // Only the z-axis leaves the z = 0 plane.
        assert_eq!(check.off_plane_lines, 1);
        assert_eq!(check.rhs, ExactScalar::ratio(1, 4000));
        assert!(check.holds);
    }

    #[test]
    fn resource_cap_enforced() {
        let cfg = moment_bush(MAX_LINES_THROUGH_POINT + 1);
        let err = multiplicity_at(&cfg, &Point3::origin()).unwrap_err();
        assert!(matches!(err, JointsError::ResourceLimit { .. }));
    }
}
