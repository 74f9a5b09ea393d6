//! Joints of polynomially parametrised curves: tangent directions,
//! resultant-based pairwise intersection and self-crossing detection, joint
//! multiplicities over tangent-direction triples, and the weighted bound
//! report for curve families.
//!
//! Detection is rational-certified: every reported parameter pair satisfies
//! all coordinate equations exactly, and a `complete` flag records whether
//! non-rational intersection parameters could remain undetected.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::geom::{Direction3, Point3};
use crate::joints::spanning_triples;
use crate::numeric::{pow_three_halves, ratio_to_f64};
use crate::poly::bi::BiPoly;
use crate::poly::uni::{rational_roots, UniPoly, Var};
use crate::poly::sylvester_resultant;
use crate::scalar::ExactScalar;

/// Canonical parameter variable of every stored curve.
pub const CURVE_PARAM: Var = Var('t');
/// Second parameter used when two traversals are compared.
const SECOND_PARAM: Var = Var('s');

/// Identifier label for a curve; carries no geometric meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(pub u32);

/// Errors from curve construction and joint detection.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("all three coordinate polynomials are constant")]
    AllCoordinatesConstant,
    #[error("coordinate degree {actual} exceeds the declared bound {bound}")]
    DegreeBoundExceeded { actual: usize, bound: u32 },
    #[error("derivative vanishes at the given parameter; no tangent direction")]
    VanishingDerivative,
    #[error("no coordinate difference depends on the second parameter")]
    DegenerateElimination,
    #[error("curves {0:?} and {1:?} have identical parametrisations")]
    DuplicateCurve(CurveId, CurveId),
    #[error("curve id {0:?} appears twice")]
    DuplicateId(CurveId),
    #[error("empty curve configuration")]
    EmptyConfig,
}

/// A curve t ↦ (px(t), py(t), pz(t)) with rational polynomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    px: UniPoly,
    py: UniPoly,
    pz: UniPoly,
    degree_bound: u32,
    id: CurveId,
}

impl ParamCurve {
    /// Validates and stores a curve: not all coordinates constant, every
    /// coordinate degree within the bound. Coordinate polynomials are
    /// retagged to the canonical parameter variable.
    pub fn new(
        px: UniPoly,
        py: UniPoly,
        pz: UniPoly,
        degree_bound: u32,
        id: CurveId,
    ) -> Result<Self, CurveError> {
        let px = px.rename(CURVE_PARAM);
        let py = py.rename(CURVE_PARAM);
        let pz = pz.rename(CURVE_PARAM);
        if px.is_constant() && py.is_constant() && pz.is_constant() {
            return Err(CurveError::AllCoordinatesConstant);
        }
        for p in [&px, &py, &pz] {
            let deg = p.degree().unwrap_or(0);
            if deg > degree_bound as usize {
                return Err(CurveError::DegreeBoundExceeded { actual: deg, bound: degree_bound });
            }
        }
        Ok(ParamCurve { px, py, pz, degree_bound, id })
    }

    /// Convenience constructor from ascending integer coefficients.
    pub fn from_ints(
        px: &[i64],
        py: &[i64],
        pz: &[i64],
        degree_bound: u32,
        id: u32,
    ) -> Result<Self, CurveError> {
        Self::new(
            UniPoly::from_ints(CURVE_PARAM, px),
            UniPoly::from_ints(CURVE_PARAM, py),
            UniPoly::from_ints(CURVE_PARAM, pz),
            degree_bound,
            CurveId(id),
        )
    }

    pub fn coordinates(&self) -> [&UniPoly; 3] {
        [&self.px, &self.py, &self.pz]
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn id(&self) -> CurveId {
        self.id
    }

    /// The point reached at parameter t.
    pub fn point_at(&self, t: &ExactScalar) -> Point3 {
        Point3 {
            x: self.px.evaluate(t),
            y: self.py.evaluate(t),
            z: self.pz.evaluate(t),
        }
    }

    /// Whether two curves are the same parametrisation (identical
    /// coordinate polynomials). Distinct parametrisations of one image are
    /// not detected here; they surface as incomplete eliminations.
    pub fn same_parametrisation(&self, other: &ParamCurve) -> bool {
        self.px == other.px && self.py == other.py && self.pz == other.pz
    }
}

/// The canonical direction of the curve's tangent line at parameter t:
/// the derivative vector, which must be nonzero for a tangent to exist.
pub fn tangent_direction(curve: &ParamCurve, t: &ExactScalar) -> Result<Direction3, CurveError> {
    let d = [
        curve.px.derivative().evaluate(t),
        curve.py.derivative().evaluate(t),
        curve.pz.derivative().evaluate(t),
    ];
    Direction3::from_scalars(&d).map_err(|_| CurveError::VanishingDerivative)
}

/// Rational parameter pairs solving a two-traversal coordinate system,
/// plus a flag recording whether non-rational solutions may remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPairs {
    /// Sorted (t, s) pairs, each verified against every equation exactly.
    pub pairs: Vec<(ExactScalar, ExactScalar)>,
    /// False when some elimination step could only certify rational roots,
    /// or when the system was underdetermined (overlapping traversals).
    pub complete: bool,
}

/// Solves a system of bivariate equations in (t, s), each given with outer
/// variable s, for all rational solutions:
/// eliminate s by a Sylvester resultant (or fall back to s-free equations),
/// extract rational t-roots, solve each residual univariate system in s,
/// and keep exactly the pairs on which every equation vanishes.
fn solve_pair_system(system: &[BiPoly]) -> Result<ParamPairs, CurveError> {
    let active: Vec<&BiPoly> = system.iter().filter(|p| !p.is_zero()).collect();
    if active.is_empty() {
        // Every equation vanishes identically: the traversals coincide
        // everywhere. Nothing enumerable; flagged, not silently dropped.
        return Ok(ParamPairs { pairs: Vec::new(), complete: false });
    }
    // A nonzero constant equation is unsatisfiable: no solutions at all,
    // and that is an exact certificate.
    if active
        .iter()
        .any(|p| p.degree_outer() == Some(0) && p.degree_inner() == Some(0))
    {
        return Ok(ParamPairs { pairs: Vec::new(), complete: true });
    }
    let in_s: Vec<&BiPoly> = active
        .iter()
        .copied()
        .filter(|p| p.degree_outer().unwrap_or(0) >= 1)
        .collect();
    let s_free: Vec<UniPoly> = active
        .iter()
        .filter(|p| p.degree_outer() == Some(0))
        .map(|p| p.coeff(0))
        .collect();
    if in_s.is_empty() {
        return Err(CurveError::DegenerateElimination);
    }

    let mut complete = true;
    // Every common zero of the system makes each pairwise resultant vanish,
    // and also zeroes every s-free equation — either yields a sound
    // candidate superset for t.
    let mut eliminant: Option<UniPoly> = None;
    'pairs: for i in 0..in_s.len() {
        for j in i + 1..in_s.len() {
            let r = sylvester_resultant(in_s[i], in_s[j], SECOND_PARAM)
                .expect("operands have positive degree in the eliminated variable");
            if !r.is_zero() {
                eliminant = Some(r);
                break 'pairs;
            }
        }
    }
    if eliminant.is_none() {
        eliminant = s_free.iter().find(|p| !p.is_zero()).cloned();
    }
    let Some(eliminant) = eliminant else {
        // One equation in two unknowns (or resultants that vanish because
        // of a shared factor): an infinite solution family.
        return Ok(ParamPairs { pairs: Vec::new(), complete: false });
    };
    let t_candidates = rational_roots(&eliminant);
    complete &= !t_candidates.nonrational_roots_possible;

    let mut pairs = BTreeSet::new();
    for t0 in t_candidates.values() {
        let mut residuals: Vec<UniPoly> = Vec::with_capacity(active.len());
        let mut rejected = false;
        for p in &active {
            let r = p.substitute_inner(&t0);
            if r.is_constant() {
                if !r.is_zero() {
                    rejected = true; // this t fails an equation outright
                    break;
                }
            } else {
                residuals.push(r);
            }
        }
        if rejected {
            continue;
        }
        let Some(first) = residuals.first() else {
            // Every equation vanishes identically at this t: a whole line
            // of solutions in s. Not enumerable.
            complete = false;
            continue;
        };
        let s_candidates = rational_roots(first);
        complete &= !s_candidates.nonrational_roots_possible;
        for s0 in s_candidates.values() {
            let solves_all = active
                .iter()
                .all(|p| p.evaluate(&s0, &t0).is_zero());
            if solves_all {
                pairs.insert((t0.clone(), s0.clone()));
            }
        }
    }
    Ok(ParamPairs { pairs: pairs.into_iter().collect(), complete })
}

/// All rational (t, s) with γ(t) = δ(s): the coordinate-difference system
/// solved by resultant elimination. `complete = false` marks possible
/// non-rational intersection parameters (or overlapping traversals).
pub fn curve_pair_intersections(
    gamma: &ParamCurve,
    delta: &ParamCurve,
) -> Result<ParamPairs, CurveError> {
    let system: Vec<BiPoly> = gamma
        .coordinates()
        .iter()
        .zip(delta.coordinates())
        .map(|(pg, pd)| {
            // pg(t) − pd(s), stored with outer variable s for elimination.
            BiPoly::from_inner(&(*pg).clone().rename(CURVE_PARAM), SECOND_PARAM)
                .sub(&BiPoly::from_outer(&pd.clone().rename(SECOND_PARAM), CURVE_PARAM))
        })
        .collect();
    solve_pair_system(&system)
}

/// Rational self-crossings of one curve: pairs t > s with γ(t) = γ(s).
/// The symmetric factor (t − s) is divided out exactly before elimination,
/// so the diagonal never pollutes the candidates.
pub fn curve_self_crossings(curve: &ParamCurve) -> Result<ParamPairs, CurveError> {
    let system: Vec<BiPoly> = curve
        .coordinates()
        .iter()
        .map(|p| BiPoly::difference_quotient(p, SECOND_PARAM, CURVE_PARAM))
        .collect();
    // A nonzero-constant quotient (linear coordinate) certifies injectivity
    // through the solver's unsatisfiable-equation path.
    let solved = solve_pair_system(&system)?;
    let mut dedup = BTreeSet::new();
    for (t, s) in solved.pairs {
        if t == s {
            continue; // double point on the diagonal, not a crossing
        }
        let (hi, lo) = if t > s { (t, s) } else { (s, t) };
        dedup.insert((hi, lo));
    }
    Ok(ParamPairs { pairs: dedup.into_iter().collect(), complete: solved.complete })
}

/// The tangent directions collected at one location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSet {
    pub location: Point3,
    /// Deduplicated canonical tangent directions.
    pub directions: Vec<Direction3>,
    /// The (curve, parameter) visits contributing those directions.
    pub contributing: Vec<(CurveId, ExactScalar)>,
}

/// A joint of a curve family: at least three tangent directions spanning
/// space, with the number of spanning triples as its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveJointRecord {
    pub location: Point3,
    pub tangent_set: TangentSet,
    pub multiplicity: u64,
}

/// All joints of a curve family, with completeness accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveJointReport {
    pub joints: Vec<CurveJointRecord>,
    /// True when every pairwise and self-intersection search was certified
    /// exhaustive over the rationals and beyond.
    pub complete: bool,
    /// Number of intersection jobs that raised the incompleteness flag.
    pub flagged_jobs: usize,
}

/// Detects joints of a curve family: pools pairwise intersections and
/// self-crossings, groups them by exact location, builds tangent sets from
/// visits with nonvanishing derivative, and counts spanning triples.
///
/// Curves must carry unique ids and pairwise distinct parametrisations.
pub fn detect_curve_joints(curves: &[ParamCurve]) -> Result<CurveJointReport, CurveError> {
    let mut seen = BTreeSet::new();
    for c in curves {
        if !seen.insert(c.id()) {
            return Err(CurveError::DuplicateId(c.id()));
        }
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if curves[i].same_parametrisation(&curves[j]) {
                return Err(CurveError::DuplicateCurve(curves[i].id(), curves[j].id()));
            }
        }
    }

    // Pairwise and self-intersection jobs are independent; run them in
    // parallel and merge in deterministic order.
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for i in 0..curves.len() {
        for j in i..curves.len() {
            jobs.push((i, j));
        }
    }
    let results: Vec<(usize, usize, ParamPairs)> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let solved = if i == j {
                curve_self_crossings(&curves[i])
            } else {
                curve_pair_intersections(&curves[i], &curves[j])
            };
            solved.map(|s| (i, j, s))
        })
        .collect::<Result<_, _>>()?;

    let mut complete = true;
    let mut flagged_jobs = 0usize;
    let mut visits: BTreeMap<Point3, BTreeSet<(CurveId, ExactScalar)>> = BTreeMap::new();
    for (i, j, solved) in results {
        if !solved.complete {
            complete = false;
            flagged_jobs += 1;
        }
        for (t, s) in solved.pairs {
            let location = curves[i].point_at(&t);
            debug_assert_eq!(location, curves[j].point_at(&s));
            let entry = visits.entry(location).or_default();
            entry.insert((curves[i].id(), t));
            entry.insert((curves[j].id(), s));
        }
    }

    let by_id: BTreeMap<CurveId, &ParamCurve> = curves.iter().map(|c| (c.id(), c)).collect();
    let mut joints = Vec::new();
    for (location, visitors) in visits {
        let mut directions = BTreeSet::new();
        let mut contributing = Vec::new();
        for (id, t) in visitors {
            match tangent_direction(by_id[&id], &t) {
                Ok(dir) => {
                    directions.insert(dir);
                    contributing.push((id, t));
                }
                Err(_) => continue, // no tangent line at this visit
            }
        }
        let directions: Vec<Direction3> = directions.into_iter().collect();
        let refs: Vec<&Direction3> = directions.iter().collect();
        let multiplicity = spanning_triples(&refs);
        if multiplicity >= 1 {
            joints.push(CurveJointRecord {
                location: location.clone(),
                tangent_set: TangentSet { location, directions, contributing },
                multiplicity,
            });
        }
    }
    Ok(CurveJointReport { joints, complete, flagged_jobs })
}

/// The weighted joint count of a curve family against the family-size
/// bound: Σ √N(x) compared with |Γ|^{3/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveBoundReport {
    pub curve_count: usize,
    pub joint_count: usize,
    /// Σ over joints of √multiplicity, to double precision.
    pub weighted_sum: f64,
    /// |Γ|^{3/2}.
    pub rhs: f64,
    pub ratio: f64,
    pub complete: bool,
    pub flagged_jobs: usize,
}

/// Builds the weighted bound report over the rational-certified joints.
pub fn curve_bound_report(curves: &[ParamCurve]) -> Result<CurveBoundReport, CurveError> {
    if curves.is_empty() {
        return Err(CurveError::EmptyConfig);
    }
    let report = detect_curve_joints(curves)?;
    let weighted =
        crate::joints::weighted_sum_of(report.joints.iter().map(|j| j.multiplicity));
    let rhs = pow_three_halves(curves.len() as u64);
    let ratio = &weighted / &rhs;
    Ok(CurveBoundReport {
        curve_count: curves.len(),
        joint_count: report.joints.len(),
        weighted_sum: ratio_to_f64(&weighted),
        rhs: ratio_to_f64(&rhs),
        ratio: ratio_to_f64(&ratio),
        complete: report.complete,
        flagged_jobs: report.flagged_jobs,
    })
}
