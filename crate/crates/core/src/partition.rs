//! Polynomial cell decompositions: Veronese lifting, a discrete
//! ham-sandwich search with exact sign verification, and the iterated
//! halving partition with a full audit trail.
//!
//! The search heuristic draws floating-point directions, but every claim in
//! the output — sign counts, convergence, cell membership — is verified by
//! exact rational evaluation. Non-convergence is reported in flags, never
//! hidden.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geom::Point3;
use crate::poly::MultiPoly;
use crate::scalar::ExactScalar;

/// Number of monomial coordinates of degree 1..=d in three variables:
/// C(d+3, 3) − 1.
pub fn lift_dimension(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6 - 1
}

/// Exponent triples (x, y, z) of all non-constant monomials of total degree
/// ≤ d, in graded-lex order with x > y > z.
pub fn veronese_exponents(d: u32) -> Vec<[u32; 3]> {
    assert!(d >= 1, "lift degree must be at least 1");
    let mut out = Vec::with_capacity(lift_dimension(d));
    for g in 1..=d {
        for a in (0..=g).rev() {
            for b in (0..=g - a).rev() {
                out.push([a, b, g - a - b]);
            }
        }
    }
    debug_assert_eq!(out.len(), lift_dimension(d));
    out
}

/// Maps a point to the vector of its non-constant monomials up to degree d,
/// turning degree-≤d polynomials into affine functionals on the lift.
pub fn veronese_lift(pt: &Point3, d: u32) -> Vec<ExactScalar> {
    lift_with(pt, &veronese_exponents(d))
}

fn lift_with(pt: &Point3, exponents: &[[u32; 3]]) -> Vec<ExactScalar> {
    let coords = [&pt.x, &pt.y, &pt.z];
    let mut powers: [Vec<ExactScalar>; 3] =
        [vec![ExactScalar::one()], vec![ExactScalar::one()], vec![ExactScalar::one()]];
    for axis in 0..3 {
        let max = exponents.iter().map(|e| e[axis]).max().unwrap_or(0);
        for i in 1..=max as usize {
            let next = &powers[axis][i - 1] * coords[axis];
            powers[axis].push(next);
        }
    }
    exponents
        .iter()
        .map(|e| {
            let mut v = ExactScalar::one();
            for axis in 0..3 {
                v *= &powers[axis][e[axis] as usize];
            }
            v
        })
        .collect()
}

/// Exact sign tallies of one point set against a polynomial's zero set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SetCounts {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl SetCounts {
    pub fn total(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }

    /// Whether the set is bisected: at most ⌈n/2⌉ points strictly on each
    /// side of the zero set.
    pub fn bisected(&self) -> bool {
        let half = (self.total() + 1) / 2;
        self.n_pos <= half && self.n_neg <= half
    }
}

/// One bisection: a nonzero polynomial with exact per-set sign counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisectionStep {
    pub poly: MultiPoly,
    pub per_set_counts: Vec<SetCounts>,
    pub converged: bool,
    pub iterations: u32,
}

/// Errors from the partition engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PartitionError {
    /// More point sets than the lifted dimension supports.
    #[error("{sets} point sets exceed the lifted dimension {max} for this degree")]
    TooManySets { sets: usize, max: usize },
    /// The degree budget cannot accommodate even one bisection step.
    #[error("degree budget {budget} cannot accommodate a single bisection step")]
    BudgetTooSmall { budget: f64 },
}

const RESTARTS: u32 = 4;
const BISECTION_DEPTH_CAP: u32 = 48;

/// Searches for a polynomial of degree ≤ d whose zero set simultaneously
/// bisects every given point set: at most ⌈|Sᵢ|/2⌉ points of each set
/// strictly on each side.
///
/// Directions in the lifted coefficient space are drawn from a seeded
/// generator (converted to exact dyadic rationals); all sign counts are
/// exact. Restarts run in parallel; the result is the lexicographically
/// smallest converged coefficient vector among successes, otherwise the
/// best (lowest-discrepancy) candidate found, with `converged = false`.
pub fn discrete_ham_sandwich(
    sets: &[Vec<Point3>],
    d: u32,
    seed: u64,
    max_iter: u32,
) -> Result<BisectionStep, PartitionError> {
    assert!(d >= 1, "bisection degree must be at least 1");
    let m = lift_dimension(d);
    if sets.len() > m {
        return Err(PartitionError::TooManySets { sets: sets.len(), max: m });
    }
    if sets.iter().all(|s| s.is_empty()) {
        // Nothing to bisect: any nonzero polynomial works.
        return Ok(BisectionStep {
            poly: MultiPoly::coordinate(0),
            per_set_counts: vec![SetCounts { n_pos: 0, n_neg: 0, n_zero: 0 }; sets.len()],
            converged: true,
            iterations: 0,
        });
    }
    let exponents = veronese_exponents(d);
    let lifted: Vec<Vec<Vec<ExactScalar>>> = sets
        .iter()
        .map(|s| s.iter().map(|p| lift_with(p, &exponents)).collect())
        .collect();
    let budget = (max_iter / RESTARTS).max(1);
    let outcomes: Vec<RestartOutcome> = (0..RESTARTS)
        .into_par_iter()
        .map(|r| {
            let restart_seed = seed.wrapping_add((r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            run_restart(&lifted, m, restart_seed, budget)
        })
        .collect();
    let iterations: u32 = outcomes.iter().map(|o| o.iterations).sum();
    let winner = outcomes
        .iter()
        .filter(|o| o.best.discrepancy == 0)
        .map(|o| &o.best)
        .min_by(|a, b| a.coeffs.cmp(&b.coeffs))
        .or_else(|| {
            outcomes
                .iter()
                .map(|o| &o.best)
                .min_by(|a, b| (a.discrepancy, &a.coeffs).cmp(&(b.discrepancy, &b.coeffs)))
        })
        .expect("at least one restart");
    Ok(finalize_step(winner, &exponents, sets, iterations))
}

/// A candidate polynomial as its coefficient vector: index 0 is the
/// constant term, the rest follow the monomial order of the lift.
#[derive(Debug, Clone)]
struct Candidate {
    coeffs: Vec<ExactScalar>,
    discrepancy: u64,
}

struct RestartOutcome {
    best: Candidate,
    iterations: u32,
}

/// The outcome of probing one direction: the best threshold found for it.
struct Probe {
    theta: ExactScalar,
    discrepancy: u64,
    /// When intervals fail to intersect: (set with the largest lower
    /// endpoint, set with the smallest upper endpoint), witnessing the gap.
    gap_pair: Option<(usize, usize)>,
}

/// Per-set feasible threshold interval: any θ in it leaves at most ⌈n/2⌉
/// values strictly on each side. `None` encodes the corresponding infinity.
fn feasible_interval(sorted: &[ExactScalar]) -> (Option<ExactScalar>, Option<ExactScalar>) {
    let n = sorted.len();
    let h = (n + 1) / 2;
    let lo = (n > h).then(|| sorted[n - h - 1].clone());
    let hi = (h < n).then(|| sorted[h].clone());
    (lo, hi)
}

fn probe_direction(direction: &[ExactScalar], lifted: &[Vec<Vec<ExactScalar>>]) -> Probe {
    let values: Vec<Vec<ExactScalar>> = lifted
        .iter()
        .map(|set| {
            set.iter()
                .map(|lift| {
                    let mut v = ExactScalar::zero();
                    for (w, x) in direction.iter().zip(lift) {
                        if !w.is_zero() {
                            v += &(w * x);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut max_lo: Option<(ExactScalar, usize)> = None;
    let mut min_hi: Option<(ExactScalar, usize)> = None;
    for (i, vals) in values.iter().enumerate() {
        if vals.is_empty() {
            continue;
        }
        let mut sorted = vals.clone();
        sorted.sort();
        let (lo, hi) = feasible_interval(&sorted);
        if let Some(lo) = lo {
            if max_lo.as_ref().map_or(true, |(best, _)| lo > *best) {
                max_lo = Some((lo, i));
            }
        }
        if let Some(hi) = hi {
            if min_hi.as_ref().map_or(true, |(best, _)| hi < *best) {
                min_hi = Some((hi, i));
            }
        }
    }
    let (theta, gap_pair) = match (&max_lo, &min_hi) {
        (Some((lo, a)), Some((hi, b))) => {
            if lo <= hi {
                let theta = if lo == hi {
                    lo.clone()
                } else {
                    (lo + hi) * ExactScalar::ratio(1, 2)
                };
                (theta, None)
            } else {
                // Gap: aim at its middle and report the witnessing pair.
                ((lo + hi) * ExactScalar::ratio(1, 2), Some((*a, *b)))
            }
        }
        (None, Some((hi, _))) => (hi - ExactScalar::one(), None),
        (Some((lo, _)), None) => (lo + ExactScalar::one(), None),
        (None, None) => (ExactScalar::zero(), None),
    };
    let discrepancy = values
        .iter()
        .map(|vals| {
            let mut c = SetCounts { n_pos: 0, n_neg: 0, n_zero: 0 };
            for v in vals {
                match v.cmp(&theta) {
                    std::cmp::Ordering::Greater => c.n_pos += 1,
                    std::cmp::Ordering::Less => c.n_neg += 1,
                    std::cmp::Ordering::Equal => c.n_zero += 1,
                }
            }
            let half = (c.total() + 1) / 2;
            (c.n_pos.saturating_sub(half) + c.n_neg.saturating_sub(half)) as u64
        })
        .sum();
    Probe { theta, discrepancy, gap_pair }
}

/// lo of set `a` minus hi of set `b` for a fixed direction — positive iff
/// the two feasible intervals are separated with `a` above `b`.
fn pair_separation(
    direction: &[ExactScalar],
    lifted: &[Vec<Vec<ExactScalar>>],
    a: usize,
    b: usize,
) -> (ExactScalar, ExactScalar) {
    let interval = |i: usize| {
        let mut vals: Vec<ExactScalar> = lifted[i]
            .iter()
            .map(|lift| {
                let mut v = ExactScalar::zero();
                for (w, x) in direction.iter().zip(lift) {
                    if !w.is_zero() {
                        v += &(w * x);
                    }
                }
                v
            })
            .collect();
        vals.sort();
        let (lo, hi) = feasible_interval(&vals);
        (lo.expect("gap endpoints are finite"), hi.expect("gap endpoints are finite"))
    };
    let (lo_a, hi_a) = interval(a);
    let (lo_b, hi_b) = interval(b);
    (&lo_a - &hi_b, &lo_b - &hi_a)
}

fn candidate_from(direction: &[ExactScalar], probe: &Probe) -> Candidate {
    let mut coeffs = Vec::with_capacity(direction.len() + 1);
    coeffs.push(-&probe.theta);
    coeffs.extend(direction.iter().cloned());
    Candidate { coeffs, discrepancy: probe.discrepancy }
}

fn draw_direction(rng: &mut ChaCha8Rng, m: usize) -> Vec<ExactScalar> {
    loop {
        let dir: Vec<ExactScalar> = (0..m)
            .map(|_| {
                let x: f64 = rng.gen::<f64>() * 2.0 - 1.0;
                ExactScalar::from_f64_exact(x).expect("finite draw")
            })
            .collect();
        if dir.iter().any(|c| !c.is_zero()) {
            return dir;
        }
    }
}

fn midpoint(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    let half = ExactScalar::ratio(1, 2);
    let third = ExactScalar::ratio(1, 3);
    let mid: Vec<ExactScalar> = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x + y) * &half)
        .collect();
    if mid.iter().any(|c| !c.is_zero()) {
        return mid;
    }
    // Exact antipodes: take an off-center point of the segment instead.
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + x + y) * &third)
        .collect()
}

fn run_restart(
    lifted: &[Vec<Vec<ExactScalar>>],
    m: usize,
    seed: u64,
    budget: u32,
) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = 0u32;
    let mut best: Option<Candidate> = None;
    let mut current: Option<Vec<ExactScalar>> = None;

    let note = |cand: Candidate, best: &mut Option<Candidate>| {
        let better = best.as_ref().map_or(true, |b| {
            (cand.discrepancy, &cand.coeffs) < (b.discrepancy, &b.coeffs)
        });
        if better {
            *best = Some(cand);
        }
    };

    while iterations < budget {
        let direction = current.take().unwrap_or_else(|| draw_direction(&mut rng, m));
        iterations += 1;
        let probe = probe_direction(&direction, lifted);
        let disc_before = probe.discrepancy;
        note(candidate_from(&direction, &probe), &mut best);
        if disc_before == 0 {
            break;
        }
        let Some((a, b)) = probe.gap_pair else {
            continue; // no single separated pair to repair; redraw
        };
        // Walk from this direction towards its antipode: the pair's
        // separation changes sign along the way (it is exactly negated at
        // the antipode), so a sign-change segment exists. Bisect it.
        let (phi_here, _) = pair_separation(&direction, lifted, a, b);
        if phi_here.signum() <= 0 {
            continue; // the witnessed gap must have a above b; stale probe
        }
        let via = draw_direction(&mut rng, m);
        iterations += 1;
        let probe_via = probe_direction(&via, lifted);
        note(candidate_from(&via, &probe_via), &mut best);
        if probe_via.discrepancy == 0 {
            break;
        }
        let (phi_via, psi_via) = pair_separation(&via, lifted, a, b);
        let (mut lo_end, mut hi_end);
        if phi_via.signum() <= 0 && psi_via.signum() <= 0 {
            // Pair already overlaps at `via`; retry globally from there.
            current = Some(via);
            continue;
        } else if phi_via.is_negative() {
            lo_end = direction;
            hi_end = via;
        } else {
            // Separation still positive at `via`: its negation flips it.
            lo_end = via;
            hi_end = direction.iter().map(|c| -c).collect();
        }
        let mut depth = 0;
        while iterations < budget && depth < BISECTION_DEPTH_CAP {
            let mid = midpoint(&lo_end, &hi_end);
            iterations += 1;
            depth += 1;
            let probe_mid = probe_direction(&mid, lifted);
            note(candidate_from(&mid, &probe_mid), &mut best);
            if probe_mid.discrepancy == 0 {
                break;
            }
            let (phi, psi) = pair_separation(&mid, lifted, a, b);
            if phi.signum() <= 0 && psi.signum() <= 0 {
                // Pair repaired but other sets still violated: continue the
                // outer loop from this direction.
                current = Some(mid);
                break;
            } else if phi.signum() > 0 {
                lo_end = mid;
            } else {
                hi_end = mid;
            }
        }
        if best.as_ref().map(|b| b.discrepancy) == Some(0) {
            break;
        }
    }
    RestartOutcome { best: best.expect("budget ≥ 1 evaluates at least one candidate"), iterations }
}

/// Rebuilds the polynomial from a coefficient vector and recomputes every
/// count by exact evaluation on the original points — the returned step is
/// verified independently of the search path that produced it.
fn finalize_step(
    winner: &Candidate,
    exponents: &[[u32; 3]],
    sets: &[Vec<Point3>],
    iterations: u32,
) -> BisectionStep {
    let mut terms: Vec<([u32; 3], ExactScalar)> = vec![([0, 0, 0], winner.coeffs[0].clone())];
    for (e, c) in exponents.iter().zip(&winner.coeffs[1..]) {
        terms.push((*e, c.clone()));
    }
    let poly = MultiPoly::from_terms(terms);
    assert!(!poly.is_zero(), "bisection polynomial must be nonzero");
    let per_set_counts: Vec<SetCounts> = sets
        .iter()
        .map(|set| {
            let mut c = SetCounts { n_pos: 0, n_neg: 0, n_zero: 0 };
            for p in set {
                match poly.evaluate(p).signum() {
                    1 => c.n_pos += 1,
                    -1 => c.n_neg += 1,
                    _ => c.n_zero += 1,
                }
            }
            c
        })
        .collect();
    let converged = per_set_counts.iter().all(SetCounts::bisected);
    debug_assert_eq!(converged, winner.discrepancy == 0);
    BisectionStep { poly, per_set_counts, converged, iterations }
}

/// Sign of a step polynomial at a point, as a cell-key component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Where a point lands in the decomposition: an open sign-vector cell, or
/// the zero set of some step polynomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellAssignment {
    Cell(Vec<Sign>),
    ZBucket,
}

/// Observed shape of a finished partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionAudit {
    pub nonempty_cells: usize,
    pub max_cell_count: usize,
    pub z_bucket_count: usize,
    pub degree_used: u32,
    pub target_cells: u64,
}

/// An iterated-bisection decomposition of space around a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub steps: Vec<BisectionStep>,
    /// Product of the step polynomials, carrying them as its factored form.
    pub product_poly: MultiPoly,
    /// The number of bisection steps J; cells are the 2^J sign vectors.
    pub depth: u32,
    pub assignments: BTreeMap<Point3, CellAssignment>,
    pub audit: PartitionAudit,
}

impl Partition {
    /// True when every bisection step verified its halving counts.
    pub fn all_converged(&self) -> bool {
        self.steps.iter().all(|s| s.converged)
    }
}

/// Degree allotted to bisection step j (1-based): ⌈2^{(j−1)/3}⌉, computed
/// exactly as the least m with m³ ≥ 2^{j−1}.
pub fn step_degree(j: u32) -> u32 {
    let target = BigInt::one() << (j - 1);
    let m = target.nth_root(3);
    let m = if (&m * &m * &m) < target { m + 1u32 } else { m };
    m.to_u32().expect("step degree fits u32")
}

/// Default per-step search budget used by [`polynomial_partition`].
pub const DEFAULT_PARTITION_MAX_ITER: u32 = 256;

/// Builds the iterated partition: step j simultaneously bisects the point
/// sets of all current cells with a degree-⌈2^{(j−1)/3}⌉ polynomial; points
/// landing exactly on a step's zero set move to the Z-bucket and leave the
/// halving. J is the largest step count with Σ step degrees ≤ `budget`,
/// 2^J ≤ budget³, and the per-step cell count within the lifted dimension.
///
/// Duplicate input points are collapsed. Preconditions: `points` nonempty,
/// `budget` finite and > 1.
pub fn polynomial_partition(
    points: &[Point3],
    budget: f64,
    seed: u64,
) -> Result<Partition, PartitionError> {
    polynomial_partition_with(points, budget, seed, DEFAULT_PARTITION_MAX_ITER)
}

/// [`polynomial_partition`] with an explicit per-step search budget.
pub fn polynomial_partition_with(
    points: &[Point3],
    budget: f64,
    seed: u64,
    max_iter_per_step: u32,
) -> Result<Partition, PartitionError> {
    assert!(!points.is_empty(), "partitioning an empty point set");
    assert!(budget.is_finite() && budget > 1.0, "degree budget must be finite and > 1");
    let budget_exact = BigRational::from_float(budget).expect("finite budget");
    let depth = match feasible_depth(&budget_exact) {
        0 => return Err(PartitionError::BudgetTooSmall { budget }),
        j => j,
    };

    let distinct: Vec<Point3> = points
        .iter()
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut classes: BTreeMap<Vec<Sign>, Vec<Point3>> = BTreeMap::new();
    classes.insert(Vec::new(), distinct.clone());
    let mut steps: Vec<BisectionStep> = Vec::with_capacity(depth as usize);
    for j in 1..=depth {
        let sets: Vec<Vec<Point3>> = classes.values().cloned().collect();
        let keys: Vec<Vec<Sign>> = classes.keys().cloned().collect();
        let step_seed = seed.wrapping_add((j as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
        let step = discrete_ham_sandwich(&sets, step_degree(j), step_seed, max_iter_per_step)?;
        let mut next: BTreeMap<Vec<Sign>, Vec<Point3>> = BTreeMap::new();
        for (key, pts) in keys.iter().zip(&sets) {
            for pt in pts {
                let sign = match step.poly.evaluate(pt).signum() {
                    1 => Sign::Pos,
                    -1 => Sign::Neg,
                    _ => continue, // exact zero: retired to the Z-bucket
                };
                let mut child = key.clone();
                child.push(sign);
                next.entry(child).or_default().push(pt.clone());
            }
        }
        classes = next;
        steps.push(step);
    }

    let assignments = assign_cells(&distinct, &steps);
    let product_poly =
        MultiPoly::from_factors(steps.iter().map(|s| (s.poly.clone(), 1)).collect());
    let degree_used = product_poly.degree().expect("product of nonzero steps");
    debug_assert!(BigRational::from_integer(BigInt::from(degree_used)) <= budget_exact);

    let mut cell_sizes: BTreeMap<&CellAssignment, usize> = BTreeMap::new();
    for a in assignments.values() {
        *cell_sizes.entry(a).or_insert(0) += 1;
    }
    let z_bucket_count = cell_sizes.get(&CellAssignment::ZBucket).copied().unwrap_or(0);
    let cells_only = cell_sizes
        .iter()
        .filter(|(k, _)| !matches!(k, CellAssignment::ZBucket));
    let audit = PartitionAudit {
        nonempty_cells: cells_only.clone().count(),
        max_cell_count: cells_only.map(|(_, n)| *n).max().unwrap_or(0),
        z_bucket_count,
        degree_used,
        target_cells: 1u64 << depth,
    };
    debug_assert!(audit.nonempty_cells as u64 <= audit.target_cells);

    Ok(Partition { steps, product_poly, depth, assignments, audit })
}

/// Largest J such that the degree schedule fits the budget: Σ δⱼ ≤ budget,
/// 2^J ≤ budget³, and each step's simultaneous set count 2^{j−1} stays
/// within the lifted dimension of its degree.
fn feasible_depth(budget: &BigRational) -> u32 {
    let budget_cubed = budget * budget * budget;
    let mut total = BigInt::zero();
    let mut j = 0u32;
    loop {
        let next = j + 1;
        let delta = step_degree(next);
        let new_total = &total + BigInt::from(delta);
        let cells_after = BigInt::one() << next;
        let sets_during = BigInt::one() << (next - 1);
        let fits = BigRational::from_integer(new_total.clone()) <= *budget
            && BigRational::from_integer(cells_after) <= budget_cubed
            && sets_during <= BigInt::from(lift_dimension(delta) as u64);
        if !fits {
            return j;
        }
        total = new_total;
        j = next;
    }
}

/// Assigns every point to its sign-vector cell over the step polynomials,
/// or to the Z-bucket if any step polynomial vanishes there exactly.
/// Re-running this on a partition's own inputs reproduces its assignments.
pub fn assign_cells(
    points: &[Point3],
    steps: &[BisectionStep],
) -> BTreeMap<Point3, CellAssignment> {
    points
        .iter()
        .map(|p| {
            let mut key = Vec::with_capacity(steps.len());
            let mut in_z = false;
            for step in steps {
                match step.poly.evaluate(p).signum() {
                    1 => key.push(Sign::Pos),
                    -1 => key.push(Sign::Neg),
                    _ => {
                        in_z = true;
                        break;
                    }
                }
            }
            let assignment = if in_z {
                CellAssignment::ZBucket
            } else {
                CellAssignment::Cell(key)
            };
            (p.clone(), assignment)
        })
        .collect()
}

/// Independently re-verifies a partition against the points it was built
/// from: every assignment matches exact re-evaluation of the step
/// polynomials, the stored per-set counts match an exact replay of the
/// class refinement, every step claiming convergence halved each of its
/// sets (positive and negative parts each at most ⌈n/2⌉), and the audit
/// numbers are recomputed from scratch.
pub fn verify_partition(points: &[Point3], partition: &Partition) -> Result<(), String> {
    if partition.steps.len() != partition.depth as usize {
        return Err(format!(
            "depth {} does not match {} steps",
            partition.depth,
            partition.steps.len()
        ));
    }
    let distinct: Vec<Point3> = points
        .iter()
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let recomputed = assign_cells(&distinct, &partition.steps);
    if recomputed != partition.assignments {
        return Err("assignments do not match exact sign re-evaluation".into());
    }

    let mut classes: BTreeMap<Vec<Sign>, Vec<Point3>> = BTreeMap::new();
    classes.insert(Vec::new(), distinct);
    for (idx, step) in partition.steps.iter().enumerate() {
        if step.poly.is_zero() {
            return Err(format!("step {} polynomial is zero", idx + 1));
        }
        let counts: Vec<SetCounts> = classes
            .values()
            .map(|pts| {
                let mut c = SetCounts::default();
                for p in pts {
                    match step.poly.evaluate(p).signum() {
                        1 => c.n_pos += 1,
                        -1 => c.n_neg += 1,
                        _ => c.n_zero += 1,
                    }
                }
                c
            })
            .collect();
        if counts != step.per_set_counts {
            return Err(format!(
                "step {} per-set counts do not match an exact replay",
                idx + 1
            ));
        }
        if step.converged && !counts.iter().all(SetCounts::bisected) {
            return Err(format!(
                "step {} claims convergence but fails the halving check",
                idx + 1
            ));
        }
        let mut next: BTreeMap<Vec<Sign>, Vec<Point3>> = BTreeMap::new();
        for (key, pts) in &classes {
            for pt in pts {
                let sign = match step.poly.evaluate(pt).signum() {
                    1 => Sign::Pos,
                    -1 => Sign::Neg,
                    _ => continue,
                };
                let mut child = key.clone();
                child.push(sign);
                next.entry(child).or_default().push(pt.clone());
            }
        }
        classes = next;
    }

    let mut cell_sizes: BTreeMap<&CellAssignment, usize> = BTreeMap::new();
    for a in partition.assignments.values() {
        *cell_sizes.entry(a).or_insert(0) += 1;
    }
    let z_bucket_count = cell_sizes.get(&CellAssignment::ZBucket).copied().unwrap_or(0);
    let cells_only = cell_sizes
        .iter()
        .filter(|(k, _)| !matches!(k, CellAssignment::ZBucket));
    let nonempty_cells = cells_only.clone().count();
    let max_cell_count = cells_only.map(|(_, n)| *n).max().unwrap_or(0);
    let audit = &partition.audit;
    if nonempty_cells != audit.nonempty_cells
        || max_cell_count != audit.max_cell_count
        || z_bucket_count != audit.z_bucket_count
    {
        return Err("audit cell statistics do not match recomputation".into());
    }
    if audit.target_cells != 1u64 << partition.depth {
        return Err("audit target cell count does not match the depth".into());
    }
    if nonempty_cells as u64 > audit.target_cells {
        return Err("more nonempty cells than sign vectors".into());
    }
    let degree: u32 = partition
        .steps
        .iter()
        .map(|s| s.poly.degree().expect("nonzero step polynomial"))
        .sum();
    if degree != audit.degree_used
        || partition.product_poly.degree() != Some(degree)
    {
        return Err("recorded degree does not match the step polynomials".into());
    }
    Ok(())
}
