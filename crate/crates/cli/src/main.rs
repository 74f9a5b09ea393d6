//! `incidence` — exact-arithmetic incidence geometry experiments.
//!
//! Subcommands cover joint detection for lines and parametrised curves,
//! iterated polynomial partitions, incidence counting, rich-point counts,
//! and dyadic class measurements. Every run emits a reproducible report
//! (see [`incidence_cli::report`]). Exit codes: 0 success, 1 usage or
//! parse errors, 2 verification failure under `--verify`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use incidence_cli::gen::{self, Generated};
use incidence_cli::io;
use incidence_cli::report::{sha256_hex, RunReport, Scope};
use incidence_core::curves::{detect_curve_joints, tangent_direction, ParamCurve};
use incidence_core::geom::{Direction3, Line3, LineId, Point3};
use incidence_core::incidence::{
    count_incidences, multi_line_points, rich_points_report, st_report_planar,
    st_report_spatial, IncidenceReport,
};
use incidence_core::joints::{
    bound_report, class_bound_report, detect_joints, dyadic_stats, spanning_triples,
    weighted_sum_of, LineConfig,
};
use incidence_core::oracle::detect_joints_naive;
use incidence_core::partition::{
    polynomial_partition_with, verify_partition, Partition, DEFAULT_PARTITION_MAX_ITER,
};
use incidence_core::projection::{PlanarLine, PlanarPoint};
use incidence_core::scalar::ExactScalar;

#[derive(Parser)]
#[command(
    name = "incidence",
    version,
    about = "Exact incidence geometry: joints, partitions, curves, and incidence bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Generator spec (e.g. grid:5, bush:20:seed1, random_lines:30:seed4:9,
    /// coplanar_pencil:7, curve_bush:6:3:seed2, curve_grid:2, random:512:seed7,
    /// mixed:grid:2+bush:4:seed1).
    #[arg(long)]
    gen: Option<String>,
    /// JSON configuration file to read instead of generating.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format. csv is available only for `joints` (dyadic histogram).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated configuration as a canonical JSON file.
    Generate {
        /// Generator spec, as for --gen elsewhere.
        #[arg(long)]
        gen: String,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Detect joints of a line configuration; report multiplicities, dyadic
    /// classes, and the weighted sum against L^(3/2).
    Joints {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Cross-check the detector against the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Build an iterated polynomial partition of a point set and audit it.
    Partition {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Total degree budget for the product polynomial.
        #[arg(long, default_value_t = 4.0)]
        degree: f64,
        /// Seed for the bisection search.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Per-step search budget (spread across restarts).
        #[arg(long, default_value_t = DEFAULT_PARTITION_MAX_ITER)]
        max_iter: u32,
        /// Replay the partition independently and re-verify every count.
        #[arg(long)]
        verify: bool,
    },
    /// Detect joints of polynomially parametrised curves.
    Curves {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Re-verify every reported joint exactly; cross-check degree-1
        /// configurations against the line engine.
        #[arg(long)]
        verify: bool,
    },
    /// Count point-line incidences against the two-thirds-power bound.
    /// With --k: the k x k planar grid against its 2k axis lines. With an
    /// input/generated line configuration: the points on >= 2 lines against
    /// the lines, counted through a certified generic projection.
    St {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Planar grid size (mutually exclusive with --gen/--input).
        #[arg(long, conflicts_with_all = ["gen", "input"])]
        k: Option<u64>,
        /// Seed for the generic projection (spatial inputs only).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Recount incidences independently.
        #[arg(long)]
        verify: bool,
    },
    /// Count points lying on at least k lines of a configuration.
    RichPoints {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Richness threshold (>= 2).
        #[arg(long)]
        k: u64,
        /// Recount rich points by direct containment scans.
        #[arg(long)]
        verify: bool,
    },
    /// Measure one dyadic class of joints against its two-term bound.
    ClassBound {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Base multiplicity of the class (joints with n <= N(x) < 2n).
        #[arg(long)]
        n: u64,
        /// Base line count of the class (joints on k <= lines < 2k, k >= 3).
        #[arg(long)]
        k: u64,
    },
}

enum CliError {
    /// Usage, parse, generation, or i/o problems. Exit code 1.
    Fail(String),
    /// A --verify cross-check found a discrepancy. Exit code 2.
    Verify(String),
}

impl CliError {
    fn fail(e: impl std::fmt::Display) -> Self {
        CliError::Fail(e.to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(CliError::Fail(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate { gen, output } => cmd_generate(&gen, output.as_deref()),
        Command::Joints { input, out, verify } => cmd_joints(&input, &out, verify),
        Command::Partition { input, out, degree, seed, max_iter, verify } => {
            cmd_partition(&input, &out, degree, seed, max_iter, verify)
        }
        Command::Curves { input, out, verify } => cmd_curves(&input, &out, verify),
        Command::St { input, out, k, seed, verify } => cmd_st(&input, &out, k, seed, verify),
        Command::RichPoints { input, out, k, verify } => cmd_rich(&input, &out, k, verify),
        Command::ClassBound { input, out, n, k } => cmd_class(&input, &out, n, k),
    }
}

// ---------------------------------------------------------------------------
// Input and output plumbing
// ---------------------------------------------------------------------------

/// Loads the configuration named by `--gen` or `--input`, with its digest.
fn load_input(input: &InputArgs) -> Result<(Generated, String), CliError> {
    match (&input.gen, &input.input) {
        (Some(spec), None) => {
            let config = gen::generate(spec).map_err(CliError::fail)?;
            Ok((config, format!("gen:{spec}")))
        }
        (None, Some(path)) => {
            let bytes = std::fs::read(path)
                .map_err(|e| CliError::Fail(format!("{}: {e}", path.display())))?;
            let digest = sha256_hex(&bytes);
            let text = String::from_utf8(bytes)
                .map_err(|_| CliError::Fail(format!("{}: not UTF-8", path.display())))?;
            let file = io::parse(&text)
                .map_err(|e| CliError::Fail(format!("{}: {e}", path.display())))?;
            let config = io::from_file(&file, &format!("file {}", path.display()))
                .map_err(|e| CliError::Fail(format!("{}: {e}", path.display())))?;
            Ok((config, digest))
        }
        _ => Err(CliError::Fail(
            "exactly one of --gen and --input is required".to_string(),
        )),
    }
}

fn expect_lines(config: Generated) -> Result<LineConfig, CliError> {
    match config {
        Generated::Lines(c) => Ok(c),
        other => Err(CliError::Fail(format!(
            "this subcommand needs a line configuration, got {}",
            other.kind()
        ))),
    }
}

fn expect_points(config: Generated) -> Result<Vec<Point3>, CliError> {
    match config {
        Generated::Points(p) => Ok(p),
        other => Err(CliError::Fail(format!(
            "this subcommand needs a point configuration, got {}",
            other.kind()
        ))),
    }
}

fn expect_curves(config: Generated) -> Result<Vec<ParamCurve>, CliError> {
    match config {
        Generated::Curves(c) => Ok(c),
        other => Err(CliError::Fail(format!(
            "this subcommand needs a curve configuration, got {}",
            other.kind()
        ))),
    }
}

fn input_flags(input: &InputArgs, flags: &mut BTreeMap<String, String>) {
    if let Some(spec) = &input.gen {
        flags.insert("gen".to_string(), spec.clone());
    }
    if let Some(path) = &input.input {
        flags.insert("input".to_string(), path.display().to_string());
    }
}

fn require_json(out: &OutputArgs, command: &str) -> Result<(), CliError> {
    if out.format == Format::Csv {
        return Err(CliError::Fail(format!(
            "--format csv is only available for `joints`, not `{command}`"
        )));
    }
    Ok(())
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Fail(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(
    command: &str,
    flags: BTreeMap<String, String>,
    input_digest: String,
    seeds: Vec<u64>,
    payload: serde_json::Value,
    timings_ms: BTreeMap<String, u64>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let scope = Scope {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        flags,
        input_digest,
        seeds,
        payload,
    };
    emit(out, &RunReport::new(scope, timings_ms).to_json_pretty())
}

fn point_json(p: &Point3) -> serde_json::Value {
    let c = p.coords();
    json!([c[0].to_string(), c[1].to_string(), c[2].to_string()])
}

fn direction_json(d: &Direction3) -> serde_json::Value {
    let c = d.components();
    json!([c[0].to_string(), c[1].to_string(), c[2].to_string()])
}

fn ms(since: Instant) -> u64 {
    since.elapsed().as_millis() as u64
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_generate(spec: &str, output: Option<&std::path::Path>) -> Result<(), CliError> {
    let config = gen::generate(spec).map_err(CliError::fail)?;
    let file = io::to_file(&config).map_err(CliError::fail)?;
    let text = io::render(&file).map_err(CliError::fail)?;
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Fail(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_joints(input: &InputArgs, out: &OutputArgs, verify: bool) -> Result<(), CliError> {
    let (config, digest) = load_input(input)?;
    let config = expect_lines(config)?;

    let started = Instant::now();
    let joints = detect_joints(&config).map_err(CliError::fail)?;
    let detect_ms = ms(started);
    let report = bound_report(&config, &joints).map_err(CliError::fail)?;
    let stats = dyadic_stats(&joints);

    let mut timings = BTreeMap::new();
    timings.insert("detect".to_string(), detect_ms);

    if verify {
        let started = Instant::now();
        let naive = detect_joints_naive(config.lines());
        timings.insert("verify".to_string(), ms(started));
        if naive != joints {
            return Err(CliError::Verify(format!(
                "oracle found {} joints, detector found {}",
                naive.len(),
                joints.len()
            )));
        }
    }

    if out.format == Format::Csv {
        let mut csv = String::from("lambda,mu,count\n");
        for ((lambda, mu), bucket) in &stats.buckets {
            csv.push_str(&format!("{lambda},{mu},{}\n", bucket.count));
        }
        return emit(out, &csv);
    }

    let dyadic: Vec<_> = stats
        .buckets
        .iter()
        .map(|((lambda, mu), bucket)| json!({"lambda": lambda, "mu": mu, "count": bucket.count}))
        .collect();
    let joint_list: Vec<_> = joints
        .iter()
        .map(|j| {
            json!({
                "location": point_json(&j.location),
                "k_count": j.k_count,
                "multiplicity": j.multiplicity,
                "lines": j.incident_lines.iter().map(|id| id.0).collect::<Vec<_>>(),
            })
        })
        .collect();
    let payload = json!({
        "line_count": report.line_count,
        "duplicates_collapsed": config.duplicates_collapsed(),
        "joint_count": report.joint_count,
        "weighted_sum": report.weighted_sum,
        "rhs": report.rhs,
        "ratio": report.ratio,
        "verified": verify,
        "dyadic": dyadic,
        "joints": joint_list,
    });

    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("verify".to_string(), verify.to_string());
    finish("joints", flags, digest, vec![], payload, timings, out)
}

fn cmd_partition(
    input: &InputArgs,
    out: &OutputArgs,
    degree: f64,
    seed: u64,
    max_iter: u32,
    verify: bool,
) -> Result<(), CliError> {
    require_json(out, "partition")?;
    let (config, digest) = load_input(input)?;
    let points = expect_points(config)?;

    let started = Instant::now();
    let partition: Partition =
        polynomial_partition_with(&points, degree, seed, max_iter).map_err(CliError::fail)?;
    let mut timings = BTreeMap::new();
    timings.insert("partition".to_string(), ms(started));

    if verify {
        let started = Instant::now();
        let outcome = verify_partition(&points, &partition);
        timings.insert("verify".to_string(), ms(started));
        outcome.map_err(CliError::Verify)?;
    }

    let steps: Vec<_> = partition
        .steps
        .iter()
        .map(|s| {
            json!({
                "degree": s.poly.degree().unwrap_or(0),
                "converged": s.converged,
                "iterations": s.iterations,
                "sets": s.per_set_counts.iter().map(|c| {
                    json!({"neg": c.n_neg, "zero": c.n_zero, "pos": c.n_pos})
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let payload = json!({
        "point_count": points.len(),
        "distinct_points": partition.assignments.len(),
        "depth": partition.depth,
        "degree_used": partition.audit.degree_used,
        "target_cells": partition.audit.target_cells,
        "nonempty_cells": partition.audit.nonempty_cells,
        "max_cell_count": partition.audit.max_cell_count,
        "z_bucket_count": partition.audit.z_bucket_count,
        "all_converged": partition.all_converged(),
        "verified": verify,
        "steps": steps,
    });

    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("degree".to_string(), degree.to_string());
    flags.insert("seed".to_string(), seed.to_string());
    flags.insert("max_iter".to_string(), max_iter.to_string());
    flags.insert("verify".to_string(), verify.to_string());
    finish("partition", flags, digest, vec![seed], payload, timings, out)
}

fn cmd_curves(input: &InputArgs, out: &OutputArgs, verify: bool) -> Result<(), CliError> {
    require_json(out, "curves")?;
    let (config, digest) = load_input(input)?;
    let curves = expect_curves(config)?;

    let started = Instant::now();
    let report = detect_curve_joints(&curves).map_err(CliError::fail)?;
    let bound = incidence_core::curves::curve_bound_report(&curves).map_err(CliError::fail)?;
    let mut timings = BTreeMap::new();
    timings.insert("detect".to_string(), ms(started));

    if verify {
        let started = Instant::now();
        verify_curve_joints(&curves, &report.joints, report.complete)?;
        timings.insert("verify".to_string(), ms(started));
    }

    let joint_list: Vec<_> = report
        .joints
        .iter()
        .map(|j| {
            json!({
                "location": point_json(&j.location),
                "multiplicity": j.multiplicity,
                "directions": j.tangent_set.directions.iter()
                    .map(direction_json).collect::<Vec<_>>(),
                "contributing": j.tangent_set.contributing.iter()
                    .map(|(id, t)| json!([id.0, t.to_string()])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let payload = json!({
        "curve_count": bound.curve_count,
        "joint_count": bound.joint_count,
        "weighted_sum": bound.weighted_sum,
        "rhs": bound.rhs,
        "ratio": bound.ratio,
        "complete": bound.complete,
        "flagged_jobs": bound.flagged_jobs,
        "verified": verify,
        "joints": joint_list,
    });

    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("verify".to_string(), verify.to_string());
    finish("curves", flags, digest, vec![], payload, timings, out)
}

/// Re-verifies reported curve joints from scratch: every contributing
/// parameter lands on the location, the direction set is exactly the
/// deduplicated tangents, and the multiplicity is the spanning-triple count.
/// Degree-1 configurations are additionally cross-checked against the line
/// engine when detection was complete.
fn verify_curve_joints(
    curves: &[ParamCurve],
    joints: &[incidence_core::curves::CurveJointRecord],
    complete: bool,
) -> Result<(), CliError> {
    let by_id: BTreeMap<u32, &ParamCurve> = curves.iter().map(|c| (c.id().0, c)).collect();
    for j in joints {
        let mut dirs = BTreeSet::new();
        for (id, t) in &j.tangent_set.contributing {
            let curve = by_id
                .get(&id.0)
                .ok_or_else(|| CliError::Verify(format!("joint cites unknown curve {}", id.0)))?;
            if curve.point_at(t) != j.location {
                return Err(CliError::Verify(format!(
                    "curve {} at t={t} does not pass through the reported joint",
                    id.0
                )));
            }
            dirs.insert(tangent_direction(curve, t).map_err(CliError::fail)?);
        }
        let reported: BTreeSet<_> = j.tangent_set.directions.iter().cloned().collect();
        if dirs != reported {
            return Err(CliError::Verify(
                "reported tangent directions disagree with recomputation".to_string(),
            ));
        }
        let refs: Vec<&Direction3> = dirs.iter().collect();
        if spanning_triples(&refs) != j.multiplicity {
            return Err(CliError::Verify(format!(
                "multiplicity {} disagrees with spanning-triple recount",
                j.multiplicity
            )));
        }
    }

    // Degree-1 curves are lines; their joints must match the line engine.
    let all_linear = curves
        .iter()
        .all(|c| c.coordinates().iter().all(|p| p.degree().map_or(true, |d| d <= 1)));
    if all_linear && complete {
        let zero = ExactScalar::from(0);
        let lines = curves
            .iter()
            .map(|c| {
                let base = c.point_at(&zero);
                let d = tangent_direction(c, &zero).map_err(CliError::fail)?;
                let comp = d.components();
                let dir = [
                    ExactScalar::from(comp[0].clone()),
                    ExactScalar::from(comp[1].clone()),
                    ExactScalar::from(comp[2].clone()),
                ];
                Line3::new(&base, &dir, LineId(c.id().0)).map_err(CliError::fail)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let config = LineConfig::new(lines, "curve cross-check");
        let line_joints = detect_joints(&config).map_err(CliError::fail)?;
        let expected: BTreeMap<&Point3, u64> =
            line_joints.iter().map(|j| (&j.location, j.multiplicity)).collect();
        let got: BTreeMap<&Point3, u64> =
            joints.iter().map(|j| (&j.location, j.multiplicity)).collect();
        if expected != got {
            return Err(CliError::Verify(format!(
                "line engine found {} joints, curve engine reported {}",
                expected.len(),
                got.len()
            )));
        }
    }
    Ok(())
}

fn cmd_st(
    input: &InputArgs,
    out: &OutputArgs,
    k: Option<u64>,
    seed: u64,
    verify: bool,
) -> Result<(), CliError> {
    require_json(out, "st")?;
    let mut timings = BTreeMap::new();
    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("seed".to_string(), seed.to_string());
    flags.insert("verify".to_string(), verify.to_string());

    let (report, digest, seeds): (IncidenceReport, String, Vec<u64>) = match k {
        Some(k) => {
            if k == 0 || k > 3000 {
                return Err(CliError::Fail("--k must be in 1..=3000".to_string()));
            }
            flags.insert("k".to_string(), k.to_string());
            let k = k as i64;
            let points: Vec<PlanarPoint> = (0..k)
                .flat_map(|x| (0..k).map(move |y| PlanarPoint::from_ints(x, y)))
                .collect();
            // x = c and y = c for c in 0..k, in a·x + b·y = c form.
            let lines: Vec<PlanarLine> = (0..k)
                .map(|c| PlanarLine::from_coeffs(1.into(), 0.into(), c.into(), LineId(c as u32)))
                .chain((0..k).map(|c| {
                    PlanarLine::from_coeffs(0.into(), 1.into(), c.into(), LineId((k + c) as u32))
                }))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::fail)?;
            let started = Instant::now();
            let report = st_report_planar(&points, &lines);
            timings.insert("count".to_string(), ms(started));
            if verify {
                // Each of the 2k axis lines meets the grid in exactly k points.
                let expected = 2 * (k as u64) * (k as u64);
                if report.incidences != expected {
                    return Err(CliError::Verify(format!(
                        "planar grid expects {expected} incidences, counted {}",
                        report.incidences
                    )));
                }
            }
            (report, format!("planar-grid:{k}"), vec![])
        }
        None => {
            let (config, digest) = load_input(input)?;
            let config = expect_lines(config)?;
            let points: Vec<Point3> = multi_line_points(config.lines()).into_keys().collect();
            let started = Instant::now();
            let report =
                st_report_spatial(&points, config.lines(), seed).map_err(CliError::fail)?;
            timings.insert("count".to_string(), ms(started));
            if verify {
                let started = Instant::now();
                let direct = count_incidences(&points, config.lines());
                timings.insert("verify".to_string(), ms(started));
                if direct != report.incidences {
                    return Err(CliError::Verify(format!(
                        "projection counted {} incidences, direct recount {}",
                        report.incidences, direct
                    )));
                }
            }
            (report, digest, vec![seed])
        }
    };

    let certificate = report.certificate.as_ref().map(|c| {
        json!({
            "direction": direction_json(&c.direction),
            "rejections": c.rejections,
        })
    });
    let payload = json!({
        "point_count": report.point_count,
        "line_count": report.line_count,
        "incidences": report.incidences,
        "bound": report.bound,
        "ratio": report.ratio,
        "within_bound": report.ratio < 1.0,
        "verified": verify,
        "certificate": certificate,
    });
    finish("st", flags, digest, seeds, payload, timings, out)
}

fn cmd_rich(input: &InputArgs, out: &OutputArgs, k: u64, verify: bool) -> Result<(), CliError> {
    require_json(out, "rich-points")?;
    if k < 2 {
        return Err(CliError::Fail("--k must be at least 2".to_string()));
    }
    let (config, digest) = load_input(input)?;
    let config = expect_lines(config)?;

    let started = Instant::now();
    let report = rich_points_report(config.lines(), k);
    let mut timings = BTreeMap::new();
    timings.insert("count".to_string(), ms(started));

    if verify {
        let started = Instant::now();
        // Independent recount: candidate points from pairwise intersections,
        // then a direct containment scan per candidate.
        let candidates = multi_line_points(config.lines());
        let recount = candidates
            .keys()
            .filter(|p| {
                config.lines().iter().filter(|l| l.contains(p)).count() as u64 >= k
            })
            .count() as u64;
        timings.insert("verify".to_string(), ms(started));
        if recount != report.rich_count {
            return Err(CliError::Verify(format!(
                "reported {} rich points, recount found {recount}",
                report.rich_count
            )));
        }
    }

    let payload = json!({
        "k": report.k,
        "line_count": report.line_count,
        "rich_count": report.rich_count,
        "term_quadratic": report.term_quadratic,
        "term_linear": report.term_linear,
        "bound": report.bound,
        "ratio": report.ratio,
        "verified": verify,
    });
    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("k".to_string(), k.to_string());
    flags.insert("verify".to_string(), verify.to_string());
    finish("rich-points", flags, digest, vec![], payload, timings, out)
}

fn cmd_class(input: &InputArgs, out: &OutputArgs, n: u64, k: u64) -> Result<(), CliError> {
    require_json(out, "class-bound")?;
    if n < 1 {
        return Err(CliError::Fail("--n must be at least 1".to_string()));
    }
    if k < 3 {
        return Err(CliError::Fail("--k must be at least 3".to_string()));
    }
    let (config, digest) = load_input(input)?;
    let config = expect_lines(config)?;

    let started = Instant::now();
    let joints = detect_joints(&config).map_err(CliError::fail)?;
    let report = class_bound_report(&config, &joints, n, k);
    let mut timings = BTreeMap::new();
    timings.insert("detect".to_string(), ms(started));

    // Σ over the class of √N(x) is class-bounded; expose both sides.
    let class_weight = weighted_sum_of(
        joints
            .iter()
            .filter(|j| {
                j.multiplicity >= n
                    && j.multiplicity < 2 * n
                    && j.k_count as u64 >= k
                    && (j.k_count as u64) < 2 * k
            })
            .map(|j| j.multiplicity),
    );
    let payload = json!({
        "n": report.n,
        "k": report.k,
        "line_count": config.len(),
        "joint_count": joints.len(),
        "class_size": report.class_size,
        "lhs": report.lhs,
        "term1": report.term1,
        "term2": report.term2,
        "within_bound": report.lhs <= report.term1 + report.term2,
        "class_weighted_sum": incidence_core::numeric::ratio_to_f64(&class_weight),
    });
    let mut flags = BTreeMap::new();
    input_flags(input, &mut flags);
    flags.insert("n".to_string(), n.to_string());
    flags.insert("k".to_string(), k.to_string());
    finish("class-bound", flags, digest, vec![], payload, timings, out)
}
