//! Seeded deterministic configuration generators and the `--gen` spec
//! grammar. Every generator is a pure function of its parameters, so a
//! spec string is a complete, reproducible description of its output.

use incidence_core::curves::{CurveId, ParamCurve, CURVE_PARAM};
use incidence_core::geom::{det3_int, Direction3, Line3, Point3};
use incidence_core::joints::LineConfig;
use incidence_core::poly::UniPoly;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Errors from spec parsing and generation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("bad generator spec '{spec}': {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("parameter out of range in '{spec}': {reason}")]
    ParameterOutOfRange { spec: String, reason: String },
}

/// What a generator produced.
#[derive(Debug, Clone)]
pub enum Generated {
    Lines(LineConfig),
    Curves(Vec<ParamCurve>),
    Points(Vec<Point3>),
}

impl Generated {
    pub fn kind(&self) -> &'static str {
        match self {
            Generated::Lines(_) => "lines",
            Generated::Curves(_) => "curves",
            Generated::Points(_) => "points",
        }
    }
}

fn bad(spec: &str, reason: impl Into<String>) -> GenError {
    GenError::BadSpec { spec: spec.to_string(), reason: reason.into() }
}

fn out_of_range(spec: &str, reason: impl Into<String>) -> GenError {
    GenError::ParameterOutOfRange { spec: spec.to_string(), reason: reason.into() }
}

/// Parses an integer token; `seed`-prefixed tokens are accepted wherever a
/// seed is expected, matching the written form `bush:20:seed1`.
fn int_token(spec: &str, token: &str) -> Result<u64, GenError> {
    let digits = token.strip_prefix("seed").unwrap_or(token);
    digits
        .parse::<u64>()
        .map_err(|_| bad(spec, format!("expected an integer, found '{token}'")))
}

/// Parses and runs a generator spec:
/// `grid:K`, `bush:L:seedS`, `random_lines:L:seedS[:BOUND]`,
/// `coplanar_pencil:L`, `mixed:SPEC+SPEC+…`, `curve_bush:L:B:seedS`,
/// `curve_grid:K`, `random:N:seedS` (points).
pub fn generate(spec: &str) -> Result<Generated, GenError> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<&str> = if rest.is_empty() { vec![] } else { rest.split(':').collect() };
    let expect = |n: usize| -> Result<(), GenError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(spec, format!("expected {n} parameter(s), found {}", args.len())))
        }
    };
    match kind {
        "grid" => {
            expect(1)?;
            let k = int_token(spec, args[0])?;
            if !(1..=60).contains(&k) {
                return Err(out_of_range(spec, "grid size must be in 1..=60"));
            }
            Ok(Generated::Lines(LineConfig::new(grid_lines(k as i64), spec)))
        }
        "bush" => {
            expect(2)?;
            let l = int_token(spec, args[0])?;
            let seed = int_token(spec, args[1])?;
            if !(1..=300).contains(&l) {
                return Err(out_of_range(spec, "bush size must be in 1..=300"));
            }
            let dirs = spanning_directions(l as usize, seed);
            let lines = dirs
                .iter()
                .enumerate()
                .map(|(i, d)| line_through_origin(d, i as u32))
                .collect();
            Ok(Generated::Lines(LineConfig::new(lines, spec)))
        }
        "random_lines" => {
            if args.len() != 2 && args.len() != 3 {
                return Err(bad(spec, "expected random_lines:L:seedS[:BOUND]"));
            }
            let l = int_token(spec, args[0])?;
            let seed = int_token(spec, args[1])?;
            let bound = if args.len() == 3 { int_token(spec, args[2])? } else { 9 };
            if !(1..=100_000).contains(&l) {
                return Err(out_of_range(spec, "line count must be in 1..=100000"));
            }
            if !(1..=1_000_000).contains(&bound) {
                return Err(out_of_range(spec, "coordinate bound must be in 1..=1000000"));
            }
            Ok(Generated::Lines(LineConfig::new(
                random_lines(l as usize, seed, bound as i64),
                spec,
            )))
        }
        "coplanar_pencil" => {
            expect(1)?;
            let l = int_token(spec, args[0])?;
            if !(1..=100_000).contains(&l) {
                return Err(out_of_range(spec, "line count must be in 1..=100000"));
            }
            let lines = (0..l)
                .map(|i| Line3::from_ints((0, 0, 0), (1, i as i64, 0), i as u32).unwrap())
                .collect();
            Ok(Generated::Lines(LineConfig::new(lines, spec)))
        }
        "mixed" => {
            if rest.is_empty() {
                return Err(bad(spec, "expected mixed:SPEC+SPEC+…"));
            }
            let mut lines: Vec<Line3> = Vec::new();
            for part in rest.split('+') {
                match generate(part)? {
                    Generated::Lines(config) => {
                        let offset = lines.len() as u32;
                        lines.extend(
                            config
                                .lines()
                                .iter()
                                .map(|l| l.clone().with_id(incidence_core::geom::LineId(
                                    l.id.0 + offset,
                                ))),
                        );
                    }
                    _ => return Err(bad(spec, format!("'{part}' is not a line generator"))),
                }
            }
            Ok(Generated::Lines(LineConfig::new(lines, spec)))
        }
        "curve_bush" => {
            expect(3)?;
            let l = int_token(spec, args[0])?;
            let b = int_token(spec, args[1])?;
            let seed = int_token(spec, args[2])?;
            if !(1..=500).contains(&l) {
                return Err(out_of_range(spec, "curve count must be in 1..=500"));
            }
            if !(1..=32).contains(&b) {
                return Err(out_of_range(spec, "degree bound must be in 1..=32"));
            }
            Ok(Generated::Curves(curve_bush(l as usize, b as u32, seed)))
        }
        "curve_grid" => {
            expect(1)?;
            let k = int_token(spec, args[0])?;
            if !(1..=60).contains(&k) {
                return Err(out_of_range(spec, "grid size must be in 1..=60"));
            }
            let curves = grid_lines(k as i64)
                .iter()
                .enumerate()
                .map(|(i, l)| line_as_curve(l, i as u32))
                .collect();
            Ok(Generated::Curves(curves))
        }
        "random" => {
            expect(2)?;
            let n = int_token(spec, args[0])?;
            let seed = int_token(spec, args[1])?;
            if !(1..=1_000_000).contains(&n) {
                return Err(out_of_range(spec, "point count must be in 1..=1000000"));
            }
            Ok(Generated::Points(random_points(n as usize, seed)))
        }
        _ => Err(GenError::UnknownGenerator(kind.to_string())),
    }
}

/// The 3k² axis-parallel lines through the k×k×k integer grid.
pub fn grid_lines(k: i64) -> Vec<Line3> {
    let mut lines = Vec::with_capacity((3 * k * k) as usize);
    let mut id = 0u32;
    for a in 0..k {
        for b in 0..k {
            for (p, d) in [
                ((0, a, b), (1, 0, 0)),
                ((a, 0, b), (0, 1, 0)),
                ((a, b, 0), (0, 0, 1)),
            ] {
                lines.push(Line3::from_ints(p, d, id).unwrap());
                id += 1;
            }
        }
    }
    lines
}

/// `count` seeded directions such that *every* triple spans: each accepted
/// direction has nonzero determinant with every previously accepted pair,
/// so any three of them are linearly independent by construction.
pub fn spanning_directions(count: usize, seed: u64) -> Vec<Direction3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dirs: Vec<Direction3> = Vec::with_capacity(count);
    while dirs.len() < count {
        let d = [
            rng.gen_range(-9..=9i64),
            rng.gen_range(-9..=9i64),
            rng.gen_range(-9..=9i64),
        ];
        let Ok(candidate) = Direction3::from_ints(d[0], d[1], d[2]) else {
            continue;
        };
        if dirs.contains(&candidate) {
            continue;
        }
        let independent_with_all_pairs = (0..dirs.len()).all(|i| {
            (i + 1..dirs.len()).all(|j| {
                det3_int(
                    dirs[i].components(),
                    dirs[j].components(),
                    candidate.components(),
                ) != BigInt::from(0)
            })
        });
        // The first two accepted directions only need to be distinct,
        // which the containment check above already guarantees.
        if dirs.len() >= 2 && !independent_with_all_pairs {
            continue;
        }
        dirs.push(candidate);
    }
    dirs
}

fn line_through_origin(dir: &Direction3, id: u32) -> Line3 {
    let d = dir.components();
    let coords: [incidence_core::scalar::ExactScalar; 3] = [
        d[0].clone().into(),
        d[1].clone().into(),
        d[2].clone().into(),
    ];
    Line3::new(&Point3::origin(), &coords, incidence_core::geom::LineId(id)).unwrap()
}

/// Seeded random lines with base coordinates in [-bound, bound] and small
/// nonzero directions.
pub fn random_lines(count: usize, seed: u64, bound: i64) -> Vec<Line3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::with_capacity(count);
    while lines.len() < count {
        let p = (
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        let d = (
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        );
        if let Ok(line) = Line3::from_ints(p, d, lines.len() as u32) {
            lines.push(line);
        }
    }
    lines
}

/// Seeded random integer points in [-99, 99]³.
pub fn random_points(count: usize, seed: u64) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Point3::from_ints(
                rng.gen_range(-99..=99),
                rng.gen_range(-99..=99),
                rng.gen_range(-99..=99),
            )
        })
        .collect()
}

/// L curves through the origin along seeded all-triples-spanning
/// directions: γ_i(t) = d_i · (t + t^m) with m the largest odd number ≤ b
/// (so t + t^m is strictly increasing and vanishes only at t = 0, making
/// each curve injective and the origin the family's sole meeting point),
/// with tangent d_i at t = 0.
pub fn curve_bush(count: usize, degree_bound: u32, seed: u64) -> Vec<ParamCurve> {
    let m = if degree_bound % 2 == 1 { degree_bound } else { degree_bound - 1 };
    let dirs = spanning_directions(count, seed);
    dirs.iter()
        .enumerate()
        .map(|(i, dir)| {
            let d = dir.components();
            let coord = |axis: usize| {
                let c: i64 = (&d[axis]).try_into().expect("small direction component");
                if m == 1 {
                    UniPoly::from_ints(CURVE_PARAM, &[0, 2 * c])
                } else {
                    let mut coeffs = vec![0i64; m as usize + 1];
                    coeffs[1] = c;
                    coeffs[m as usize] = c;
                    UniPoly::from_ints(CURVE_PARAM, &coeffs)
                }
            };
            ParamCurve::new(coord(0), coord(1), coord(2), degree_bound, CurveId(i as u32))
                .expect("bush curves are valid")
        })
        .collect()
}

/// The degree-one curve tracing a line.
pub fn line_as_curve(line: &Line3, id: u32) -> ParamCurve {
    let base = line.base().coords();
    let dir = line.dir().components();
    let coord = |i: usize| {
        UniPoly::new(
            CURVE_PARAM,
            vec![base[i].clone(), dir[i].clone().into()],
        )
    };
    ParamCurve::new(coord(0), coord(1), coord(2), 1, CurveId(id))
        .expect("a line is a valid degree-one curve")
}
