//! Seeded configuration generators shared by the integration suites.
//! Everything is deterministic in the seed so failures replay exactly.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeSet;

use incidence_core::geom::{Direction3, Line3, Point3};
use incidence_core::joints::LineConfig;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random line with base coordinates in [-bound, bound] and direction
/// components in [-2, 2], redrawn until the direction is nonzero.
pub fn random_line(rng: &mut ChaCha8Rng, bound: i64, id: u32) -> Line3 {
    loop {
        let p = (
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        let d = (
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
        );
        if let Ok(line) = Line3::from_ints(p, d, id) {
            return line;
        }
    }
}

/// Axis-parallel lines through the integer grid {0..k-1}³ (3k² lines).
pub fn grid_lines(k: i64) -> Vec<Line3> {
    let mut lines = Vec::new();
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

/// `count` lines through `center` with pairwise distinct random directions.
pub fn bush_through(
    rng: &mut ChaCha8Rng,
    center: (i64, i64, i64),
    count: usize,
    first_id: u32,
) -> Vec<Line3> {
    let mut dirs = BTreeSet::new();
    let mut lines = Vec::new();
    while lines.len() < count {
        let d = (
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        );
        let Ok(dir) = Direction3::from_ints(d.0, d.1, d.2) else {
            continue;
        };
        if !dirs.insert(dir) {
            continue;
        }
        let id = first_id + lines.len() as u32;
        lines.push(Line3::from_ints(center, d, id).unwrap());
    }
    lines
}

/// A small seeded configuration from one of three families: a thinned grid
/// with extra random lines, a bush with stragglers, or fully random lines.
/// At most `max_lines` lines, small coordinates so coincidences are common.
pub fn small_config(seed: u64, max_lines: usize) -> LineConfig {
    let mut rng = rng(seed);
    let family = seed % 3;
    let mut lines: Vec<Line3> = Vec::new();
    match family {
        0 => {
            let k = rng.gen_range(1..=2);
            for line in grid_lines(k) {
                if rng.gen_bool(0.8) {
                    lines.push(line);
                }
            }
            let extras = rng.gen_range(0..=3);
            for _ in 0..extras {
                let id = lines.len() as u32 + 100;
                lines.push(random_line(&mut rng, 2, id));
            }
        }
        1 => {
            let center = (
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
            );
            let count = rng.gen_range(3..=8);
            lines = bush_through(&mut rng, center, count, 0);
            let extras = rng.gen_range(0..=4);
            for _ in 0..extras {
                let id = lines.len() as u32 + 100;
                lines.push(random_line(&mut rng, 3, id));
            }
        }
        _ => {
            let count = rng.gen_range(3..=max_lines);
            for i in 0..count {
                lines.push(random_line(&mut rng, 2, i as u32));
            }
        }
    }
    lines.truncate(max_lines);
    LineConfig::new(lines, format!("seeded test config {seed}"))
}

/// A random point with integer coordinates in [-bound, bound].
pub fn random_point(rng: &mut ChaCha8Rng, bound: i64) -> Point3 {
    Point3::from_ints(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
    )
}
