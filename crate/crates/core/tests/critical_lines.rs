//! The critical-line census on one hundred seeded plane-pencil products:
//! two to four distinct planes through a common line. The census must
//! report exactly the common axis as critical — lines lying in a single
//! plane, parallel offsets, and strangers must all be rejected — and the
//! (deg p)² cap must hold.

mod common;

use incidence_core::geom::Line3;
use incidence_core::poly::MultiPoly;
use incidence_core::scalar::ExactScalar;
use incidence_core::surfaces::critical_line_census;
use rand::Rng;

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn is_zero(v: [i64; 3]) -> bool {
    v == [0, 0, 0]
}

/// The linear form n · (X − q) as a polynomial in x, y, z.
fn plane_through(n: [i64; 3], q: [i64; 3]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    let mut shift = 0i64;
    for (axis, (ni, qi)) in n.iter().zip(q).enumerate() {
        p = p.add(&MultiPoly::coordinate(axis).scale(&ExactScalar::from(*ni)));
        shift += ni * qi;
    }
    p.add(&MultiPoly::constant(ExactScalar::from(-shift)))
}

#[test]
fn pencil_products_have_exactly_the_axis_critical_100_instances() {
    for seed in 0..100u64 {
        let mut rng = common::rng(seed ^ 0xC217_0000);
        let q = [
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
            rng.gen_range(-4..=4),
        ];
        let v = loop {
            let v = [
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
            ];
            if !is_zero(v) {
                break v;
            }
        };
        // Two independent normals orthogonal to the axis direction.
        let axis_e = if cross(v, [1, 0, 0]) != [0, 0, 0] {
            [1, 0, 0]
        } else {
            [0, 1, 0]
        };
        let n1 = cross(v, axis_e);
        let n2 = cross(v, n1);
        assert!(!is_zero(n1) && !is_zero(n2));

        // Pairwise non-proportional combinations a·n1 + b·n2.
        let m = rng.gen_range(2..=4usize);
        let mut used: Vec<(i64, i64)> = Vec::new();
        while used.len() < m {
            let a = rng.gen_range(-2..=2i64);
            let b = rng.gen_range(-2..=2i64);
            if (a, b) == (0, 0) {
                continue;
            }
            if used.iter().any(|&(c, d)| a * d - b * c == 0) {
                continue;
            }
            used.push((a, b));
        }
        let normals: Vec<[i64; 3]> = used
            .iter()
            .map(|&(a, b)| {
                [
                    a * n1[0] + b * n2[0],
                    a * n1[1] + b * n2[1],
                    a * n1[2] + b * n2[2],
                ]
            })
            .collect();
        let product = MultiPoly::from_factors(
            normals.iter().map(|&n| (plane_through(n, q), 1)).collect(),
        );

        let axis = Line3::from_ints((q[0], q[1], q[2]), (v[0], v[1], v[2]), 0).unwrap();
        let mut candidates = vec![axis.clone()];
        // A line inside exactly one plane, crossing the axis at q.
        for (i, &n) in normals.iter().enumerate() {
            let w = cross(n, v);
            assert!(!is_zero(w), "normal and axis direction are orthogonal");
            candidates
                .push(Line3::from_ints((q[0], q[1], q[2]), (w[0], w[1], w[2]), 1 + i as u32).unwrap());
        }
        // A parallel offset of the axis inside the first plane.
        let w0 = cross(normals[0], v);
        candidates.push(
            Line3::from_ints(
                (q[0] + w0[0], q[1] + w0[1], q[2] + w0[2]),
                (v[0], v[1], v[2]),
                90,
            )
            .unwrap(),
        );
        // A random stranger.
        candidates.push(common::random_line(&mut rng, 6, 91));

        let census = critical_line_census(&product, &candidates).unwrap();
        let expected = vec![axis];
        assert_eq!(
            census.critical, expected,
            "census mismatch at seed {seed} with {m} planes"
        );
        assert_eq!(census.bound, (m * m) as u64);
        assert!(census.within_bound);
    }
}
