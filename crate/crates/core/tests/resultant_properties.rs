//! Algebraic laws of the Sylvester resultant on seeded random pairs:
//! the mixed degree bound, swap antisymmetry, specialization soundness,
//! planted common factors forcing a zero resultant, and planted common
//! points appearing among the resultant's roots.

mod common;

use incidence_core::poly::{sylvester_resultant, unipoly_gcd, BiPoly, UniPoly, Var};
use incidence_core::scalar::ExactScalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const X: Var = Var('x');
const Y: Var = Var('y');

/// A random bivariate polynomial with outer degree exactly dx (when
/// dx > 0) and inner degrees at most dy, integer coefficients in [-3, 3].
fn random_bipoly(rng: &mut ChaCha8Rng, dx: usize, dy: usize) -> BiPoly {
    loop {
        let coeffs: Vec<UniPoly> = (0..=dx)
            .map(|_| {
                let c: Vec<i64> = (0..=dy).map(|_| rng.gen_range(-3..=3)).collect();
                UniPoly::from_ints(Y, &c)
            })
            .collect();
        let p = BiPoly::new(X, Y, coeffs);
        if p.degree_outer() == Some(dx) {
            return p;
        }
    }
}

fn evaluate_bipoly(p: &BiPoly, x0: i64, y0: i64) -> ExactScalar {
    p.evaluate(&ExactScalar::from(x0), &ExactScalar::from(y0))
}

#[test]
fn degree_bound_swap_and_specialization_200_pairs() {
    for seed in 0..200u64 {
        let mut rng = common::rng(seed);
        let (mx, my) = (rng.gen_range(1..=3), rng.gen_range(0..=2));
        let (nx, ny) = (rng.gen_range(1..=3), rng.gen_range(0..=2));
        let f = random_bipoly(&mut rng, mx, my);
        let g = random_bipoly(&mut rng, nx, ny);

        let res = sylvester_resultant(&f, &g, X).unwrap();

        // Mixed degree bound from the Sylvester matrix shape.
        let bound = nx * f.degree_inner().unwrap_or(0) + mx * g.degree_inner().unwrap_or(0);
        assert!(
            res.degree().unwrap_or(0) <= bound,
            "degree bound violated at seed {seed}: deg {} > {bound}",
            res.degree().unwrap_or(0)
        );

        // Swapping the operands flips the sign by (-1)^{mx·nx}.
        let swapped = sylvester_resultant(&g, &f, X).unwrap();
        let sign = if (mx * nx) % 2 == 0 { 1 } else { -1 };
        assert_eq!(
            res,
            swapped.scale(&ExactScalar::from(sign)),
            "swap antisymmetry failed at seed {seed}"
        );

        // Wherever the resultant does not vanish, the specialized pair is
        // coprime: a common root would force the determinant to zero.
        for y0 in -2..=2i64 {
            if res.evaluate(&ExactScalar::from(y0)).is_zero() {
                continue;
            }
            let fy = f.substitute_inner(&ExactScalar::from(y0));
            let gy = g.substitute_inner(&ExactScalar::from(y0));
            if fy.is_zero() || gy.is_zero() {
                continue;
            }
            let gcd = unipoly_gcd(&fy, &gy);
            assert!(
                gcd.is_constant(),
                "nonzero resultant but common factor at seed {seed}, y = {y0}"
            );
        }
    }
}

#[test]
fn planted_common_factor_zeroes_the_resultant_100_pairs() {
    for seed in 0..100u64 {
        let mut rng = common::rng(seed ^ 0xFAC7_0000);
        let degs: Vec<(usize, usize)> =
            (0..3).map(|_| (rng.gen_range(1..=2), rng.gen_range(0..=1))).collect();
        let h = random_bipoly(&mut rng, degs[0].0, degs[0].1);
        let f1 = random_bipoly(&mut rng, degs[1].0, degs[1].1);
        let g1 = random_bipoly(&mut rng, degs[2].0, degs[2].1);
        let f = h.mul(&f1);
        let g = h.mul(&g1);
        let res = sylvester_resultant(&f, &g, X).unwrap();
        assert!(
            res.is_zero(),
            "shared factor not detected at seed {seed}: resultant {res}"
        );
    }
}

#[test]
fn planted_common_point_is_a_resultant_root_100_pairs() {
    let mut planted_nonzero = 0usize;
    for seed in 0..100u64 {
        let mut rng = common::rng(seed ^ 0x9017_0000);
        let x0 = rng.gen_range(-3..=3i64);
        let y0 = rng.gen_range(-3..=3i64);
        // Subtracting the value plants an exact common zero at (x0, y0)
        // without disturbing the positive outer degree.
        let degs: Vec<(usize, usize)> =
            (0..2).map(|_| (rng.gen_range(1..=3), rng.gen_range(0..=2))).collect();
        let f_raw = random_bipoly(&mut rng, degs[0].0, degs[0].1);
        let g_raw = random_bipoly(&mut rng, degs[1].0, degs[1].1);
        let f = f_raw.sub(&BiPoly::from_inner(
            &UniPoly::constant(Y, evaluate_bipoly(&f_raw, x0, y0)),
            X,
        ));
        let g = g_raw.sub(&BiPoly::from_inner(
            &UniPoly::constant(Y, evaluate_bipoly(&g_raw, x0, y0)),
            X,
        ));
        assert!(evaluate_bipoly(&f, x0, y0).is_zero());
        assert!(evaluate_bipoly(&g, x0, y0).is_zero());
        if f.degree_outer().unwrap_or(0) == 0 || g.degree_outer().unwrap_or(0) == 0 {
            continue; // the subtraction can only lower the constant term
        }
        let res = sylvester_resultant(&f, &g, X).unwrap();
        assert!(
            res.evaluate(&ExactScalar::from(y0)).is_zero(),
            "planted common point missed at seed {seed}"
        );
        if !res.is_zero() {
            planted_nonzero += 1;
        }
    }
    // The suite must exercise the interesting case, not just Res ≡ 0.
    assert!(planted_nonzero >= 50, "only {planted_nonzero} nonzero resultants");
}
