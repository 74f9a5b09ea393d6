//! High-precision numeric helpers for report quantities.
//!
//! Bound reports quote values like Σ √N or L^{3/2} that are irrational in
//! general. We approximate them as rationals via integer square/cube roots
//! of scaled integers, which gives a guaranteed relative error below
//! `1e-18` per root — far inside the `1e-12` budget every report promises —
//! and keeps the whole computation deterministic. Floats appear only at the
//! final conversion for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decimal digits of scaling used for root extraction.
const ROOT_SCALE: u32 = 18;

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// √x as a rational with relative error < 10^-18. Panics on negative input.
pub fn sqrt_ratio(x: &BigRational) -> BigRational {
    assert!(!x.is_negative(), "square root of negative value");
    if x.is_zero() {
        return BigRational::zero();
    }
    // √(p/q) = √(p·q) / q; floor-isqrt the scaled integer.
    let scaled = x.numer() * x.denom() * pow10(2 * ROOT_SCALE);
    let root = scaled.sqrt();
    BigRational::new(root, x.denom() * pow10(ROOT_SCALE))
}

/// √n for an unsigned integer, same error guarantee as [`sqrt_ratio`].
pub fn sqrt_int(n: u64) -> BigRational {
    sqrt_ratio(&BigRational::from_integer(BigInt::from(n)))
}

/// n^{3/2} = √(n³), same error guarantee as [`sqrt_ratio`].
pub fn pow_three_halves(n: u64) -> BigRational {
    let cube = BigInt::from(n).pow(3);
    sqrt_ratio(&BigRational::from_integer(cube))
}

/// n^{2/3} = ∛(n²) as a rational with relative error < 10^-18.
pub fn pow_two_thirds(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let scaled = BigInt::from(n).pow(2) * pow10(3 * ROOT_SCALE);
    let root = scaled.nth_root(3);
    BigRational::new(root, pow10(ROOT_SCALE))
}

/// Nearest-float view of a rational, for report emission only.
pub fn ratio_to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
