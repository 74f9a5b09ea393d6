//! Integer factorization sized for rational-root candidate enumeration.
//!
//! Root candidates of a primitive integer polynomial are p/q with p a
//! divisor of the constant term and q a divisor of the leading term, so we
//! need the divisors of two integers. Trial division handles everything at
//! desk scale; Miller–Rabin plus Pollard's rho mop up large cofactors. If a
//! cofactor resists (astronomically unlikely here), the enumeration reports
//! itself incomplete instead of silently dropping candidates, and callers
//! surface that through their own completeness flags.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const TRIAL_LIMIT: u64 = 100_000;
const RHO_ROUNDS: usize = 6;

/// Prime-power factorization of |n| (n nonzero). The flag reports whether
/// the factorization is certified complete.
pub fn factorize(n: &BigInt) -> (BTreeMap<BigInt, u32>, bool) {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.abs();
    let mut factors = BTreeMap::new();
    let push = |p: BigInt, factors: &mut BTreeMap<BigInt, u32>| {
        *factors.entry(p).or_insert(0) += 1;
    };
    for small in std::iter::once(2u64).chain((3..TRIAL_LIMIT).step_by(2)) {
        let d = BigInt::from(small);
        if (&d * &d) > m {
            break;
        }
        while m.is_multiple_of(&d) {
            m /= &d;
            push(d.clone(), &mut factors);
        }
    }
    let mut complete = true;
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        // No divisor below TRIAL_LIMIT: below its square, m must be prime.
        if m < BigInt::from(TRIAL_LIMIT) * TRIAL_LIMIT || is_probable_prime(&m) {
            push(m, &mut factors);
            continue;
        }
        match pollard_rho(&m) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => complete = false,
        }
    }
    (factors, complete)
}

/// All positive divisors of |n|, sorted, plus the completeness flag of the
/// underlying factorization.
pub fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let (factors, complete) = factorize(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    (divs, complete)
}

/// Miller–Rabin with a fixed base set; deterministic far past desk scale.
fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent-style Pollard rho; returns a nontrivial factor or gives up.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    for c in 1..=(RHO_ROUNDS as u32) {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut steps = 0u32;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            steps += 1;
            if steps > 1 << 18 {
                break;
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}
