//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored ascending with trailing zeros trimmed, tagged
//! with a variable name so restriction/elimination pipelines can't mix up
//! parameters. The zero polynomial has an empty coefficient vector and no
//! degree.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::divisors;
use crate::scalar::ExactScalar;

/// A named indeterminate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub char);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A univariate polynomial with exact rational coefficients, ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<ExactScalar>,
}

impl UniPoly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(var: Var, mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: vec![] }
    }

    pub fn constant(var: Var, c: ExactScalar) -> Self {
        Self::new(var, vec![c])
    }

    pub fn monomial(var: Var, coeff: ExactScalar, degree: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(var, coeffs)
    }

    /// The polynomial `var` itself.
    pub fn identity(var: Var) -> Self {
        Self::monomial(var, ExactScalar::one(), 1)
    }

    pub fn from_ints(var: Var, ascending: &[i64]) -> Self {
        Self::new(var, ascending.iter().map(|&c| c.into()).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of `var^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    /// Renames the indeterminate (a pure relabeling).
    pub fn rename(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn assert_same_var(&self, other: &UniPoly) {
        assert_eq!(
            self.var, other.var,
            "mixed indeterminates: {} vs {}",
            self.var, other.var
        );
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.assert_same_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.assert_same_var(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        UniPoly::new(self.var, coeffs)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(self.var, ExactScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ExactScalar::from(i as i64) * c)
            .collect();
        UniPoly::new(self.var, coeffs)
    }

    /// Substitutes another polynomial for the indeterminate (Horner).
    /// The result carries the inner polynomial's variable.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(inner.var, c.clone()));
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        self.assert_same_var(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (UniPoly::zero(self.var), self.clone());
        }
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactScalar::zero(); self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dlen - 1] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[i + j] -= &prod;
            }
            quot[i] = q;
        }
        (UniPoly::new(self.var, quot), UniPoly::new(self.var, rem))
    }

    /// Exact division; panics if the divisor does not divide exactly.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to monic form. Panics on the zero polynomial.
    pub fn monic(&self) -> UniPoly {
        let lead = self.leading().expect("monic of zero polynomial");
        self.scale(&lead.recip())
    }

    /// Primitive integer coefficients (ascending): all denominators
    /// cleared, content divided out, leading coefficient positive. The
    /// root set is unchanged. Panics on the zero polynomial.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        assert!(!self.is_zero(), "primitive form of zero polynomial");
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in &mut ints {
            *c = &*c / &content;
        }
        ints
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != ExactScalar::one() {
                        write!(f, "{a}·")?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Greatest common divisor, returned monic. At least one input must be
/// nonzero.
pub fn unipoly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    assert!(
        !(a.is_zero() && b.is_zero()),
        "gcd of two zero polynomials"
    );
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Rational roots of a polynomial with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// (root, multiplicity), sorted ascending by root.
    pub roots: Vec<(ExactScalar, u32)>,
    /// True when real non-rational roots may remain. False is a
    /// certificate that the rational roots listed are all real roots.
    pub nonrational_roots_possible: bool,
}

impl RationalRoots {
    /// Just the root values.
    pub fn values(&self) -> Vec<ExactScalar> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// Sign variations of a coefficient sequence (Descartes).
fn sign_variations(coeffs: &[ExactScalar]) -> usize {
    let mut last = 0i8;
    let mut variations = 0;
    for c in coeffs {
        let s = c.signum();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Finds every rational root with its multiplicity via the rational-root
/// theorem on the primitive integer form, verifying each candidate by
/// exact evaluation and deflating to count multiplicities.
///
/// `nonrational_roots_possible` is set when the deflated remainder could
/// still have real roots (Descartes sign counts) — or, theoretically, when
/// divisor enumeration could not be certified complete. When it is false,
/// the returned roots are provably *all* real roots.
pub fn rational_roots(p: &UniPoly) -> RationalRoots {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let var = p.var();
    let mut work = p.clone();
    let mut roots: Vec<(ExactScalar, u32)> = Vec::new();

    // Strip t^k: root 0 with multiplicity k.
    let zero_mult = work.coeffs.iter().take_while(|c| c.is_zero()).count() as u32;
    if zero_mult > 0 {
        work = UniPoly::new(var, work.coeffs[zero_mult as usize..].to_vec());
        roots.push((ExactScalar::zero(), zero_mult));
    }

    let mut candidates_complete = true;
    if work.degree().unwrap_or(0) >= 1 {
        let ints = work.primitive_integer_coeffs();
        let (nums, nc) = divisors(&ints[0]);
        let (dens, dc) = divisors(ints.last().unwrap());
        candidates_complete = nc && dc;
        let mut candidates: BTreeSet<ExactScalar> = BTreeSet::new();
        for n in &nums {
            for d in &dens {
                let c = ExactScalar::from(num_rational::BigRational::new(n.clone(), d.clone()));
                candidates.insert(c.clone());
                candidates.insert(-c);
            }
        }
        for cand in candidates {
            if !work.evaluate(&cand).is_zero() {
                continue;
            }
            // Deflate repeatedly to count the multiplicity exactly.
            let linear = UniPoly::new(var, vec![-&cand, ExactScalar::one()]);
            let mut mult = 0;
            loop {
                let (q, r) = work.divrem(&linear);
                if !r.is_zero() {
                    break;
                }
                work = q;
                mult += 1;
            }
            roots.push((cand, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));

    // After removing every rational root, `work` has no rational root
    // left; real roots can only remain if Descartes allows them on either
    // half-line.
    let deg_left = work.degree().unwrap_or(0);
    let positive_possible = sign_variations(&work.coeffs) > 0;
    let negated: Vec<ExactScalar> = work
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    let negative_possible = sign_variations(&negated) > 0;
    let nonrational_roots_possible = !candidates_complete
        || (deg_left >= 1 && (positive_possible || negative_possible));
    RationalRoots {
        roots,
        nonrational_roots_possible,
    }
}
