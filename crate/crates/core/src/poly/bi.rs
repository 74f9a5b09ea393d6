//! Bivariate polynomials and Sylvester resultants.
//!
//! A `BiPoly` is a polynomial in an *outer* variable whose coefficients are
//! univariate polynomials in an *inner* variable. The nesting is explicit
//! and can be transposed, so elimination can target either variable. The
//! resultant is computed as the determinant of the Sylvester matrix over
//! the coefficient ring, using Bareiss fraction-free elimination (every
//! division is exact by construction), which avoids coefficient blowup
//! without ever leaving exact arithmetic.

use std::fmt;

use super::uni::{UniPoly, Var};
use super::PolyError;
use crate::scalar::ExactScalar;

/// A polynomial in `outer` with coefficients in `Q[inner]`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    outer: Var,
    inner: Var,
    /// coeffs[i] is the coefficient of outer^i.
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(outer: Var, inner: Var, mut coeffs: Vec<UniPoly>) -> Self {
        assert_ne!(outer, inner, "outer and inner variables must differ");
        for c in &coeffs {
            assert_eq!(c.var(), inner, "coefficient in wrong variable");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            outer,
            inner,
            coeffs,
        }
    }

    pub fn zero(outer: Var, inner: Var) -> Self {
        Self::new(outer, inner, vec![])
    }

    /// Embeds p(outer): constant coefficients in the inner variable.
    pub fn from_outer(p: &UniPoly, inner: Var) -> Self {
        let outer = p.var();
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| UniPoly::constant(inner, c.clone()))
            .collect();
        Self::new(outer, inner, coeffs)
    }

    /// Embeds q(inner): a single outer-degree-0 coefficient.
    pub fn from_inner(q: &UniPoly, outer: Var) -> Self {
        Self::new(outer, q.var(), vec![q.clone()])
    }

    pub fn outer(&self) -> Var {
        self.outer
    }

    pub fn inner(&self) -> Var {
        self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_outer(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_inner(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// Total degree: max over terms of (outer exponent + inner exponent).
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| i + d))
            .max()
    }

    /// Coefficient of outer^i.
    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.inner))
    }

    fn assert_same_shape(&self, other: &BiPoly) {
        assert_eq!(self.outer, other.outer, "outer variable mismatch");
        assert_eq!(self.inner, other.inner, "inner variable mismatch");
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        self.assert_same_shape(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        BiPoly::new(self.outer, self.inner, coeffs)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(
            self.outer,
            self.inner,
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        self.assert_same_shape(other);
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(self.outer, self.inner);
        }
        let mut coeffs =
            vec![UniPoly::zero(self.inner); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(self.outer, self.inner, coeffs)
    }

    /// Swaps the nesting order.
    pub fn transpose(&self) -> BiPoly {
        let inner_deg = match self.degree_inner() {
            None => return BiPoly::zero(self.inner, self.outer),
            Some(d) => d,
        };
        let coeffs = (0..=inner_deg)
            .map(|j| {
                UniPoly::new(
                    self.outer,
                    self.coeffs.iter().map(|c| c.coeff(j)).collect(),
                )
            })
            .collect();
        BiPoly::new(self.inner, self.outer, coeffs)
    }

    /// Exact evaluation at (outer, inner) values.
    pub fn evaluate(&self, outer_val: &ExactScalar, inner_val: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * outer_val + &c.evaluate(inner_val);
        }
        acc
    }

    /// Substitutes a value for the outer variable, leaving a polynomial in
    /// the inner variable.
    pub fn substitute_outer(&self, value: &ExactScalar) -> UniPoly {
        let mut acc = UniPoly::zero(self.inner);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(value).add(c);
        }
        acc
    }

    /// Substitutes a value for the inner variable, leaving a polynomial in
    /// the outer variable.
    pub fn substitute_inner(&self, value: &ExactScalar) -> UniPoly {
        UniPoly::new(
            self.outer,
            self.coeffs.iter().map(|c| c.evaluate(value)).collect(),
        )
    }

    /// The exact quotient (p(outer) − p(inner)) / (outer − inner), from the
    /// telescoping identity (tⁱ − sⁱ)/(t − s) = Σ_{u+v=i−1} tᵘ sᵛ.
    pub fn difference_quotient(p: &UniPoly, outer: Var, inner: Var) -> BiPoly {
        let n = p.coeffs().len();
        let mut coeffs = Vec::new();
        for u in 0..n.saturating_sub(1) {
            // Coefficient of outer^u: Σ_{i > u} a_i · inner^{i-1-u}.
            let tail: Vec<ExactScalar> = (u + 1..n).map(|i| p.coeff(i)).collect();
            coeffs.push(UniPoly::new(inner, tail));
        }
        BiPoly::new(outer, inner, coeffs)
    }
}

impl fmt::Display for BiPoly {
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
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·{}", self.outer)?,
                _ => write!(f, "({c})·{}^{i}", self.outer)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orients `p` so its outer variable is `eliminate`.
fn orient(p: &BiPoly, eliminate: Var) -> Result<BiPoly, PolyError> {
    if p.outer == eliminate {
        Ok(p.clone())
    } else if p.inner == eliminate {
        Ok(p.transpose())
    } else {
        Err(PolyError::VariableMismatch(format!(
            "polynomial in ({}, {}) cannot eliminate {}",
            p.outer, p.inner, eliminate
        )))
    }
}

/// The Sylvester matrix of f and g with respect to their outer variable:
/// (l+m)×(l+m) with m shifted rows of f's descending coefficients followed
/// by l shifted rows of g's, entries in Q[inner].
pub fn sylvester_matrix(f: &BiPoly, g: &BiPoly) -> Vec<Vec<UniPoly>> {
    f.assert_same_shape(g);
    let l = f.degree_outer().expect("f nonzero");
    let m = g.degree_outer().expect("g nonzero");
    let n = l + m;
    let zero = UniPoly::zero(f.inner);
    let mut matrix = vec![vec![zero; n]; n];
    for r in 0..m {
        for (k, c) in (0..=l).rev().enumerate() {
            matrix[r][r + k] = f.coeff(c);
        }
    }
    for r in 0..l {
        for (k, c) in (0..=m).rev().enumerate() {
            matrix[m + r][r + k] = g.coeff(c);
        }
    }
    matrix
}

/// Determinant over Q[var] by Bareiss fraction-free elimination with row
/// pivoting; every division is exact.
fn det_bareiss(mut m: Vec<Vec<UniPoly>>, var: Var) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(var, ExactScalar::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(var, ExactScalar::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return UniPoly::zero(var),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = UniPoly::zero(var);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant of f and g with respect to `eliminate`.
///
/// Both polynomials must have positive degree in the eliminated variable
/// ([`PolyError::DegreeZero`] otherwise). The result is a polynomial in the
/// other variable; it is identically zero exactly when f and g share a
/// factor of positive degree in the eliminated variable, and it vanishes at
/// every value the remaining variable takes on a common zero of f and g.
pub fn sylvester_resultant(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<UniPoly, PolyError> {
    let f = orient(f, eliminate)?;
    let g = orient(g, eliminate)?;
    if f.inner != g.inner {
        return Err(PolyError::VariableMismatch(format!(
            "remaining variables differ: {} vs {}",
            f.inner, g.inner
        )));
    }
    let fd = f.degree_outer().unwrap_or(0);
    let gd = g.degree_outer().unwrap_or(0);
    if f.is_zero() || fd == 0 {
        return Err(PolyError::DegreeZero {
            var: eliminate,
            which: "first polynomial",
        });
    }
    if g.is_zero() || gd == 0 {
        return Err(PolyError::DegreeZero {
            var: eliminate,
            which: "second polynomial",
        });
    }
    let res = det_bareiss(sylvester_matrix(&f, &g), f.inner);
    // Degree bound: deg Res ≤ deg f · deg g (total degrees).
    if let (Some(rd), Some(a), Some(b)) = (res.degree(), f.total_degree(), g.total_degree()) {
        debug_assert!(rd <= a * b, "resultant degree {rd} exceeds bound {}", a * b);
    }
    Ok(res)
}
