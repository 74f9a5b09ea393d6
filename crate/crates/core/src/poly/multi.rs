//! Sparse polynomials in the three spatial coordinates.
//!
//! Terms live in a map from exponent triples (x, y, z) to nonzero rational
//! coefficients. A polynomial built as a product can carry its factored
//! form alongside the expanded terms — the partition engine relies on this
//! to take square-free parts exactly. For polynomials arriving without a
//! factorization, `square_free_part` either certifies the input square-free
//! (restricted-gcd probe on fixed sample lines) or refuses, rather than
//! guessing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::uni::{UniPoly, Var};
use super::PolyError;
use crate::geom::{Line3, Point3};
use crate::scalar::ExactScalar;

/// Default variable used for restrictions to lines.
pub const RESTRICTION_VAR: Var = Var('t');

/// A sparse trivariate polynomial with exact rational coefficients.
///
/// Equality compares expanded terms only; the optional factored form is an
/// annotation (its expansion always equals the stored terms).
#[derive(Clone)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 3], ExactScalar>,
    factors: Option<Vec<(MultiPoly, u32)>>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            factors: None,
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0], c);
        }
        MultiPoly {
            terms,
            factors: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    /// The monomial c·x^a·y^b·z^c.
    pub fn monomial(exps: [u32; 3], coeff: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        MultiPoly {
            terms,
            factors: None,
        }
    }

    /// The coordinate polynomial: 0 → x, 1 → y, 2 → z.
    pub fn coordinate(axis: usize) -> Self {
        let mut exps = [0, 0, 0];
        exps[axis] = 1;
        Self::monomial(exps, ExactScalar::one())
    }

    /// Builds from (exponents, coefficient) pairs, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], ExactScalar)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds a product, expanding it and remembering the factors.
    /// Factored forms inside the factors themselves are stripped.
    pub fn from_factors(factors: Vec<(MultiPoly, u32)>) -> Self {
        let mut expanded = Self::one();
        let mut stored = Vec::with_capacity(factors.len());
        for (f, e) in factors {
            for _ in 0..e {
                expanded = expanded.mul(&f);
            }
            let mut bare = f;
            bare.factors = None;
            stored.push((bare, e));
        }
        expanded.factors = Some(stored);
        expanded
    }

    fn add_term(&mut self, exps: [u32; 3], coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &ExactScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The factored form, if the polynomial was built as a product.
    pub fn factored_form(&self) -> Option<&[(MultiPoly, u32)]> {
        self.factors.as_deref()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.factors = None;
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            factors: None,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
            factors: None,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation with cached coordinate powers.
    pub fn evaluate(&self, p: &Point3) -> ExactScalar {
        let coords = [&p.x, &p.y, &p.z];
        let mut powers: [Vec<ExactScalar>; 3] =
            [vec![ExactScalar::one()], vec![ExactScalar::one()], vec![ExactScalar::one()]];
        for axis in 0..3 {
            let max = self.terms.keys().map(|e| e[axis]).max().unwrap_or(0);
            for i in 1..=max as usize {
                let next = &powers[axis][i - 1] * coords[axis];
                powers[axis].push(next);
            }
        }
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for axis in 0..3 {
                term *= &powers[axis][e[axis] as usize];
            }
            acc += &term;
        }
        acc
    }

    /// The three partial derivatives.
    pub fn gradient(&self) -> [MultiPoly; 3] {
        let partial = |axis: usize| {
            let mut out = Self::zero();
            for (e, c) in &self.terms {
                if e[axis] == 0 {
                    continue;
                }
                let mut d = *e;
                d[axis] -= 1;
                out.add_term(d, c * &ExactScalar::from(e[axis] as i64));
            }
            out
        };
        [partial(0), partial(1), partial(2)]
    }

    /// Restriction to a line: the univariate polynomial q(t) = p(base + t·dir).
    pub fn restrict_to_line(&self, line: &Line3) -> UniPoly {
        let var = RESTRICTION_VAR;
        let base = line.base().coords();
        let dir = line.dir();
        // Linear substitutions per axis, with cached powers.
        let mut powers: Vec<Vec<UniPoly>> = Vec::with_capacity(3);
        for axis in 0..3 {
            let lin = UniPoly::new(var, vec![base[axis].clone(), dir.scalar(axis)]);
            let max = self.terms.keys().map(|e| e[axis]).max().unwrap_or(0);
            let mut axis_powers = vec![UniPoly::constant(var, ExactScalar::one())];
            for i in 1..=max as usize {
                let next = axis_powers[i - 1].mul(&lin);
                axis_powers.push(next);
            }
            powers.push(axis_powers);
        }
        let mut acc = UniPoly::zero(var);
        for (e, c) in &self.terms {
            let mut term = UniPoly::constant(var, c.clone());
            for axis in 0..3 {
                term = term.mul(&powers[axis][e[axis] as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Leading coefficient in graded-lex order (degree first, then x > y > z).
    fn graded_lex_leading(&self) -> Option<(&[u32; 3], &ExactScalar)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().sum::<u32>(), *e))
    }

    /// Scales so the graded-lex leading coefficient is 1, giving factors a
    /// canonical representative for deduplication.
    fn normalized(&self) -> MultiPoly {
        match self.graded_lex_leading() {
            None => Self::zero(),
            Some((_, lead)) => {
                let inv = lead.recip();
                let mut out = self.scale(&inv);
                out.factors = None;
                out
            }
        }
    }

    /// The square-free part: a polynomial with the same zero set and no
    /// repeated factor.
    ///
    /// With a factored form available this is exact: distinct normalized
    /// factors, each once. Without one, the polynomial is probed on fixed
    /// sample lines — the joint gcd of the restricted polynomial and its
    /// three restricted partials is constant on some probe line iff no
    /// repeated factor survives restriction there. A clean probe certifies
    /// the input square-free and returns it unchanged; anything suspicious
    /// is [`PolyError::UnsupportedRepresentation`].
    pub fn square_free_part(&self) -> Result<MultiPoly, PolyError> {
        assert!(!self.is_zero(), "square-free part of zero polynomial");
        if self.is_constant() {
            return Ok(self.clone());
        }
        if let Some(factors) = &self.factors {
            let mut seen = BTreeSet::new();
            let mut distinct = Vec::new();
            for (f, e) in factors {
                if *e == 0 || f.is_constant() {
                    continue;
                }
                let n = f.normalized();
                if seen.insert(n.terms.clone()) {
                    distinct.push((n, 1));
                }
            }
            return Ok(Self::from_factors(distinct));
        }
        // No factorization: probe. p has a repeated factor iff
        // gcd(p, ∂p/∂x, ∂p/∂y, ∂p/∂z) is nonconstant, which restricted to a
        // generic line shows up as a nonconstant univariate joint gcd.
        let grad = self.gradient();
        let mut informative = 0;
        for (p, d) in SAMPLE_LINES {
            let line = Line3::from_ints(p, d, 0).expect("sample direction nonzero");
            let rp = self.restrict_to_line(&line);
            if rp.is_constant() {
                continue; // uninformative probe
            }
            informative += 1;
            let mut g = rp;
            for partial in &grad {
                if g.is_constant() {
                    break;
                }
                let rq = partial.restrict_to_line(&line);
                if rq.is_zero() && partial.is_zero() {
                    continue; // vanishing partial constrains nothing
                }
                g = super::uni::unipoly_gcd(&g, &rq);
            }
            if !g.is_constant() {
                return Err(PolyError::UnsupportedRepresentation(
                    "possible repeated factor and no factored form".into(),
                ));
            }
            if informative >= 3 {
                break;
            }
        }
        if informative == 0 {
            return Err(PolyError::UnsupportedRepresentation(
                "all probe restrictions degenerate".into(),
            ));
        }
        Ok(self.clone())
    }
}

/// Fixed probe lines for the square-free certificate: varied bases and
/// directions, no two parallel, none axis-aligned.
const SAMPLE_LINES: [((i64, i64, i64), (i64, i64, i64)); 5] = [
    ((1, 2, 3), (5, 7, 11)),
    ((-2, 1, 4), (3, -5, 2)),
    ((0, -3, 5), (7, 2, -9)),
    ((4, 4, 1), (1, 9, -4)),
    ((-1, 0, 2), (10, 3, 8)),
];

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded-lex descending.
        let mut keys: Vec<&[u32; 3]> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.iter().sum::<u32>(), **e)));
        let names = ["x", "y", "z"];
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let is_const_term = **e == [0, 0, 0];
            if a != ExactScalar::one() || is_const_term {
                write!(f, "{a}")?;
                if !is_const_term {
                    write!(f, "·")?;
                }
            }
            let mut first_var = true;
            for axis in 0..3 {
                if e[axis] == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "·")?;
                }
                first_var = false;
                write!(f, "{}", names[axis])?;
                if e[axis] > 1 {
                    write!(f, "^{}", e[axis])?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
