//! Points, directions and lines in R³ with canonical representations.
//!
//! Directions are primitive integer vectors (content 1, first nonzero
//! component positive), so a direction and its negation — the same
//! projective direction — normalize to one value. A line stores the
//! canonical direction plus the unique base point whose coordinate at the
//! first nonzero direction component is zero. Two descriptions of the same
//! geometric line therefore compare equal structurally, which lets sets and
//! maps of lines deduplicate by geometry.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::ExactScalar;

/// Shorthand: `Debug` delegating to `Display` for geometric values, which
/// keeps assertion output readable.
macro_rules! fmt_as_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt::Display::fmt(self, f)
        }
    };
}

/// Errors from geometric constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    /// A direction vector must have at least one nonzero component.
    #[error("zero direction vector")]
    ZeroDirection,
}

/// A point of R³ with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: ExactScalar,
    pub y: ExactScalar,
    pub z: ExactScalar,
}

impl Point3 {
    pub fn new(x: ExactScalar, y: ExactScalar, z: ExactScalar) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(x.into(), y.into(), z.into())
    }

    pub fn origin() -> Self {
        Point3::from_ints(0, 0, 0)
    }

    pub fn coords(&self) -> [&ExactScalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Point3) -> [ExactScalar; 3] {
        [&self.x - &other.x, &self.y - &other.y, &self.z - &other.z]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for Point3 {
    fmt_as_display!();
}

/// A projective direction: primitive integer vector, first nonzero
/// component positive. `d` and `-d` normalize to the same value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction3 {
    c: [BigInt; 3],
}

impl Direction3 {
    /// Normalizes an integer vector. Errors on the zero vector.
    pub fn from_bigints(v: [BigInt; 3]) -> Result<Self, GeomError> {
        let g = v[0].gcd(&v[1]).gcd(&v[2]);
        if g.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let mut c = [&v[0] / &g, &v[1] / &g, &v[2] / &g];
        let lead_negative = c.iter().find(|x| !x.is_zero()).map(|x| x.is_negative());
        if lead_negative == Some(true) {
            for x in &mut c {
                *x = -std::mem::take(x);
            }
        }
        Ok(Direction3 { c })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self, GeomError> {
        Self::from_bigints([BigInt::from(x), BigInt::from(y), BigInt::from(z)])
    }

    /// Normalizes a rational vector by clearing denominators first.
    pub fn from_scalars(v: &[ExactScalar; 3]) -> Result<Self, GeomError> {
        let mut den = BigInt::from(1);
        for s in v {
            den = den.lcm(s.denom());
        }
        let ints = [
            v[0].numer() * (&den / v[0].denom()),
            v[1].numer() * (&den / v[1].denom()),
            v[2].numer() * (&den / v[2].denom()),
        ];
        Self::from_bigints(ints)
    }

    pub fn components(&self) -> &[BigInt; 3] {
        &self.c
    }

    /// Index of the first nonzero component (always exists).
    pub fn pivot(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).expect("nonzero")
    }

    /// Component as an exact scalar.
    pub fn scalar(&self, i: usize) -> ExactScalar {
        ExactScalar::from_bigint(self.c[i].clone())
    }

    /// Cross product, as a raw integer vector (may be zero when parallel).
    pub fn cross(&self, other: &Direction3) -> [BigInt; 3] {
        cross_int(&self.c, &other.c)
    }

    /// Dot product with a rational vector.
    pub fn dot_scalars(&self, v: &[ExactScalar; 3]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for i in 0..3 {
            acc += &(self.scalar(i) * &v[i]);
        }
        acc
    }
}

impl fmt::Display for Direction3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for Direction3 {
    fmt_as_display!();
}

fn cross_int(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// 3×3 integer determinant.
pub fn det3_int(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    let cr = cross_int(b, c);
    &a[0] * &cr[0] + &a[1] * &cr[1] + &a[2] * &cr[2]
}

/// Do three directions span R³? Exact integer determinant test.
pub fn triple_spans(d1: &Direction3, d2: &Direction3, d3: &Direction3) -> bool {
    !det3_int(&d1.c, &d2.c, &d3.c).is_zero()
}

/// Identifier of a line within a configuration (its index).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub u32);

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

impl fmt::Debug for LineId {
    fmt_as_display!();
}

/// Canonicalizes a line description: any point on the line plus any nonzero
/// rational direction. Returns the canonical base point and direction.
///
/// The base point is the unique point on the line whose coordinate at the
/// direction's first nonzero component is zero, so equal lines always get
/// equal `(base, dir)` pairs.
pub fn canonicalize_line(
    point: &Point3,
    dir: &[ExactScalar; 3],
) -> Result<(Point3, Direction3), GeomError> {
    let dir = Direction3::from_scalars(dir)?;
    let i = dir.pivot();
    let coords = point.coords();
    let t = coords[i] / &dir.scalar(i);
    let base = Point3::new(
        &point.x - &(&t * &dir.scalar(0)),
        &point.y - &(&t * &dir.scalar(1)),
        &point.z - &(&t * &dir.scalar(2)),
    );
    Ok((base, dir))
}

/// A line of R³ in canonical form, tagged with its configuration id.
///
/// Equality and hashing use only the geometry `(base, dir)`; the id is a
/// label, not part of the value.
#[derive(Clone)]
pub struct Line3 {
    base: Point3,
    dir: Direction3,
    pub id: LineId,
}

impl Line3 {
    pub fn new(point: &Point3, dir: &[ExactScalar; 3], id: LineId) -> Result<Self, GeomError> {
        let (base, dir) = canonicalize_line(point, dir)?;
        Ok(Line3 { base, dir, id })
    }

    pub fn from_ints(p: (i64, i64, i64), d: (i64, i64, i64), id: u32) -> Result<Self, GeomError> {
        Self::new(
            &Point3::from_ints(p.0, p.1, p.2),
            &[d.0.into(), d.1.into(), d.2.into()],
            LineId(id),
        )
    }

    /// Same line under a different label.
    pub fn with_id(self, id: LineId) -> Line3 {
        Line3 { id, ..self }
    }

    pub fn base(&self) -> &Point3 {
        &self.base
    }

    pub fn dir(&self) -> &Direction3 {
        &self.dir
    }

    /// The point `base + t·dir`.
    pub fn point_at(&self, t: &ExactScalar) -> Point3 {
        Point3::new(
            &self.base.x + &(t * &self.dir.scalar(0)),
            &self.base.y + &(t * &self.dir.scalar(1)),
            &self.base.z + &(t * &self.dir.scalar(2)),
        )
    }

    /// Exact incidence test.
    pub fn contains(&self, p: &Point3) -> bool {
        let w = p.sub(&self.base);
        // p is on the line iff (p - base) × dir = 0.
        let d = self.dir.components();
        (&w[1] * &ExactScalar::from_bigint(d[2].clone())
            == &w[2] * &ExactScalar::from_bigint(d[1].clone()))
            && (&w[2] * &ExactScalar::from_bigint(d[0].clone())
                == &w[0] * &ExactScalar::from_bigint(d[2].clone()))
            && (&w[0] * &ExactScalar::from_bigint(d[1].clone())
                == &w[1] * &ExactScalar::from_bigint(d[0].clone()))
    }

    /// The parameter t with `point_at(t) = p`, for points on the line.
    pub fn param_of(&self, p: &Point3) -> Option<ExactScalar> {
        if !self.contains(p) {
            return None;
        }
        let i = self.dir.pivot();
        let w = p.sub(&self.base);
        Some(&w[i] / &self.dir.scalar(i))
    }

    /// Geometric key for ordering lines independently of ids.
    pub fn geometry(&self) -> (&Point3, &Direction3) {
        (&self.base, &self.dir)
    }
}

impl PartialEq for Line3 {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.dir == other.dir
    }
}

impl Eq for Line3 {}

impl std::hash::Hash for Line3 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.dir.hash(state);
    }
}

impl fmt::Display for Line3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} + t·{}", self.id, self.base, self.dir)
    }
}

impl fmt::Debug for Line3 {
    fmt_as_display!();
}

/// Exact classification of the relative position of two lines.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntersectionKind {
    /// Exactly one common point.
    Point(Point3),
    /// Same direction, disjoint.
    Parallel,
    /// Non-parallel, non-coplanar.
    Skew,
    /// The same line.
    Identical,
}

/// Classifies the intersection of two lines, exactly.
pub fn line_intersection(l1: &Line3, l2: &Line3) -> IntersectionKind {
    if l1.dir == l2.dir {
        return if l1.base == l2.base {
            IntersectionKind::Identical
        } else {
            IntersectionKind::Parallel
        };
    }
    let w = l2.base.sub(&l1.base); // rational vector
    let n = l1.dir.cross(&l2.dir); // nonzero integer vector
    // Coplanar iff w · (d1 × d2) = 0.
    let mut tri = ExactScalar::zero();
    for i in 0..3 {
        tri += &(&w[i] * &ExactScalar::from_bigint(n[i].clone()));
    }
    if !tri.is_zero() {
        return IntersectionKind::Skew;
    }
    // Unique intersection: t = ((w × d2) · n) / |n|².
    let d2 = l2.dir.components();
    let wxd2 = [
        &w[1] * &ExactScalar::from_bigint(d2[2].clone())
            - &w[2] * &ExactScalar::from_bigint(d2[1].clone()),
        &w[2] * &ExactScalar::from_bigint(d2[0].clone())
            - &w[0] * &ExactScalar::from_bigint(d2[2].clone()),
        &w[0] * &ExactScalar::from_bigint(d2[1].clone())
            - &w[1] * &ExactScalar::from_bigint(d2[0].clone()),
    ];
    let mut num = ExactScalar::zero();
    let mut den = ExactScalar::zero();
    for i in 0..3 {
        let ni = ExactScalar::from_bigint(n[i].clone());
        num += &(&wxd2[i] * &ni);
        den += &(&ni * &ni);
    }
    let t = &num / &den;
    let p = l1.point_at(&t);
    debug_assert!(l2.contains(&p), "intersection point must be on both lines");
    IntersectionKind::Point(p)
}
