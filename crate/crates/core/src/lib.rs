//! Exact-arithmetic incidence geometry toolkit.
//!
//! The crate computes certificates, not estimates: joints of line and curve
//! configurations in R³, their multiplicities, dyadic statistics and
//! weighted bound reports; Szemerédi–Trotter incidence counts behind exact
//! generic projections; sparse polynomial algebra with Sylvester
//! resultants; and polynomial partitioning of finite point sets with fully
//! audited cell counts. All predicates are decided over the rationals —
//! floats only ever appear in report fields derived from exact values.

pub mod curves;
pub mod geom;
pub mod incidence;
pub mod joints;
pub mod numeric;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod surfaces;
pub mod projection;
pub mod scalar;

pub use geom::{
    canonicalize_line, det3_int, line_intersection, triple_spans, Direction3, GeomError,
    IntersectionKind, Line3, LineId, Point3,
};
pub use scalar::ExactScalar;
