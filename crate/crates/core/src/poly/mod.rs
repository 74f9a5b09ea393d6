//! Exact polynomial algebra: univariate and bivariate dense polynomials,
//! sparse trivariate polynomials, Sylvester resultants via fraction-free
//! elimination, and rational root extraction with honest completeness
//! reporting.

pub(crate) mod factor;

pub mod bi;
pub mod multi;
pub mod uni;

pub use bi::{sylvester_matrix, sylvester_resultant, BiPoly};
pub use multi::{MultiPoly, RESTRICTION_VAR};
pub use uni::{rational_roots, unipoly_gcd, RationalRoots, UniPoly, Var};

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    /// Resultant elimination needs positive degree in the eliminated
    /// variable on both sides.
    #[error("eliminated variable {var} has degree zero in {which} operand")]
    DegreeZero {
        var: Var,
        which: &'static str,
    },
    /// The operation needs structure (e.g. a factored form) the value
    /// doesn't carry, and computing it from scratch is out of scope.
    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),
    /// Operands tagged with incompatible variables.
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
}
