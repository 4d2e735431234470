//! Error type shared across the crate.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different coefficient fields.
    FieldMismatch,
    /// An algebraic number would need an extension beyond the tower cap
    /// (depth 2, per-step degree 6).
    TowerTooDeep { degree: usize, depth: usize },
    /// Swapping the two P1 factors requires a symmetric bidegree.
    SwapOnAsymmetricBidegree,
    /// Component factorization could not be resolved over a depth-legal field;
    /// carries the partial split found so far (factor, multiplicity), with the
    /// unresolved residual last.
    FactorizationIncomplete,
    /// The parametrized image is a point or a single ruling.
    DegenerateImage,
    /// Local algebra dimension failed to stabilize: non-isolated singularity.
    NonIsolated,
    /// Operation requires a reduced curve.
    NonReduced,
    /// Input is not a double conic in the sense required for the cross-ratio.
    NotDoubleConic,
    /// Two orbit-closure computations disagreed; indicates a classifier bug.
    Paradox(String),
    /// Linear system for the pullback coefficients is singular.
    SingularSystem,
    /// Expression parse failure with byte position.
    Parse { pos: usize, msg: String },
    /// Curve input does not have the required bidegree.
    WrongBidegree { found: (usize, usize) },
    /// CLI usage error.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "FIELD_MISMATCH: operands in different fields"),
            Error::TowerTooDeep { degree, depth } => write!(
                f,
                "TOWER_TOO_DEEP: needs a degree-{} extension at tower depth {} (cap: depth 2, step degree 6)",
                degree, depth
            ),
            Error::SwapOnAsymmetricBidegree => {
                write!(f, "SWAP_ON_ASYMMETRIC_BIDEGREE: factor swap needs a = b")
            }
            Error::FactorizationIncomplete => write!(
                f,
                "FACTORIZATION_INCOMPLETE: component split unresolved over depth-legal fields"
            ),
            Error::DegenerateImage => {
                write!(f, "DEGENERATE_IMAGE: parametrized image is a point or a ruling")
            }
            Error::NonIsolated => write!(
                f,
                "NON_ISOLATED: local algebra dimension did not stabilize (non-isolated singularity?)"
            ),
            Error::NonReduced => write!(f, "NONREDUCED: operation requires a reduced curve"),
            Error::NotDoubleConic => write!(f, "NOT_DOUBLE_CONIC"),
            Error::Paradox(msg) => write!(f, "PARADOX: {}", msg),
            Error::SingularSystem => write!(f, "SINGULAR_SYSTEM: test-family system is degenerate"),
            Error::Parse { pos, msg } => write!(f, "PARSE_ERROR at byte {}: {}", pos, msg),
            Error::WrongBidegree { found } => write!(
                f,
                "WRONG_BIDEGREE: expected a nonzero bidegree-(3,3) form, found ({},{})",
                found.0, found.1
            ),
            Error::Usage(msg) => write!(f, "usage: {}", msg),
        }
    }
}

impl std::error::Error for Error {}
