//! Exact computation of equivariant classes of quiver loci for ADE quivers.
//!
//! Given a Dynkin quiver `Q` (type A, D, or E in any orientation), a dimension
//! vector `d`, and an orbit of the base-change group acting on the space of
//! representations, this crate computes the multidegree (equivariant Chow
//! class) and the K-polynomial of the orbit closure, entirely over exact
//! integer/rational arithmetic.
//!
//! The computation proceeds by
//!
//! 1. ordering the positive roots through a reduced word for the longest Weyl
//!    element adapted to the orientation ([`quiver`]),
//! 2. building the block-triangular coordinate subspace attached to the orbit
//!    and taking the product of the complementary weights ([`collapse`]),
//! 3. applying a sequence of divided-difference (resp. Demazure) operators
//!    determined by the block sizes ([`poly`], [`laurent`]).
//!
//! Two independent oracles verify the results: explicit representation theory
//! over the rationals ([`rep`]) and Schubert calculus ([`schubert`]).

pub mod collapse;
pub mod jsonio;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod rootsys;
pub mod schubert;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a Dynkin quiver: {0}")]
    NotDynkin(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("dimension condition violated: {0}")]
    DimensionMismatch(String),
    #[error("inexact polynomial division (remainder nonzero)")]
    InexactDivision,
    #[error("divided difference vanished at step {step} of the operator word")]
    OperatorVanished { step: usize },
    #[error("degree of the computed class ({got}) differs from the orbit codimension ({expected})")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("truncation order {order} too small to expose a nonzero component")]
    TruncationTooSmall { order: usize },
    #[error("evaluation at zero for a Laurent variable")]
    ZeroLaurentPoint,
    #[error("summation formula mismatch at trial {trial}")]
    SumFormulaMismatch { trial: usize },
    #[error("could not sample a point with nonvanishing denominators")]
    ResampleLimit,
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("variable {0} not available in the requested variable set")]
    MissingVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
