use thiserror::Error;

/// Errors across the numeric kernels. Divergent integrals are *not* errors;
/// they are ordinary results carrying a witness. Errors mean the operation
/// could not produce a trustworthy verdict at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} outside domain [{lo}, {hi}]")]
    Domain { point: f64, lo: f64, hi: f64 },

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("positivity certificate required: {0}")]
    Positivity(String),

    #[error("evaluation failed at x = {point}: {what}")]
    Eval { point: f64, what: String },

    #[error("quadrature did not reach the requested tolerance (achieved {achieved:e})")]
    Tolerance { achieved: f64 },

    #[error("measure is not finite: {0}")]
    InfiniteMass(String),

    #[error("spaces are not isometric: {0}")]
    NotIsometric(String),

    #[error("no measure-preserving automorphism exists: {0}")]
    NoAutomorphism(String),

    #[error("decompositions are not comparable: {0}")]
    Incomparable(String),

    #[error("classification unsupported: {0}")]
    Classification(String),

    #[error("root solving failed in segment {segment}: {what}")]
    RootSolve { segment: usize, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
