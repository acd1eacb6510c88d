//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not scalar: off-scalar residual {residual:.3e} exceeds {tol:.3e}")]
    NotScalar { residual: f64, tol: f64 },

    #[error("spin labels {0} and {1} are incompatible here")]
    LabelMismatch(u32, u32),

    #[error("tensor decomposition of level {two_s} produced blocks {found:?}, expected {expected:?}")]
    DecompositionMismatch {
        two_s: u32,
        found: Vec<u32>,
        expected: Vec<u32>,
    },

    #[error("no lowering map exists below level twoS = {0}")]
    NoLowerLevel(u32),

    #[error("Killing number {mu} is not admissible on {space}")]
    InadmissibleKillingNumber { space: String, mu: String },

    #[error("field form {form} is not defined on {space}")]
    WrongSpace { form: String, space: String },

    #[error("operation requires half-integral spin, got twoS = {0}")]
    NotHalfIntegral(u32),

    #[error("operation requires integral spin, got twoS = {0}")]
    NotIntegral(u32),

    #[error("unknown suite name: {0}")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
