use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{key}`: {reason}")]
    Parameter { key: &'static str, reason: String },

    #[error("grid construction failed: {0}")]
    Grid(String),

    #[error("degenerate momentum pair: p2 = q2 = {0}")]
    DegeneratePair(f64),

    #[error("kinematic singularity: k2 = {k2} (p2 = {p2}, q2 = {q2}, z = {z})")]
    KinematicSingularity { p2: f64, q2: f64, z: f64, k2: f64 },

    #[error("non-finite value at external {i}, radial {j}, angular {k}")]
    NumericalFailure { i: usize, j: usize, k: usize },

    #[error("execution environment: {0}")]
    Execution(String),

    #[error("variant disagreement: max-norm {max_diff:e} between {a} and {b}")]
    VariantDisagreement {
        a: &'static str,
        b: &'static str,
        max_diff: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(key: &'static str, reason: impl Into<String>) -> Error {
    Error::Parameter {
        key,
        reason: reason.into(),
    }
}
