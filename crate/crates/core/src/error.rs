use thiserror::Error;

/// Errors produced by form construction, norm engines, witness builders and
/// the projective-norm LP layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("field mismatch: expected {expected:?}, got {got:?}")]
    FieldMismatch {
        expected: crate::scalar::Field,
        got: crate::scalar::Field,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("capacity exceeded: {what} = {value} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("basis is not orthonormal: Gram defect {defect:e} exceeds {tol:e}")]
    NotOrthonormal { defect: f64, tol: f64 },

    #[error("form does not attain its norm at the given tuple: defect {defect:e} exceeds {tol:e}")]
    NotAttaining { defect: f64, tol: f64 },

    #[error("vectors are collinear (|<x,y>| = 1 within tolerance)")]
    Collinear,

    #[error("sphere grid too coarse: k * covering_radius = {product} >= 1")]
    GridTooCoarse { product: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("achievable approximation error is {achievable:e}, requested {requested:e}")]
    EpsOutOfReach { requested: f64, achievable: f64 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
