use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("point {re}{im:+}i lies on the contour; use the boundary-value operations")]
    OnContour { re: f64, im: f64 },

    #[error("point is off the integration path (distance {distance:.3e}, tolerance {tolerance:.3e})")]
    OffContour { distance: f64, tolerance: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("derivative of order {order} is not available (declared smoothness {smoothness})")]
    MissingDerivative { order: usize, smoothness: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("point too close to an arc endpoint: {0}")]
    Endpoint(String),

    #[error("invalid flow configuration: {0}")]
    InvalidFlow(String),

    #[error("invalid singularity prescription: {0}")]
    Prescription(String),
}

pub type Result<T> = std::result::Result<T, Error>;
