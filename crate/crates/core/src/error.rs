use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error(
        "x = {x} exceeds the direct-summation limit {x_max}; \
         use the asymptotic evaluators (transcendental::asym_eval) or the regularized integrals"
    )]
    BeyondDirectRange { x: f64, x_max: f64 },

    #[error("series cannot be summed within budget: {0}")]
    NonConvergent(String),

    #[error(
        "quadrature did not reach tolerance {tol:e} within {panels} panels \
         (best estimate {estimate}, error estimate {error:e})"
    )]
    Quadrature {
        estimate: f64,
        error: f64,
        tol: f64,
        panels: usize,
    },

    #[error("unknown id `{0}`")]
    UnknownId(String),

    #[error("requested order {requested} exceeds the {available} stored terms")]
    OrderTooLarge { requested: usize, available: usize },

    #[error("input is not in the image of the operator: {0}")]
    NotInImage(String),

    #[error("invalid series specification: {0}")]
    InvalidSpec(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
