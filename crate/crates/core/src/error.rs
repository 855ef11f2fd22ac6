use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{function} diverges at {at}")]
    Divergence { function: &'static str, at: f64 },

    #[error("{function}: argument {at} outside the domain {domain}")]
    Domain {
        function: &'static str,
        at: f64,
        domain: &'static str,
    },

    #[error("hypergeometric series does not converge: {0}")]
    NonConvergentSeries(String),

    #[error("series not converged after {terms} terms (last estimate {estimate:e})")]
    MaxTermsExhausted { terms: usize, estimate: f64 },

    #[error("term {index} breaks the declared alternating sign pattern")]
    SignPattern { index: usize },

    #[error("acceleration did not reach tolerance by order {order} (estimate {estimate:e})")]
    AccelerationStalled { order: usize, estimate: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("integrand returned a non-finite value at x = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("degree nu = {0} is excluded (cot pole of the Gauss-sum identity)")]
    ExcludedDegree(f64),

    #[error("unknown identity id `{0}`")]
    UnknownId(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
