use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The field produced a non-finite value or gradient at a quadrature node.
    #[error("non-finite {what} at alpha = {point}")]
    Evaluation { point: Complex64, what: &'static str },

    /// The radial cutoff could not be grown far enough to bound the tail.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// A computed quantity violates a known mathematical bound.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// The Fock truncation is too small for the requested state or point.
    #[error("truncation error: {0}")]
    Dimension(String),

    /// A parameter search failed at the given parameter value.
    #[error("search failed at {param} = {value}: {source}")]
    Search {
        param: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
