//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: operands built over Cl(0,{left}) and Cl(0,{right})")]
    SignatureMismatch { left: u8, right: u8 },

    #[error("unsupported generator count {0}: expected 1..={max}", max = crate::MAX_GENERATORS)]
    UnsupportedDimension(u8),

    #[error("paravector inverse of (numerically) zero input")]
    ZeroParavector,

    #[error("inverse requires a paravector (grades 0 and 1 only)")]
    NotParavector,

    #[error("exponential series did not converge within {max_terms} terms (last term modulus {last_term:e})")]
    ExpNoConvergence { max_terms: usize, last_term: f64 },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: u8 },

    #[error("symmetric product limited to at most {limit} factors, got {got}")]
    SymmetricProductSize { got: usize, limit: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("least-squares fit is degenerate (singular normal equations)")]
    DegenerateFit,

    #[error("{domain} quadrature not implemented for n = {n}")]
    UnsupportedDomain { domain: &'static str, n: u8 },

    #[error("operation requires a {expected} rule, got a {got} rule")]
    RuleKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("kernel evaluated at coincident points")]
    CoincidentPoints,

    #[error("kernel denominator non-positive: points outside the admissible domain")]
    KernelDomain,

    #[error("evaluation point must lie strictly inside the domain")]
    OutsideDomain,

    #[error("ball rule is not centered at the evaluation point")]
    RuleNotCentered,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("failed to parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
