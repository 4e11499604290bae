use thiserror::Error;

use crate::series::Chart;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precision mismatch: p^{left} vs p^{right} (or different primes)")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("{0} is not a unit mod p")]
    NonUnit(u64),

    #[error("binomial index {k} exceeds the supported bound {max}")]
    BinomialDegree { k: u32, max: u32 },

    #[error("chart mismatch: {left} vs {right}")]
    ChartMismatch { left: Chart, right: Chart },

    #[error("unsupported chart change {from} -> {to}")]
    UnsupportedChart { from: Chart, to: Chart },

    #[error("substituted series for `{var}` has a nonzero constant term")]
    ConstantTerm { var: &'static str },

    #[error("series is not divisible by `{var}`")]
    NotDivisible { var: &'static str },

    #[error("validity {validity} too low (need at least {needed})")]
    ValidityUnderflow { validity: u32, needed: u32 },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown variable `{name}` at column {column}")]
    UnknownVariable { name: String, column: usize },

    #[error("variables from different charts at column {column}")]
    MixedCharts { column: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("element is not antisymmetric under the swap")]
    NotAntisymmetric,

    #[error("element lies outside the D-model (nonzero x/y exponents)")]
    NotInDerived,

    #[error("degenerate representative: lowest coefficient is not a unit")]
    Degenerate,

    #[error("the identity element is not allowed here")]
    IdentityElement,
}

pub type Result<T> = std::result::Result<T, Error>;
