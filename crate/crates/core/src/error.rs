use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma has a pole at {0}")]
    Pole(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series has a zero constant term")]
    ZeroConstantTerm,
    #[error("numerator valuation {num} is below denominator valuation {den}")]
    Valuation { num: usize, den: usize },
    #[error("series vanishes through order {0}")]
    ZeroSeries(usize),
    #[error("index {index} exceeds series order {order}")]
    IndexOutOfOrder { index: usize, order: usize },
    #[error("|z| = {0} exceeds the evaluation envelope |z| <= 50")]
    ConvergenceEnvelopeExceeded(f64),
    #[error("tolerance {tol:e} is unreachable at {precision} bits")]
    ToleranceUnreachable { tol: f64, precision: u32 },
    #[error("generating-function denominator vanishes through order {0}")]
    DegenerateDenominator(usize),
    #[error("degree {degree} is below the derivative order n = {n}")]
    DegreeTooLow { degree: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
