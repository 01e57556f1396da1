use std::fmt;

use crate::rational::Var;

/// Position-tagged parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("evaluation at or near a pole (z = {re}{im:+}i)")]
    Pole { re: f64, im: f64 },
    #[error("pole of the response at omega = {omega}")]
    PoleOnGrid { omega: f64 },
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("signal is not differentiable in-grammar: {0}")]
    NonDifferentiable(String),
    #[error("signal has support on t < 0; the Laplace transform here is one-sided")]
    NonCausalInput,
    #[error("not absolutely integrable: {0}")]
    NotAbsolutelyIntegrable(String),
    #[error("transform integral diverges: {0}")]
    DivergentTransform(String),
    #[error("quadrature tolerance not met: error estimate {estimate:e} above {tolerance:e}")]
    ToleranceNotMet { estimate: f64, tolerance: f64 },
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("leading output coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("transfer function requires zero initial conditions")]
    NonzeroInitialConditions,
    #[error("parameter {0} must be strictly positive")]
    NonPositiveParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl From<SyntaxError> for Error {
    fn from(e: SyntaxError) -> Self {
        Error::Syntax(e)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
