use std::fmt;

use thiserror::Error;

/// Diagnostics attached to a failed gluing-equation solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveDiagnostics {
    pub stage: &'static str,
    pub iterations: usize,
    pub continuation_steps: usize,
    pub residual_norm: f64,
    pub min_imag: f64,
}

impl fmt::Display for SolveDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stage={} iterations={} steps={} |F|={:.3e} min Im z={:.3e}",
            self.stage, self.iterations, self.continuation_steps, self.residual_norm, self.min_imag
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial division is not exact: {0}")]
    NonExactDivision(String),
    #[error("invalid cohomology class ({a}, {b}): {reason}")]
    InvalidClass { a: i64, b: i64, reason: &'static str },
    #[error("non-pseudo-Anosov/non-hyperbolic filling ({a}, {b})")]
    NonHyperbolic { a: i64, b: i64 },
    #[error("genus {0} is out of range (need g >= 3)")]
    GenusOutOfRange(i64),
    #[error("W does not generate orientable examples when g is even (g = {0})")]
    EvenGenus(i64),
    #[error("direction s = {0} is outside the open fibered cone (|s| < 1)")]
    OutsideCone(f64),
    #[error("matrix shape mismatch: {0}")]
    Dimension(String),
    #[error("empty or reversed interval")]
    BadInterval,
    #[error("invalid solver option: {0}")]
    BadOption(&'static str),
    #[error("no geometric solution found ({0})")]
    NoGeometricSolution(SolveDiagnostics),
    #[error("filling outside solvable range ({0})")]
    Divergence(SolveDiagnostics),
    #[error("shape parameter {0} is degenerate (z in {{0, 1}})")]
    DegenerateShape(String),
    #[error("potential coefficient fit residual {0:.3e} exceeds tolerance")]
    FitResidual(f64),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("train track parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for failures of the numerical solver, as opposed to bad input or
    /// broken invariants.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NoGeometricSolution(_) | Error::Divergence(_) | Error::FitResidual(_)
        )
    }

    /// True when an exact identity that must hold by construction failed.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::NonExactDivision(_) | Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
