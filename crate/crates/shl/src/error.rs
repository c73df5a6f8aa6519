//! Crate-wide error type.

use thiserror::Error;

/// One line-numbered problem found while reading a manifold file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square")]
    NotSquare,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("degree {degree} out of range for dimension {dim2n}")]
    DegreeOutOfRange { degree: usize, dim2n: usize },

    #[error("degree overflow: {left} + {right} exceeds top degree {dim2n}")]
    DegreeOverflow {
        left: usize,
        right: usize,
        dim2n: usize,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("manifold file rejected:\n{}", format_diagnostics(.0))]
    Parse(Vec<ParseDiagnostic>),

    #[error("omega is not closed: d(omega) != 0")]
    OmegaNotClosed,

    #[error("omega is degenerate: omega^n = 0")]
    OmegaDegenerate,

    #[error("J^2 != -identity")]
    JSquareNotMinusIdentity,

    #[error("J is not omega-compatible: omega(J., J.) != omega")]
    JNotCompatible,

    #[error("metric mismatch: omega(., J.) differs from the declared Gram matrix")]
    MetricMismatch,

    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,

    #[error("operation requires dimension 4, model has dimension {0}")]
    RequiresDimensionFour(usize),

    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(String),

    #[error(
        "non-HLC degree inconsistency at degree {degree}: \
         h_bc + h_ae - 2b = {from_sum} but 2(h_bc - b) = {from_bc}"
    )]
    DeltaSInconsistent {
        degree: usize,
        from_sum: i64,
        from_bc: i64,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_diagnostics(diags: &[ParseDiagnostic]) -> String {
    diags
        .iter()
        .map(ParseDiagnostic::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}
