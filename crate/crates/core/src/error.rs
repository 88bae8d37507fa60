use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Exit-code class of an error, as surfaced by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ErrorClass {
    /// Malformed or inconsistent input (exit 1).
    Input,
    /// A numerical procedure could not complete (exit 2).
    Numeric,
    /// A mathematical hypothesis of the computation fails (exit 3).
    Hypothesis,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Input => 1,
            ErrorClass::Numeric => 2,
            ErrorClass::Hypothesis => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    AsymmetricMatrix { i: usize, j: usize },

    #[error("entry ({i}, {j}) is not invariant under generator #{generator}")]
    SymmetryViolation {
        i: usize,
        j: usize,
        generator: usize,
    },

    #[error("invalid orbit structure: {0}")]
    InvalidOrbits(String),

    #[error("weight vector is not constant on orbit #{orbit}")]
    NotFSymmetric { orbit: usize },

    #[error("matrix is not negative definite (leading minor of order {order} fails)")]
    NotNegativeDefinite { order: usize },

    #[error("matrix is singular or ill-conditioned (condition estimate {condition:e})")]
    SingularMatrix { condition: f64 },

    #[error("maximum lies on the simplex boundary; unconstrained critical point {weights:?}")]
    BoundaryOptimum { weights: Vec<f64> },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("radius norm {norm} is not greater than 1")]
    NotSupercritical { norm: f64 },

    #[error("no scaling found with n <= {max_n}")]
    SearchExhausted { max_n: u64 },

    #[error("oracle limited to dimension <= {cap}, got {n}")]
    ScaleCap { n: usize, cap: usize },

    #[error("schema violation: {0}")]
    Schema(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Domain(_)
            | Error::DimensionMismatch { .. }
            | Error::AsymmetricMatrix { .. }
            | Error::SymmetryViolation { .. }
            | Error::InvalidOrbits(_)
            | Error::NotFSymmetric { .. }
            | Error::ScaleCap { .. }
            | Error::Schema(_) => ErrorClass::Input,
            Error::NotNegativeDefinite { .. }
            | Error::SingularMatrix { .. }
            | Error::NumericFailure(_)
            | Error::SearchExhausted { .. } => ErrorClass::Numeric,
            Error::BoundaryOptimum { .. } | Error::NotSupercritical { .. } => {
                ErrorClass::Hypothesis
            }
        }
    }

    /// Stable short identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::AsymmetricMatrix { .. } => "AsymmetricMatrix",
            Error::SymmetryViolation { .. } => "SymmetryViolation",
            Error::InvalidOrbits(_) => "InvalidOrbits",
            Error::NotFSymmetric { .. } => "NotFSymmetric",
            Error::NotNegativeDefinite { .. } => "NotNegativeDefinite",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::BoundaryOptimum { .. } => "BoundaryOptimum",
            Error::NumericFailure(_) => "NumericFailure",
            Error::NotSupercritical { .. } => "NotSupercritical",
            Error::SearchExhausted { .. } => "SearchExhausted",
            Error::ScaleCap { .. } => "ScaleCap",
            Error::Schema(_) => "SchemaViolation",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
