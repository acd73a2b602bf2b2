use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("monomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("division needs a global order; use the Mora normal form for local orders")]
    LocalOrderUnsupported,
    #[error("operation needs the local order ds")]
    GlobalOrderUnsupported,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("ideal is not homogeneous for the ring grading")]
    NotHomogeneous,
    #[error("ideal has no nonzero generators")]
    EmptyIdeal,
    #[error("singular point is not isolated")]
    NonIsolated,
    #[error("map is not an isolated complete intersection at the base point")]
    NotICIS,
    #[error("map has no critical points")]
    SmoothMap,
    #[error("more than one singular fibre")]
    MultipleSingularFibres,
    #[error("fibre is not cut out by forms of one bidegree")]
    NonUniformDegrees,
    #[error("generic draws disagreed after {attempts} attempts")]
    GenericityFailure { attempts: u32 },
    #[error("critical locus is positive dimensional")]
    PositiveDimensionalCritical,
    #[error("unsupported cycle component: {0}")]
    UnsupportedComponent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for malformed input as opposed to a failed mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SyntaxError { .. }
                | Error::UnknownVariable(_)
                | Error::ArityMismatch(..)
                | Error::RingMismatch
                | Error::InvalidInput(_)
        )
    }

    pub fn is_genericity_failure(&self) -> bool {
        matches!(self, Error::GenericityFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
