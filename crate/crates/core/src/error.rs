use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{field}` is not finite")]
    NonFinite { field: &'static str },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is not 1 (got {trace})")]
    NotUnitTrace { trace: f64 },

    #[error("R-matrix has non-positive (0,0) entry {value}")]
    NonPositiveScale { value: f64 },

    #[error("not a valid state: minimum eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("unsupported form: {0}")]
    UnsupportedForm(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("boost velocity {beta} reaches the light-speed limit")]
    BoostLimit { beta: f64 },

    #[error("no real boost eliminates the linear terms (discriminant {discriminant:e})")]
    NoRealBoost { discriminant: f64 },

    #[error("boost polynomial of degree {degree} has no real root")]
    NoRealRoot { degree: usize },

    #[error("not a valid state: {0}")]
    InvalidState(&'static str),

    #[error("transformed (0,0) entry {s0:e} is not positive")]
    DegenerateTransformation { s0: f64 },

    #[error("boost leaves off-diagonal residual {residual:e}")]
    SolverInconsistency { residual: f64 },

    #[error("leading linear coefficient is zero; relabel axes first")]
    RelabelAxes,

    #[error("degenerate correlation spectrum not supported: {0}")]
    UnsupportedDegeneracy(&'static str),

    #[error("rejection sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
}

impl Error {
    /// Errors signalling that no physical boost exists.
    pub fn is_boost_failure(&self) -> bool {
        matches!(
            self,
            Error::BoostLimit { .. } | Error::NoRealBoost { .. } | Error::NoRealRoot { .. }
        )
    }
}
