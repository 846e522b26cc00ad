use thiserror::Error;

pub type Result<T> = std::result::Result<T, HoloError>;

/// Errors raised by group construction, enumeration and reporting.
#[derive(Debug, Error)]
pub enum HoloError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("unsupported preset: {0}")]
    UnsupportedPreset(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not a p-group")]
    NotPGroup,
    #[error("search budget of {0} steps exceeded")]
    SearchBudgetExceeded(u64),
    #[error("automorphism list too large to materialize: {0}")]
    AutListTooLarge(String),
    #[error("circle operation does not define a group: {0}")]
    NotAGroup(String),
    #[error("invalid gamma map: {0}")]
    InvalidGamma(String),
    #[error("hypothesis ({0}) of the bilinear correspondence is violated")]
    HypothesisViolated(char),
    #[error("unsupported moduli: {0}")]
    UnsupportedModuli(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bijection does not normalize the holomorph: {0}")]
    NotInNHol(String),
    #[error("no isomorphism from G onto the circle group")]
    NoIsomorphism,
    #[error("T(G) multiplication is not closed: {0}")]
    ClosureFailure(String),
    #[error("cache corrupt: {0}")]
    CacheCorrupt(String),
    #[error("mismatch: {0}")]
    MismatchFound(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HoloError {
    /// Process exit code for this error family.
    pub fn exit_code(&self) -> i32 {
        match self {
            HoloError::OrderCapExceeded { .. } | HoloError::AutListTooLarge(_) => 3,
            HoloError::SearchBudgetExceeded(_) => 4,
            HoloError::InvalidPresentation(_) | HoloError::InconsistentPresentation(_) => 5,
            HoloError::MismatchFound(_) | HoloError::ClosureFailure(_) => 6,
            HoloError::InvalidConfig(_) | HoloError::UnsupportedPreset(_) => 2,
            HoloError::Io(_) | HoloError::Json(_) | HoloError::CacheCorrupt(_) => 7,
            _ => 1,
        }
    }
}
