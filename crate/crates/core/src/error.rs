use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("squares do not share the pasting edge")]
    EdgeMismatch,
    #[error("pullback not computable: {0}")]
    UnsupportedLimit(String),
    #[error("pushout not computable: {0}")]
    UnsupportedColimit(String),
    #[error("morphism is outside the pushout-admissible class: {0}")]
    NotAdmissible(String),
    #[error("square is not a pushout")]
    NotAPushout,
    #[error("input is not a regular monomorphism: {0}")]
    NotRegular(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid distinguished square: {0}")]
    InvalidSquare(String),
    #[error("presentation has no kernel pair for `{0}`")]
    MissingKernelPair(String),
    #[error("joint monicity hypothesis fails: {0}")]
    HypothesisFailed(String),
    #[error("bounded closure overflow: {0}")]
    ClosureOverflow(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for CatError {
    fn from(e: serde_json::Error) -> Self {
        CatError::Parse(e.to_string())
    }
}

pub type Result<T, E = CatError> = std::result::Result<T, E>;
