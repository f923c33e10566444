use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("composability violation: d^{degree} followed by d^{next} is nonzero", next = .degree + 1)]
    ComposabilityViolation { degree: usize },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("category is not loop-free: {0}")]
    NotLoopFree(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram map is not injective: {0}")]
    NonInjectiveMap(String),
    #[error("cone is not compatible with the diagram: {0}")]
    IncompatibleCone(String),
    #[error("not a lower ideal: {0}")]
    NotLowerIdeal(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid algebra morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("functoriality violation: {0}")]
    FunctorialityViolation(String),
    #[error("limit comparison map is not an isomorphism: {0}")]
    ThetaNotIso(String),
    #[error("restriction map on cohomology is not invertible in degree {degree}")]
    ZigzagNotInvertible { degree: usize },
    #[error("morphism is not a certified homological epimorphism: {0}")]
    NotHomEpi(String),
    #[error("presheaves live over different base categories")]
    BaseMismatch,
    #[error("q range {q_max} is too small for total degree {n_max}")]
    InsufficientQRange { q_max: usize, n_max: usize },
    #[error("spectral sequence inconsistent with total cohomology: {0}")]
    ConsistencyViolation(String),
    #[error("cross-pipeline mismatch: {0}")]
    Mismatch(String),
    #[error("presheaf arrow is not certified: {0}")]
    NotCertified(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("p range {p_max} is too small for total degree {n_max}")]
    InsufficientPRange { p_max: usize, n_max: usize },
}
