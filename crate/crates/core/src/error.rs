use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label sets overlap")]
    OverlappingLabels,
    #[error("tree is not multilinear: repeated label {0}")]
    RepeatedLabel(u8),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("word expansion is not in the span of the basis expansions")]
    NotInSpan,
    #[error("invalid basis morphism: {0}")]
    InvalidMorphism(String),
    #[error("element has a term outside δ⁽¹⁾ (last fiber not a singleton)")]
    NotDelta1,
    #[error("homological degree must be positive")]
    ZeroDegree,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
