use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("unsupported field `{0}` (use Q or F<p> with p an odd prime)")]
    UnsupportedField(String),

    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),

    #[error("arity must be at least 2, got {0}")]
    InvalidArity(usize),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate bracket entry for arguments {0:?}")]
    DuplicateBracket(Vec<usize>),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("algebra `{0}` is not a Leibniz n-algebra")]
    NotLeibniz(String),

    #[error("algebra `{0}` is not a Lie n-algebra")]
    NotLie(String),

    #[error("algebra `{name}` is not {structure}-perfect")]
    NotPerfect { name: String, structure: &'static str },

    #[error("cube is not an extension: comparison map at node {{{0}}} is not surjective")]
    NotExtension(String),

    #[error("malformed cube: {0}")]
    MalformedCube(String),

    #[error("well-definedness check failed: {0}")]
    IllDefined(String),
}
