use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("division by the zero field")]
    DivisionByZero,
    #[error("pole at point ({})", point.join(", "))]
    Pole { point: Vec<String> },
    #[error("field involves exponential generators and has no exact value: {0}")]
    GeneratorValue(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("invalid definition: {0}")]
    Definition(String),
    #[error("metric is not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("valence error: {0}")]
    Valence(String),
    #[error("singular metric: determinant {0} vanishes")]
    Singular(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
