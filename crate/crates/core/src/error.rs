use thiserror::Error;

/// Errors carry a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty agent group where a nonempty one is required")]
    EmptyGroup,
    #[error("world `{0}` is not declared")]
    DanglingWorld(String),
    #[error("agent `{0}` has no relation")]
    MissingAgentRelation(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("model has no worlds")]
    EmptyModel,
    #[error("model has {0} worlds; at most 64 are supported")]
    TooManyWorlds(usize),
    #[error("model text line {line}: {msg}")]
    ModelFormat { line: usize, msg: String },
    #[error("subtractive and intersection forms of the sharing update disagree")]
    DefinitionMismatch,
    #[error("reading assignment for agent `{0}` does not contain the agent itself")]
    AlphaNotReflexive(String),
    #[error("translation step does not decrease the complexity measure: {0}")]
    MeasureViolation(String),
    #[error("search space of {0} bits exceeds the exhaustive cap")]
    BoundsTooLarge(u32),
    #[error("unknown axiom schema `{0}`")]
    UnknownSchema(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax-error",
            Error::EmptyGroup => "empty-group",
            Error::DanglingWorld(_) => "dangling-world",
            Error::MissingAgentRelation(_) => "missing-agent-relation",
            Error::UnknownAtom(_) => "unknown-atom",
            Error::UnknownAgent(_) => "unknown-agent",
            Error::UnknownWorld(_) => "unknown-world",
            Error::DuplicateName(_) => "duplicate-name",
            Error::EmptyModel => "empty-model",
            Error::TooManyWorlds(_) => "too-many-worlds",
            Error::ModelFormat { .. } => "model-format",
            Error::DefinitionMismatch => "definition-mismatch",
            Error::AlphaNotReflexive(_) => "alpha-not-reflexive",
            Error::MeasureViolation(_) => "measure-violation",
            Error::BoundsTooLarge(_) => "bounds-too-large",
            Error::UnknownSchema(_) => "unknown-schema",
            Error::InvalidBounds(_) => "invalid-bounds",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
