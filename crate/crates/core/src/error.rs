use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("reserved token `{token}` at {line}:{column}")]
    Reserved {
        token: String,
        line: usize,
        column: usize,
    },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("expected a single justification, found {0} addends")]
    Arity(usize),

    #[error("value is not a causal graph: {0}")]
    NotCausalGraph(String),

    #[error("program is not positive: rule for `{0}` has negative literals")]
    NotPositive(String),

    #[error("invalid literal `{0}`")]
    Literal(String),
}
