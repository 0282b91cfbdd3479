use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("`{0}` is not available in the monotone fragment")]
    FragmentViolation(String),
    #[error("signature has {atoms} atoms, cap is {cap}")]
    CapExceeded { atoms: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Scenario { line: usize, msg: String },
    #[error("fixpoint loop exceeded {0} rounds")]
    Overflow(usize),
}
