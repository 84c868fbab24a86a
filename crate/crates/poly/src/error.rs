use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// A resultant was requested with an identically zero argument.
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: String, found: String },
}
