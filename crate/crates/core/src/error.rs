use thiserror::Error;

/// Errors raised by the assembly-index machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssemblyError {
    /// The search reached `max_index` (or exhausted the reachable space)
    /// without containing every target. A missing pathway and an
    /// insufficient bound look the same from here.
    #[error("bound exceeded: no pathway found within the index limit (lower bound {lower_bound}, upper bound {})", fmt_opt(.upper_bound))]
    BoundExceeded {
        lower_bound: usize,
        upper_bound: Option<usize>,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The exhaustive search ran out of budget part way; the index lies
    /// within the bounds established so far.
    #[error("budget exceeded: search stopped with the index in [{lower_bound}, {}]", fmt_opt(.upper_bound))]
    SearchIncomplete {
        lower_bound: usize,
        upper_bound: Option<usize>,
    },

    #[error("basis object {0} has no value in the measure")]
    UnknownBasisObject(String),

    #[error("measure value out of range: {0}")]
    MeasureOutOfRange(String),

    #[error("measure is not consistent across pathways: {0}")]
    MeasureInconsistent(String),

    #[error("element {0} is not reachable from the generating set")]
    UnreachableElement(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn fmt_opt(v: &Option<usize>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "unknown".to_string(),
    }
}

pub type Result<T, E = AssemblyError> = std::result::Result<T, E>;

/// A parse failure in one of the plain-text input formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}
