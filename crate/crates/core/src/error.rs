use thiserror::Error;

use crate::mtbdd::Bank;

/// Errors raised by the diagram engine and the automata built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("assignment width {found} does not match expected width {expected}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("diagram node belongs to a different manager")]
    ForeignNode,

    #[error("automaton is bound to a different manager")]
    ForeignManager,

    #[error("assignment is not total over the variables of the diagram")]
    PartialAssignment,

    #[error("variable bank {0:?} already occurs in the diagram")]
    BankOccupied(Bank),

    #[error("symbol `{name}` with arity {arity} is already registered")]
    DuplicateSymbol { name: String, arity: usize },

    #[error("unknown symbol `{name}` with arity {arity}")]
    UnknownSymbol { name: String, arity: usize },

    #[error("requested width {requested} is below the minimum {minimum}")]
    WidthTooSmall { requested: usize, minimum: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("alphabets of the operands differ")]
    AlphabetMismatch,

    #[error("duplicate state name `{0}`")]
    DuplicateState(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("transition target set is empty")]
    EmptyTargets,

    #[error("automaton is not deterministic")]
    Nondeterministic,

    #[error("quotient map does not cover state {0}")]
    PartialQuotient(u32),

    #[error("term syntax error at offset {offset}: {message}")]
    TermSyntax { offset: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("oracle size guard exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
