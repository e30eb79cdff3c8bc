use crate::semiring::SemiringTag;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mismatched semirings: {0} vs {1}")]
    TagMismatch(SemiringTag, SemiringTag),

    #[error("{0} is not starable in {1}")]
    NotStarable(String, SemiringTag),

    #[error("bad weight syntax: {0}")]
    WeightSyntax(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown letter '{0}'")]
    UnknownLetter(char),

    #[error("invalid expression: {0}")]
    InvalidExpression(String),

    #[error("derivation with respect to the empty word")]
    EmptyWord,

    #[error("automaton has spontaneous transitions; close it first")]
    EpsilonPresent,

    #[error("spontaneous transitions are closable over B only, not {0}")]
    NonBooleanEpsilon(SemiringTag),

    #[error("operation is Boolean-only, got {0}")]
    NonBoolean(SemiringTag),

    #[error("automaton too large: {0} states exceeds bound {1}")]
    TooLarge(usize, usize),

    #[error("automaton format: line {line}: {msg}")]
    AutomatonSyntax { line: usize, msg: String },

    #[error("automata have different alphabets")]
    AlphabetMismatch,

    #[error("{0}")]
    Invalid(String),
}
