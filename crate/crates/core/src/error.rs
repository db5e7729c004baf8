use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced while constructing or analyzing automata.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("automaton has no initial state")]
    MissingInitial,

    #[error("automata are not over the same alphabet")]
    AlphabetMismatch,

    #[error("invalid token `{0}` (tokens are non-empty and contain no whitespace, ':' or '#')")]
    BadToken(String),

    #[error("duplicate state `{0}`")]
    DuplicateState(String),

    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),

    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,

    #[error("automaton must have at least one state")]
    NoStates,

    #[error("missing transition for ({state}, {letter})")]
    IncompleteTransitions { state: String, letter: String },

    #[error("duplicate transition for ({state}, {letter})")]
    DuplicateTransition { state: String, letter: String },

    #[error("transition table does not match the declared states and alphabet")]
    BadTable,

    #[error("subset cap of {cap} states exceeded")]
    SubsetCapExceeded { cap: usize },

    #[error("pair cap of {cap} search nodes exceeded")]
    PairCapExceeded { cap: usize },

    #[error("enumeration budget exceeded: {required} candidate tables required, budget is {budget}")]
    EnumerationBudgetExceeded { required: u128, budget: u128 },

    #[error("automaton is not synchronizing")]
    NotSynchronizing,

    #[error("component {component} accepts the empty word")]
    EpsilonAccepted { component: usize },

    #[error("letter `{0}` clashes with the base alphabet")]
    LetterClash(String),

    #[error("expected exactly one sink state, found {found}")]
    NoUniqueSink { found: usize },

    #[error("letter order is not a permutation of the automaton's alphabet")]
    OrderMismatch,

    #[error("alphabet must have at least {needed} letters")]
    AlphabetTooSmall { needed: usize },

    #[error("a nonempty binary word must end with `lambda`")]
    NotLambdaTerminated,

    #[error("at least one component automaton is required")]
    NoComponents,
}

/// Errors from the line-oriented automaton file format, each tied to a line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}` declaration")]
    ExpectedHeader { line: usize, expected: &'static str },

    #[error("line {line}: alphabet must contain at least one letter")]
    EmptyAlphabet { line: usize },

    #[error("line {line}: invalid token `{token}`")]
    BadToken { line: usize, token: String },

    #[error("line {line}: duplicate letter `{letter}`")]
    DuplicateLetter { line: usize, letter: String },

    #[error("line {line}: duplicate state `{state}`")]
    DuplicateState { line: usize, state: String },

    #[error("line {line}: unknown state `{token}`")]
    UnknownState { line: usize, token: String },

    #[error("line {line}: unknown letter `{token}`")]
    UnknownLetter { line: usize, token: String },

    #[error("line {line}: `initial:` takes exactly one state")]
    InitialArity { line: usize },

    #[error("line {line}: duplicate transition for ({state}, {letter})")]
    DuplicateTransition {
        line: usize,
        state: String,
        letter: String,
    },

    #[error("line {line}: missing transition for ({state}, {letter})")]
    MissingTransition {
        line: usize,
        state: String,
        letter: String,
    },

    #[error("line {line}: expected a `state letter state` transition")]
    BadTransition { line: usize },
}

impl ParseError {
    /// Line number (1-based) the error was detected on.
    pub fn line(&self) -> usize {
        match self {
            ParseError::ExpectedHeader { line, .. }
            | ParseError::EmptyAlphabet { line }
            | ParseError::BadToken { line, .. }
            | ParseError::DuplicateLetter { line, .. }
            | ParseError::DuplicateState { line, .. }
            | ParseError::UnknownState { line, .. }
            | ParseError::UnknownLetter { line, .. }
            | ParseError::InitialArity { line }
            | ParseError::DuplicateTransition { line, .. }
            | ParseError::MissingTransition { line, .. }
            | ParseError::BadTransition { line } => *line,
        }
    }
}
