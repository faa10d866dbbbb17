use thiserror::Error;

/// Why a line of an automaton file was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `states <n>` header")]
    MalformedHeader,
    #[error("expected `alphabet <letters...>` line")]
    MalformedAlphabet,
    #[error("letter `{0}` is not a single character")]
    NonSingleCharLetter(String),
    #[error("letter `{0}` is reserved")]
    ReservedLetter(char),
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(char),
    #[error("row for letter `{0}` which is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter `{0}` has more than one row")]
    DuplicateRow(char),
    #[error("row has {found} targets, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("target `{0}` is not a state label")]
    BadTarget(String),
    #[error("target state {target} out of range 1..={n}")]
    TargetOutOfRange { target: usize, n: usize },
    #[error("missing row for letter `{0}`")]
    MissingRow(char),
    #[error("{0} states exceed the supported maximum of {max}", max = crate::automaton::MAX_STATES)]
    TooManyStates(usize),
    #[error("unexpected content after all rows")]
    TrailingContent,
}

/// A rejected automaton file, with the 1-based line the problem was found on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("letter `{0}` is not in the alphabet")]
    LetterNotInAlphabet(char),
    #[error("letter index {0} is out of range for this alphabet")]
    LetterIndexOutOfRange(usize),
    #[error("state {state} out of range 1..={n}")]
    StateOutOfRange { state: usize, n: usize },
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("collection state map is not a cyclic permutation")]
    NotCyclic,
    #[error("collection is not efficient (longest word {longest} > {n})")]
    NotEfficient { longest: usize, n: usize },
    #[error("target subset is empty")]
    EmptyTarget,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
