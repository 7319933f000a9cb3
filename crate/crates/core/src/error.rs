use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("edge `{0}` is a loop")]
    Loop(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(i64),
    #[error("twist {twist} on edge `{edge}` is outside [0, {m})")]
    TwistOutOfRange { edge: String, twist: i64, m: u32 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,

    #[error("group elements are not composable (different modulus or site set)")]
    NotComposable,
    #[error("{a} does not divide {m}")]
    NotDivisor { a: u32, m: u32 },
    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("chain is not a 1-cycle: signed sum at vertex `{0}` is nonzero")]
    NotACycle(String),
    #[error("path is not contiguous at step {0}")]
    NonContiguous(usize),
    #[error("path does not close at its base")]
    NotClosed,

    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("state and graph do not match: {0}")]
    StateMismatch(String),
    #[error("blank is not at its home vertex")]
    BlankNotHome,

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("classification undecided: {0}")]
    Undecided(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
