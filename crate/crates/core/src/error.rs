use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count {0} is out of range (need 2..={max})", max = crate::braid::MAX_STRANDS)]
    StrandCount(usize),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("letter {letter} is not a generator of Br_{m}")]
    BadLetter { letter: i32, m: usize },
    #[error("band index ({k},{l}) invalid for m = {m}")]
    BadPair { k: usize, l: usize, m: usize },
    #[error("braid is not pure")]
    NotPure,
    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
    #[error("factors at {0} and {next} are not a cancelling node pair", next = .0 + 1)]
    NotCancelling(usize),
    #[error("insertion needs a factor of class A1, got {0}")]
    InsertClass(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("subgroup exceeds the size guard of {0} elements")]
    SubgroupTooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("move {step} cannot be applied: {reason}")]
    Replay { step: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
