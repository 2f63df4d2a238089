use thiserror::Error;

use crate::nonuniformize::PeriodicForm;
use crate::word::Symbol;

/// Errors from building symbols, alphabets and words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol name {0:?}: names are non-empty, without whitespace, '->' or '#'")]
    InvalidSymbolName(String),
    #[error("symbol {0} appears twice in the alphabet")]
    DuplicateSymbol(Symbol),
    #[error("an alphabet needs at least one symbol")]
    EmptyAlphabet,
    #[error("symbol {0} is not allowed here")]
    AlienSymbol(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("symbol {0} is outside the alphabet")]
    AlienSymbol(Symbol),
    #[error("alphabet mismatch: {0}")]
    DomainMismatch(String),
    #[error("no image given for symbol {0}")]
    MissingImage(Symbol),
    #[error("two images given for symbol {0}")]
    DuplicateImage(Symbol),
    #[error("not a coding: the image of {0} does not have length 1")]
    NotCoding(Symbol),
    #[error("the morphism is not prolongable from {0}")]
    NotProlongable(Symbol),
    #[error("the morphism is not uniform")]
    NotUniform,
    #[error("the morphism is 1-uniform; an arity of at least 2 is required")]
    ArityOne,
    #[error("search exhausted its bound of {bound} ({what})")]
    NotFound { what: &'static str, bound: usize },
    #[error("the sequence looks ultimately periodic (preperiod {}, period {}); use the periodic construction or assert aperiodicity", .0.preperiod.len(), .0.period.len())]
    LikelyPeriodic(PeriodicForm),
    #[error("index {index} is out of range: {reason}")]
    IndexOutOfRange { index: usize, reason: &'static str },
    #[error("word of length {0} cannot be cut into two non-empty words of unequal length")]
    TooShort(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bad preperiod: {0}")]
    BadPreperiod(String),
    #[error("the period of a periodic form must be non-empty")]
    EmptyPeriod,
    #[error("only {found} occurrences of {marker} within {budget} letters; {wanted} needed")]
    InsufficientOccurrences {
        marker: Symbol,
        found: usize,
        wanted: usize,
        budget: usize,
    },
    #[error("incidence matrix entry overflowed")]
    Overflow,
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
