use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word of length {len} is too short: at least {needed} symbols required")]
    WordTooShort { len: usize, needed: usize },

    #[error("cyclic width {width} is too small: at least {needed} cells required")]
    WidthTooSmall { width: usize, needed: usize },

    #[error("invalid symbol {found:?} at index {index}: words are strings over {{0,1}}")]
    InvalidSymbol { index: usize, found: char },

    #[error("spacetime diagram has no rows")]
    EmptyDiagram,

    #[error("row {row} does not fit the diagram geometry: {reason}")]
    GeometryMismatch { row: usize, reason: String },

    #[error("word {word} has {count} kinks, exactly two required")]
    NotTwoKink { word: Word, count: usize },

    #[error("extension pad {pad} exceeds the configured bound {bound}")]
    PadTooLarge { pad: usize, bound: usize },

    #[error("word {0} is not stable")]
    NotStable(Word),

    #[error("word {0} has the excluded shape 0^a (10)^n 1^b")]
    ExcludedForm(Word),

    #[error("{target} is not a kink-preserving extension of {base}")]
    NotAnExtension { base: Word, target: Word },

    #[error("no lift of {target} extends {base}")]
    NoLift { base: Word, target: Word },

    #[error("{count} distinct lifts of {target} extend {base}, expected exactly one")]
    NonUnique { base: Word, target: Word, count: usize },

    #[error("word {word} does not have the shape 11 v 11 with an even number of 1s in v: {reason}")]
    BadShape { word: Word, reason: &'static str },

    #[error("fit window [{n_min}, {n_max}] is degenerate: {reason}")]
    DegenerateWindow {
        n_min: usize,
        n_max: usize,
        reason: &'static str,
    },

    #[error("at least one trial is required")]
    NoTrials,

    #[error("kink count rose from {before} to {after} at step {step} of trial {trial}")]
    KinkCreated {
        trial: u64,
        step: usize,
        before: usize,
        after: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
