use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: i64 },
    #[error("first entry must be 0, found {value}")]
    NonzeroStart { value: i64 },
    #[error("entry {value} at index {index} exceeds the ascent bound {bound}")]
    AscentBound {
        index: usize,
        value: i64,
        bound: u32,
    },
    #[error("cannot parse sequence {0:?}")]
    ParseSequence(String),
    #[error("cannot parse pattern {0:?}")]
    ParsePattern(String),

    #[error("illegal step character {ch:?} at index {index}")]
    IllegalStep { index: usize, ch: char },
    #[error("path dips below the axis at step {index}")]
    BelowAxis { index: usize },
    #[error("path is unbalanced: {ups} up steps, {downs} down steps")]
    Unbalanced { ups: usize, downs: usize },
    #[error("path is empty")]
    EmptyPath,

    #[error("{seq} is not in the class avoiding {class}")]
    NotInClass { seq: String, class: String },
    #[error("internal reduction fault on {seq}: {reason}")]
    ReductionFault { seq: String, reason: String },
    #[error("{0} has no active-site decomposition")]
    NoDecomposition(String),

    #[error("Narayana number N({n}, {m}) is out of range")]
    NarayanaRange { n: u32, m: u32 },

    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("substituting {var} would lose truncated terms")]
    UnsoundSubstitution { var: char },
}
