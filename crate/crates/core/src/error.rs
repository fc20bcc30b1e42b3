use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point set width {got} does not match model width {expected}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("invalid point id {id} (model has {width} points)")]
    InvalidPoint { id: usize, width: usize },

    #[error("unknown point name {name:?}")]
    UnknownPointName { name: String },

    #[error("model must have at least one point")]
    EmptyModel,

    #[error("duplicate point id {name:?}")]
    DuplicatePointName { name: String },

    #[error("edge {src:?} -> {dst:?} references an unknown point")]
    DanglingEdge { src: String, dst: String },

    #[error("walk must be non-empty")]
    EmptyWalk,

    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("class {{{members}}} mixes different labels; quotient undefined")]
    InconsistentClassLabels { members: String },

    #[error("{what} supports at most {limit} points, model has {actual}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("points {p1:?} and {p2:?} are CMC-equivalent; no distinguishing formula exists")]
    NoWitness { p1: String, p2: String },

    #[error("computed relation is not an equivalence: {detail}")]
    NotAnEquivalence { detail: String },

    #[error("unknown atomic proposition {name:?}")]
    UnknownAtom { name: String },

    #[error(transparent)]
    Parse(#[from] crate::logic::ParseError),

    #[error("{0}")]
    Format(String),

    #[error("unknown color {color} at pixel ({row}, {col})")]
    UnknownColor { row: usize, col: usize, color: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
