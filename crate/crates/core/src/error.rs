use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the toolkit.
///
/// `line` fields refer to 1-based lines of the offending CSV file when the
/// error comes from `load`, and to the 1-based record ordinal (header counted
/// as line 1) when the graph was assembled programmatically.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: u64, msg: String },

    #[error("duplicate vertex id {id:?} (line {line})")]
    DuplicateVertex { id: String, line: u64 },

    #[error("edge ({a:?}, {b:?}) references unknown vertex id {id:?} (line {line})")]
    UnknownVertex { a: String, b: String, id: String, line: u64 },

    #[error("duplicate contact edge ({a:?}, {b:?}) (line {line})")]
    DuplicateEdge { a: String, b: String, line: u64 },

    #[error("self-loop on vertex {id:?} (line {line})")]
    SelfLoop { id: String, line: u64 },

    #[error("vertex {id:?} has more than one infector")]
    MultipleInfectors { id: String },

    #[error("snapshot is empty")]
    EmptySnapshot,

    #[error("snapshot has no edges")]
    NoEdges,

    #[error("degree histogram needs at least two distinct degrees >= k_min")]
    DegenerateHistogram,

    #[error("partition does not cover vertex {id:?}")]
    UncoveredVertex { id: String },

    #[error("degree sequence sums to an odd number")]
    OddDegreeSum,

    #[error("in-degree sum {in_sum} does not match out-degree sum {out_sum}")]
    DegreeSumMismatch { in_sum: usize, out_sum: usize },

    #[error("no simple matching found after {attempts} attempts")]
    ResamplingExhausted { attempts: usize },

    #[error("insufficient data: need at least {need} points, have {have}")]
    InsufficientData { need: usize, have: usize },

    #[error("zero variance in predictor; regression slope is undefined")]
    ZeroVariance,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input data or configuration, as opposed
    /// to runtime failures. The CLI maps these to exit code 2.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DuplicateVertex { .. }
                | Error::UnknownVertex { .. }
                | Error::DuplicateEdge { .. }
                | Error::SelfLoop { .. }
                | Error::MultipleInfectors { .. }
                | Error::InvalidConfig(_)
        )
    }
}
