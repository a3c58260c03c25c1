use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by the library. The CLI maps each variant onto an exit
/// code via [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid market: {0}")]
    InvalidMarket(String),

    #[error("invalid portfolio: {0}")]
    InvalidPortfolio(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate distribution: variance {variance:e} below threshold {threshold:e}")]
    DegenerateDistribution { variance: f64, threshold: f64 },

    #[error("invalid order {value} for {what}: must be at least {min}")]
    InvalidOrder { what: &'static str, value: u32, min: u32 },

    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("candidate set is empty")]
    EmptyCandidates,

    #[error("not a chain: elements {0} and {1} are incomparable")]
    NotAChain(usize, usize),

    #[error("candidate count {count} exceeds cap {cap}")]
    CapExceeded { count: u128, cap: u64 },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("stochastic-dominance objectives need a candidate set to build the t-grid")]
    MissingCandidates,

    #[error("dominator ascent revisited element {0}; the tolerance-relaxed relation is not transitive here")]
    Intransitive(usize),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("certificate failed for maximal element {element} at p = {p}: {detail}")]
    CertificationFailed { element: usize, p: usize, detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: u64, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code: 2 validation, 3 computation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerateDistribution { .. }
            | Error::CapExceeded { .. }
            | Error::Sampling(_)
            | Error::Intransitive(_)
            | Error::CertificationFailed { .. } => 3,
            Error::Io { .. } => 4,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
