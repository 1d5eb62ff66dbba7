use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("exponent undefined on empty word")]
    EmptyWord,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("digram graph not Eulerian for rank < 2")]
    RankTooSmall,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid subcomplex: {0}")]
    InvalidSubcomplex(String),
    #[error("malformed two-cell diagram: {0}")]
    MalformedDiagram(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error(
        "degree bound violated: requested {requested} unused labels, only {available} available"
    )]
    DegreeBoundViolated { requested: usize, available: usize },
    #[error("generator exhausted after {0} escalations")]
    GeneratorExhausted(usize),
    #[error("no free part: the irreducible construction needs at least one free generator")]
    NoFreePart,
    #[error("invalid HNN input: {}", .0.join("; "))]
    InvalidHnn(Vec<String>),
    #[error("certificate check failed: {0}")]
    CertificateFailure(String),
    #[error("presentation not metric small cancellation")]
    NotMetricSmallCancellation,
    #[error("sample is not trivial: {0}")]
    NotTrivial(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
