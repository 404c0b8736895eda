use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("player count {0} outside supported range 2..=16")]
    InvalidPlayerCount(usize),
    #[error("invalid player label `{0}`")]
    InvalidLabel(String),
    #[error("duplicate player label `{0}`")]
    DuplicateLabel(String),
    #[error("coalition mask {mask:#x} out of range for {n} players")]
    CoalitionOutOfRange { mask: u32, n: usize },
    #[error("set system contains a trivial set (empty or grand coalition)")]
    TrivialSet,
    #[error("set system is empty")]
    EmptySystem,
    #[error("set system lists a coalition twice")]
    DuplicateSet,
    #[error("ground set of {n} players exceeds the limit of {max} for this operation")]
    GroundTooLarge { n: usize, max: usize },
    #[error("objects live on different player sets")]
    GroundMismatch,
    #[error("set system is not min-semi-balanced")]
    NotMinimal,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("value for coalition `{0}` is missing")]
    MissingValue(String),
    #[error("generator and direct enumeration disagree on {n} players ({generated} vs {direct} systems)")]
    GeneratorMismatch {
        n: usize,
        generated: usize,
        direct: usize,
    },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
