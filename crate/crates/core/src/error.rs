use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid rank set: {0}")]
    InvalidRankSet(String),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("rank set {requested:?} is not contained in the chain support {support:?}")]
    NotInSupport { requested: Vec<usize>, support: Vec<usize> },
    #[error("chain is not maximal: support {0:?}")]
    NotMaximal(Vec<usize>),
    #[error("invalid insertion sequence: {0}")]
    InvalidInsertions(String),
    #[error("block order: {0}")]
    BlockOrder(String),
    #[error("block order fails the lengthening condition for shape {0}")]
    LengtheningFailed(String),
    #[error("duplicate label sequence for distinct facets {0} and {1}")]
    LabelTie(String, String),
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("word {0} ends in a descent; no construction is available")]
    UnsupportedWord(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("cache checksum mismatch for {0}")]
    Checksum(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidShape(_) => "invalid-shape",
            Error::InvalidRankSet(_) => "invalid-rank-set",
            Error::MalformedChain(_) => "malformed-chain",
            Error::NotInSupport { .. } => "not-in-support",
            Error::NotMaximal(_) => "not-maximal",
            Error::InvalidInsertions(_) => "invalid-insertions",
            Error::BlockOrder(_) => "block-order",
            Error::LengtheningFailed(_) => "lengthening-failed",
            Error::LabelTie(..) => "label-tie",
            Error::Domain(_) => "domain",
            Error::UnsupportedWord(_) => "unsupported-word",
            Error::Construction(_) => "construction",
            Error::Parse(_) => "parse",
            Error::Overflow(_) => "overflow",
            Error::Cache(_) => "cache",
            Error::Checksum(_) => "checksum",
        }
    }
}
