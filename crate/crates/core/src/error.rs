use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("good index {index} out of range for {goods} goods")]
    GoodOutOfRange { index: usize, goods: usize },

    #[error("at most {max} goods are supported, got {goods}")]
    TooManyGoods { goods: usize, max: usize },

    #[error("{check} needs at most {max} goods, got {goods}")]
    SizeGuard {
        check: &'static str,
        goods: usize,
        max: usize,
    },

    #[error("exhaustive scan over {profiles} profiles exceeds the limit of {limit}")]
    ScanGuard { profiles: u128, limit: u128 },

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("valuation is not normalized: value of the empty bundle is {0}")]
    NotNormalized(String),

    #[error("valuation of agent {agent} is not monotone")]
    NotMonotone { agent: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("malformed ranking: {0}")]
    MalformedRanking(String),

    #[error("malformed profile: {0}")]
    MalformedProfile(String),

    #[error("allocation is not a partition of the goods: {0}")]
    NotPartition(String),

    #[error("agent {agent} out of range for {agents} agents")]
    AgentOutOfRange { agent: usize, agents: usize },

    #[error("fixture parameter constraint violated: {0}")]
    FixtureConstraint(String),

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("instance document: {0}")]
    Document(String),

    #[error("no certified valuation class gives a fairness bound for this instance")]
    NoApplicableBound,

    #[error("generator could not certify a {class} instance after {attempts} attempts")]
    Certification { class: String, attempts: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
