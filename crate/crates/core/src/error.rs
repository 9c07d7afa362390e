use num_bigint::BigUint;
use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an instance needs at least two agents, got {0}")]
    TooFewAgents(usize),

    #[error("weight of agent {agent} must be positive, got {value}")]
    NonPositiveWeight { agent: usize, value: Rational },

    #[error("utility of agent {agent} for item {item} must be nonnegative, got {value}")]
    NegativeUtility {
        agent: usize,
        item: usize,
        value: Rational,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("agent index {agent} out of range for {n} agents")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("item index {item} out of range for {m} items")]
    ItemOutOfRange { item: usize, m: usize },

    #[error("bundles do not partition the items: {0}")]
    NotPartition(String),

    #[error("counts sum to {sum} but there are {m} items")]
    CountSumMismatch { sum: usize, m: usize },

    #[error("picking sequence has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("enumeration needs {required} allocations, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },

    #[error("{kind} search exceeded its budget of {budget} states")]
    SearchBudgetExceeded { kind: &'static str, budget: u64 },

    #[error("{m} items exceed the cap of {cap} for {kind}")]
    TooManyItems {
        kind: &'static str,
        m: usize,
        cap: usize,
    },

    #[error("divisor function value f({t}) = {value} lies outside [{t}, {t}+1]")]
    DivisorRangeViolation { t: usize, value: Rational },

    #[error("parameter {name} = {value} is outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: Rational },

    #[error("instance does not have identical items")]
    NotIdenticalItems,

    #[error("instance does not have binary utilities")]
    NotBinary,

    #[error("allocation is not wasteless: agent {agent} holds item {item} valued at zero by that agent")]
    NotWasteless { agent: usize, item: usize },

    #[error("precondition violated: agent {agent} values item {item} at {value}, above the share {share}")]
    PreconditionViolated {
        agent: usize,
        item: usize,
        value: Rational,
        share: Rational,
    },

    #[error("invalid construction parameters: {0}")]
    ParameterViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    /// True for errors caused by an exhausted search or enumeration budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded { .. } | Error::TooManyItems { .. }
        )
    }
}
