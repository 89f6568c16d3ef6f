use thiserror::Error;

/// Errors raised by the group kernel and the checks built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: u64, cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{p} is not a prime dividing the group order {order}")]
    NotPrimeDivisor { p: u64, order: u64 },

    #[error("group is not soluble")]
    NotSoluble,

    #[error("group is not metanilpotent")]
    NotMetanilpotent,

    #[error("Sylow basis search exhausted after {attempts} attempts")]
    SearchExhausted { attempts: usize },

    #[error("Sylow subgroups for primes {p} and {q} do not permute")]
    PermutabilityViolated { p: u64, q: u64 },

    #[error("set is not commutator-closed")]
    NotCommutatorClosed,

    #[error("set does not generate the group")]
    NotGenerating,

    #[error("set contains an element that is not a {p}-element")]
    NotPElementSet { p: u64 },

    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),

    #[error("invalid word depth {0}")]
    InvalidDepth(usize),

    /// A postcondition that the underlying theory guarantees did not hold.
    /// Always an implementation defect.
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
