use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{a} does not divide {n}")]
    NotADivisor { a: u64, n: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("deck shape mismatch: (n={n1}, k={k1}) vs (n={n2}, k={k2})")]
    ShapeMismatch { n1: usize, k1: usize, n2: usize, k2: usize },
    #[error("deck needs {required} entries, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("deck order k must be at least 2, got {0}")]
    DeckOrder(usize),
    #[error("modulus {n} exceeds the cap {cap}")]
    ModulusTooLarge { n: usize, cap: usize },
    #[error("the candidate domain is empty")]
    EmptyDomain,
    #[error("domain has no nonzero element")]
    NoNonzeroElement,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("cannot parse set: {0}")]
    Parse(String),
}
