use thiserror::Error;

/// Errors raised across the engine and the ring oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group is not a {p}-group: found a factor of order {found}")]
    NotAPGroup { p: u64, found: u64 },
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("expected an even modulus, got {0}")]
    OddModulus(u64),
    #[error("value exceeds the 64-bit range supported by this build")]
    TooLarge,
    #[error("search size {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring is not local")]
    NotLocal,
    #[error("radical ring has order {0}, expected 2^v with v >= 3")]
    WrongOrder(u128),
    #[error("Sylow 2-subgroup is not cyclic")]
    NonCyclicTwoPart,
    #[error("group has odd order")]
    OddOrder,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("torsion unit search did not close: {0}")]
    NonFiniteTorsion(String),
    #[error("unsupported base algebra: {0}")]
    UnsupportedBase(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate cannot be re-checked within the oracle caps: {0}")]
    UncheckableAtScale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
