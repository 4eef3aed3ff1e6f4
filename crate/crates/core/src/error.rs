use thiserror::Error;

/// Errors produced by group construction, parsing and character computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the order cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("generator {index} is not invertible: {reason}")]
    NonInvertible { index: usize, reason: String },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("pc presentation inconsistent: {0}")]
    Inconsistent(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("action is invalid: {0}")]
    InvalidAction(String),

    #[error("{0} is not coprime to the conductor {1}")]
    NotCoprime(i64, u32),

    #[error("conductor {0} exceeds the configured cap")]
    ConductorOverflow(u64),

    #[error("values do not share a prime-power conductor")]
    MixedConductors,

    #[error("no admissible prime for the Dixon reduction below {0}")]
    NoDixonPrime(u64),

    #[error("character is not linear")]
    NotLinear,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("not a character five: {0}")]
    NotCharacterFive(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
