use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: i64, n: u64 },

    #[error("moduli {left} and {right} are not coprime")]
    CrtNotCoprime { left: u64, right: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("enumeration too large: {points} tuples exceeds the budget of {budget}")]
    EnumerationTooLarge { points: u128, budget: u64 },

    #[error("partial result: no closed form and over budget at {}", fmt_factors(.uncomputed))]
    PartialResult { uncomputed: Vec<(u64, u32)> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Whether the error stems from caller-supplied arguments rather than
    /// from the computation itself.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::NotPrime(_)
                | Error::NotOddPrime(_)
                | Error::NotCoprime { .. }
                | Error::Unsupported(_)
        )
    }
}

fn fmt_factors(f: &[(u64, u32)]) -> String {
    f.iter()
        .map(|(p, t)| format!("{p}^{t}"))
        .collect::<Vec<_>>()
        .join(", ")
}
