use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("recursion inapplicable: {0}")]
    RecursionInapplicable(&'static str),

    #[error("invalid spin label {0} (expected 0 or 1)")]
    InvalidLabel(i64),

    #[error("invalid eta weight {0} (expected a positive integer)")]
    InvalidWeight(i64),

    #[error("malformed value `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("tail count k0 + {offset} is negative at k0 = {k0}")]
    TailUnderflow { k0: u64, offset: i64 },

    #[error("{got} interpolation sample(s) given, at least {needed} required")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("duplicate interpolation sample {0}")]
    DuplicateSample(u64),
}
