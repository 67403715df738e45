use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),

    #[error("{what} = {value} is outside the supported domain ({expected})")]
    Domain {
        what: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("{what} = {value} exceeds the supported bound {bound}")]
    OutOfRange { what: &'static str, value: u64, bound: u64 },

    #[error("Bernoulli index {0} must be even and at least 2")]
    BernoulliIndex(u64),

    #[error("Stirling series diverged at term {term} for shifted argument {argument}")]
    SeriesDiverged { term: usize, argument: String },

    #[error("polynomial division is not exact: {0}")]
    InexactDivision(&'static str),

    #[error("{0} is not smooth over primes up to {1}")]
    NotSmooth(String, u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(what: &'static str, value: impl ToString, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value: value.to_string(),
        expected,
    }
}

pub(crate) fn check_bound(what: &'static str, value: u64, bound: u64) -> Result<()> {
    if value > bound {
        Err(Error::OutOfRange { what, value, bound })
    } else {
        Ok(())
    }
}
