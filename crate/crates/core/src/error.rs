use thiserror::Error;

/// Reasons a fiber document is rejected after it has been parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("fiber has no components")]
    Empty,
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("self-loop on component `{0}` (not strict normal crossings)")]
    SelfLoop(String),
    #[error("characteristic exponent {0} is neither 1 nor a prime")]
    BadCharacteristic(u64),
    #[error("edge endpoint `{0}` is not a component id")]
    UnknownEndpoint(String),
    #[error("component `{id}` has nonpositive multiplicity {value}")]
    NonpositiveMultiplicity { id: String, value: i64 },
    #[error("component `{id}` has negative genus {value}")]
    NegativeGenus { id: String, value: i64 },
    #[error("duplicate component id `{0}`")]
    DuplicateId(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(#[from] ValidationError),
    #[error("cyclotomic factor Phi_{d} has negative exponent {exponent}; not a polynomial")]
    NegativeExponent { d: u64, exponent: i64 },
    #[error("tame formula requires the caller to assert tameness and the genus/index hypothesis")]
    HypothesisNotAsserted,
    #[error("tameness violated on components: {}", .0.join(", "))]
    TamenessViolation(Vec<String>),
    #[error("characteristic polynomial has a pole of order {0} at T = 1")]
    PoleAtOne(i64),
    #[error("value at T = 1 is the non-integer {0}")]
    NonIntegralTrace(String),
    #[error("fiber does not have purely additive shape (a = {a}, t = {t})")]
    NotPurelyAdditive { a: u64, t: u64 },
    #[error("component group order evaluates to the non-integer {0}; graph is not realizable")]
    NonIntegralResult(String),
    #[error("toric rank is zero but abelian rank is positive; phi_A must be supplied")]
    PhiUnavailable,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("the two characteristic polynomial routes disagree: {via_zeta} vs {lorenzini}")]
    DualRouteMismatch { via_zeta: String, lorenzini: String },
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),
}

impl Error {
    /// True for failures that indicate a library defect rather than bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::DualRouteMismatch { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
