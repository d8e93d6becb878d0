use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. The variant name is what the CLI reports on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroArgument: {0} requires a nonzero argument")]
    ZeroArgument(&'static str),
    #[error("NonzeroConstantTerm: the summand has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("IdenticallyZero: the Laurent polynomial is identically zero")]
    IdenticallyZero,
    #[error("StepLimitExceeded: rewrite budget of {0} steps exhausted")]
    StepLimitExceeded(u64),
    #[error("DenominatorVanishes: bracket <{bracket}> is zero for m = {m}")]
    DenominatorVanishes { bracket: String, m: i64 },
    #[error("ZeroDeformation: the operation requires C0 = p(C) with p != 0")]
    ZeroDeformation,
    #[error("NotFiniteDimensional: V({0}) is infinite dimensional")]
    NotFiniteDimensional(String),
    #[error("ConstructionInconsistent: relations failed: {0}")]
    ConstructionInconsistent(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("SpanTooLarge: candidate span has {size} monomials, limit is {limit}")]
    SpanTooLarge { size: usize, limit: usize },
    #[error("Overflow: exponent out of range")]
    Overflow,
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroArgument(_) => "ZeroArgument",
            Error::NonzeroConstantTerm => "NonzeroConstantTerm",
            Error::IdenticallyZero => "IdenticallyZero",
            Error::StepLimitExceeded(_) => "StepLimitExceeded",
            Error::DenominatorVanishes { .. } => "DenominatorVanishes",
            Error::ZeroDeformation => "ZeroDeformation",
            Error::NotFiniteDimensional(_) => "NotFiniteDimensional",
            Error::ConstructionInconsistent(_) => "ConstructionInconsistent",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SpanTooLarge { .. } => "SpanTooLarge",
            Error::Overflow => "Overflow",
        }
    }
}
