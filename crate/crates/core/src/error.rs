use thiserror::Error;

/// Errors raised by the exact algebra and dynamics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },

    #[error("expression has a zero denominator")]
    ZeroDenominator,

    #[error("degree {degree} exceeds the configured cap {cap}")]
    IterationBudgetExceeded { degree: u128, cap: usize },

    #[error("{point} is not a fixed point of the map")]
    NotAFixedPoint { point: String },

    #[error("multiplier {multiplier} is resonant: its power {power} equals itself")]
    ResonantMultiplier { multiplier: String, power: usize },

    #[error("multiplier is zero (superattracting point)")]
    ZeroMultiplier,

    #[error("base point is infinity or a pole; conjugate by 1/z first")]
    PointAtInfinity,

    #[error("map has a pole at the base point {point}")]
    PoleAtBasePoint { point: String },

    #[error(
        "leading Boettcher coefficient needs a root of a^{exponent} = {radicand} in the field"
    )]
    LeadingCoefficientNotSolvable { radicand: String, exponent: u32 },

    #[error("degree {degree} is too small; at least 2 is required")]
    DegreeTooSmall { degree: usize },

    #[error("insufficient order: need at least {needed} coefficients, have {available}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("degenerate parametrization: {0}")]
    DegenerateParametrization(String),

    #[error("inconsistent degrees: {0}")]
    InconsistentDegrees(String),

    #[error("the parametrization does not satisfy the curve equation")]
    ParamMismatch,

    #[error("preimage contains points outside the field: factor {factor}")]
    UnresolvedPreimage { factor: String },

    #[error("cannot factor {value} with trial division up to the prime bound")]
    FactorizationLimit { value: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
