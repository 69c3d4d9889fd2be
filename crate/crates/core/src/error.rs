//! Error type shared by every fallible operation in the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building model types or running the
/// analysis pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A scalar parameter fell outside its admissible closed interval.
    #[error("parameter `{name}` = {value} is outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A probability vector summed too far from one to be renormalized.
    /// Deviations up to the stated tolerance are silently rescaled;
    /// anything larger is treated as a caller bug rather than roundoff.
    #[error("probabilities sum to {sum}, more than {tolerance} away from 1")]
    NotNormalized { sum: f64, tolerance: f64 },

    /// A requested tree depth exceeds what the chosen method can handle.
    /// Exact enumeration stores `2^(2^depth)` outcome probabilities, so the
    /// cap is a hard capability limit, not a tuning knob.
    #[error("tree depth {depth} exceeds the supported maximum of {cap}")]
    DepthExceedsCap { depth: u32, cap: u32 },

    /// A conditional probability was requested but its conditioning event
    /// has (numerically) zero probability.
    #[error("conditioning event has probability {value}, too close to zero")]
    DegenerateDenominator { value: f64 },

    /// A mutual-information target cannot be met by any channel of the
    /// requested family (it exceeds the best achievable value).
    #[error("mutual information {value} bits exceeds the achievable maximum {max}")]
    MutualInformationOutOfRange { value: f64, max: f64 },

    /// A source prior of exactly 0 or 1 carries no information, so the
    /// effective-efficiency inversion is undefined there.
    #[error("source prior {value} must lie strictly between 0 and 1")]
    DegeneratePrior { value: f64 },

    /// A Monte Carlo run was requested with zero samples.
    #[error("at least one trial is required")]
    NoTrials,
}
