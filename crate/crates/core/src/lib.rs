//! Exact simulator and information-theoretic analyzer for copier-enhanced
//! photodetection.
//!
//! A binary source emits either vacuum or a single photon, and the receiver
//! must decide which. Instead of feeding the signal straight into an
//! imperfect photodetector, it can first be run through a tree of imperfect
//! quantum copiers (Wootters-Zurek type, realizable as a controlled-NOT
//! entangler) so that every copy gets its own detector. This crate computes
//! the exact outcome statistics of that scheme and scores it by Shannon
//! mutual information and by the equivalent efficiency of a single noiseless
//! detector.
//!
//! The crate is split along the natural seams of the problem:
//!
//! - [`model`] holds the elementary physics: detector POVM, the noisy
//!   copier channel on basis states, and the ideal CNOT acting on
//!   two-qubit pure states.
//! - [`cascade`] builds the N-level copier tree with one detector per
//!   leaf: exact conditional outcome distributions, a Monte Carlo sampler
//!   for cross-checking them, and the single-copier reference formulas.
//! - [`information`] scores the resulting channel: mutual information,
//!   the effective-efficiency inversion, its closed form in the noiseless
//!   regime, and the copier-quality threshold for any improvement.
//!
//! All computations are pure functions of immutable value types and can be
//! called concurrently without synchronization.
//!
//! ```
//! use qcopier::model::{CopierParams, DetectorParams};
//! use qcopier::cascade::SchemeConfig;
//! use qcopier::information::evaluate_scheme;
//!
//! let detector = DetectorParams::new(0.6, 0.0).unwrap();
//! let copier = CopierParams::new(1.0, -1.0).unwrap();
//! let config = SchemeConfig::new(1, 0.5).unwrap();
//! let result = evaluate_scheme(&config, &copier, &detector).unwrap();
//! // One layer of perfect copiers turns a 60% detector into an 84% one.
//! assert!((result.effective_efficiency - 0.84).abs() < 1e-9);
//! ```

pub mod cascade;
pub mod error;
pub mod information;
pub mod model;

pub use cascade::{ConditionalOutcomeDistribution, EmpiricalDistribution, SchemeConfig};
pub use error::{Error, Result};
pub use information::InformationResult;
pub use model::{
    CopierParams, DetectorParams, DiagonalQubitState, PairDistribution, PovmElement, Symbol,
    TwoQubitPureState,
};

/// Amplitude type used by [`TwoQubitPureState`], re-exported so callers do
/// not need a direct `num-complex` dependency.
pub use num_complex::Complex64;
