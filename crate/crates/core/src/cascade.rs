//! The copier tree: a complete binary tree of identical copiers with one
//! detector on each of the 2^N leaves.
//!
//! Level 0 is a bare detector. At level N the input qubit is copied, each
//! copy feeds a level N-1 subtree, and the joint record of all leaf
//! detectors is the measurement outcome. Copies produced by a failing
//! copier are re-copied at deeper levels like any other qubit; failures
//! are independent across the tree.
//!
//! A pattern over 2^n leaves is encoded as an unsigned integer with one
//! bit per detector (1 = count). Leaves are numbered left to right and
//! leaf k owns bit k, so the left subtree always occupies the low-order
//! bits. This order is fixed so serialized outputs are reproducible.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{
    copier_channel, detector_povm, outcome_probability, CopierParams, DetectorParams,
    DiagonalQubitState, Symbol,
};

/// Deepest tree any method in this crate will touch. At 5 levels the
/// pattern space is 2^32, which only the sampling path can afford.
pub const MAX_LEVELS: u32 = 5;

/// Deepest tree for which full outcome vectors are computed. One level
/// more would need a 2^32-entry vector.
pub const MAX_EXACT_LEVELS: u32 = 4;

/// Row-sum tolerance for conditional outcome distributions. Looser than
/// the constructor tolerance of elementary objects because each entry of
/// a deep tree accumulates thousands of products.
pub const ROW_SUM_TOLERANCE: f64 = 1e-10;

/// Number of copier levels plus the photon prior of the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    levels: u32,
    prior_p: f64,
}

impl SchemeConfig {
    /// `levels` may be 0 (a bare detector) up to [`MAX_LEVELS`]. Any prior
    /// in [0, 1] is accepted here; information-theoretic scoring rejects
    /// the degenerate endpoints separately.
    pub fn new(levels: u32, prior_p: f64) -> Result<Self> {
        if levels > MAX_LEVELS {
            return Err(Error::DepthExceedsCap {
                depth: levels,
                cap: MAX_LEVELS,
            });
        }
        if !(0.0..=1.0).contains(&prior_p) {
            return Err(Error::ParameterOutOfRange {
                name: "prior_p",
                value: prior_p,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(SchemeConfig { levels, prior_p })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn prior_p(&self) -> f64 {
        self.prior_p
    }

    pub fn num_detectors(&self) -> u32 {
        1 << self.levels
    }

    pub fn num_patterns(&self) -> u64 {
        1u64 << (1u64 << self.levels)
    }
}

/// Joint record of every leaf detector, encoded as an integer with bit k
/// carrying detector k (1 = count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomePattern {
    index: u64,
    num_detectors: u32,
}

impl OutcomePattern {
    pub fn new(index: u64, num_detectors: u32) -> Result<Self> {
        if !(1..=32).contains(&num_detectors) {
            return Err(Error::ParameterOutOfRange {
                name: "num_detectors",
                value: num_detectors as f64,
                min: 1.0,
                max: 32.0,
            });
        }
        let patterns = 1u64 << num_detectors;
        if index >= patterns {
            return Err(Error::ParameterOutOfRange {
                name: "pattern_index",
                value: index as f64,
                min: 0.0,
                max: (patterns - 1) as f64,
            });
        }
        Ok(OutcomePattern {
            index,
            num_detectors,
        })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn num_detectors(&self) -> u32 {
        self.num_detectors
    }

    /// Whether detector `k` fired. Leaves are numbered left to right.
    pub fn fired(&self, k: u32) -> bool {
        k < self.num_detectors && (self.index >> k) & 1 == 1
    }

    /// How many detectors fired.
    pub fn count(&self) -> u32 {
        self.index.count_ones()
    }
}

impl fmt::Display for OutcomePattern {
    /// Renders detector 0 leftmost, matching the physical leaf order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.num_detectors {
            f.write_str(if self.fired(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Outcome-pattern distributions of one scheme, conditioned on each of
/// the two source symbols. These two rows are the complete description of
/// the scheme as a classical channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalOutcomeDistribution {
    given_vacuum: Vec<f64>,
    given_photon: Vec<f64>,
}

impl ConditionalOutcomeDistribution {
    /// Rows must have equal nonzero length, non-negative entries, and
    /// sums within [`ROW_SUM_TOLERANCE`] of 1; each row is then rescaled
    /// to sum to exactly 1.
    pub fn new(given_vacuum: Vec<f64>, given_photon: Vec<f64>) -> Result<Self> {
        if given_vacuum.len() != given_photon.len() || given_vacuum.is_empty() {
            return Err(Error::ParameterOutOfRange {
                name: "row_length",
                value: given_photon.len() as f64,
                min: 1.0,
                max: given_vacuum.len() as f64,
            });
        }
        let mut rows = [given_vacuum, given_photon];
        for row in &mut rows {
            let mut sum = 0.0;
            for q in row.iter_mut() {
                // Entries of a deep tree are sums of thousands of
                // products; tolerate roundoff-scale overshoot at the
                // endpoints and clamp it away.
                if !(-1e-12..=1.0 + 1e-12).contains(q) {
                    return Err(Error::ParameterOutOfRange {
                        name: "pattern probability",
                        value: *q,
                        min: 0.0,
                        max: 1.0,
                    });
                }
                *q = q.clamp(0.0, 1.0);
                sum += *q;
            }
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::NotNormalized {
                    sum,
                    tolerance: ROW_SUM_TOLERANCE,
                });
            }
            for q in row.iter_mut() {
                *q /= sum;
            }
        }
        let [given_vacuum, given_photon] = rows;
        Ok(ConditionalOutcomeDistribution {
            given_vacuum,
            given_photon,
        })
    }

    pub fn given_vacuum(&self) -> &[f64] {
        &self.given_vacuum
    }

    pub fn given_photon(&self) -> &[f64] {
        &self.given_photon
    }

    pub fn row(&self, input: Symbol) -> &[f64] {
        match input {
            Symbol::Vacuum => &self.given_vacuum,
            Symbol::Photon => &self.given_photon,
        }
    }

    pub fn num_patterns(&self) -> usize {
        self.given_vacuum.len()
    }
}

/// Exact outcome distributions of a depth-`depth` subtree for both input
/// symbols, built bottom-up. Identical copiers and detectors at every
/// node make the distribution a function of input symbol and depth alone,
/// so each level is computed once per symbol from the level below.
fn distributions_by_input(
    depth: u32,
    copier: &CopierParams,
    detector: &DetectorParams,
) -> Result<[Vec<f64>; 2]> {
    if depth > MAX_EXACT_LEVELS {
        return Err(Error::DepthExceedsCap {
            depth,
            cap: MAX_EXACT_LEVELS,
        });
    }
    let (fires, _) = detector_povm(detector);
    let leaf = |symbol: Symbol| {
        let p = outcome_probability(&DiagonalQubitState::pure(symbol), &fires);
        vec![1.0 - p, p]
    };
    let mut dists = [leaf(Symbol::Vacuum), leaf(Symbol::Photon)];

    for level in 1..=depth {
        // A child subtree covers 2^(level-1) leaves, so the right child's
        // half-pattern is shifted past that many bits.
        let shift = 1usize << (level - 1);
        let child_len = 1usize << shift;
        debug_assert_eq!(dists[0].len(), child_len);
        let mut next = [
            vec![0.0; child_len * child_len],
            vec![0.0; child_len * child_len],
        ];
        for (input_bit, accum) in next.iter_mut().enumerate() {
            let pair = copier_channel(Symbol::from_bit(input_bit), copier);
            for left_bit in 0..2 {
                for right_bit in 0..2 {
                    let weight = pair.prob(Symbol::from_bit(left_bit), Symbol::from_bit(right_bit));
                    if weight == 0.0 {
                        continue;
                    }
                    for (right, &pr) in dists[right_bit].iter().enumerate() {
                        let scaled = weight * pr;
                        if scaled == 0.0 {
                            continue;
                        }
                        let base = right << shift;
                        for (left, &pl) in dists[left_bit].iter().enumerate() {
                            accum[base | left] += scaled * pl;
                        }
                    }
                }
            }
        }
        dists = next;
    }
    Ok(dists)
}

/// Exact probability vector over the 2^(2^depth) leaf patterns of a
/// subtree fed with a definite symbol. Depth 0 is the bare detector.
pub fn subtree_outcome_distribution(
    input: Symbol,
    depth: u32,
    copier: &CopierParams,
    detector: &DetectorParams,
) -> Result<Vec<f64>> {
    let [vacuum, photon] = distributions_by_input(depth, copier, detector)?;
    Ok(match input {
        Symbol::Vacuum => vacuum,
        Symbol::Photon => photon,
    })
}

/// The scheme as a classical channel: exact pattern distributions given
/// vacuum and given a photon.
pub fn conditional_distributions(
    config: &SchemeConfig,
    copier: &CopierParams,
    detector: &DetectorParams,
) -> Result<ConditionalOutcomeDistribution> {
    let [vacuum, photon] = distributions_by_input(config.levels(), copier, detector)?;
    ConditionalOutcomeDistribution::new(vacuum, photon)
}

/// Pattern counts from repeated stochastic runs of the tree.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    counts: HashMap<u64, u64>,
    trials: u64,
    num_patterns: u64,
}

impl EmpiricalDistribution {
    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn num_patterns(&self) -> u64 {
        self.num_patterns
    }

    /// Observed frequency of one pattern.
    pub fn frequency(&self, pattern: u64) -> f64 {
        *self.counts.get(&pattern).unwrap_or(&0) as f64 / self.trials as f64
    }

    /// All observed patterns with their counts, in pattern order.
    pub fn counts(&self) -> Vec<(u64, u64)> {
        let mut pairs: Vec<(u64, u64)> = self.counts.iter().map(|(&k, &v)| (k, v)).collect();
        pairs.sort_unstable();
        pairs
    }

    /// Total-variation distance to an exact distribution over the same
    /// pattern space: half the sum of absolute frequency differences.
    pub fn total_variation_distance(&self, exact: &[f64]) -> f64 {
        debug_assert_eq!(exact.len() as u64, self.num_patterns);
        let sum: f64 = exact
            .iter()
            .enumerate()
            .map(|(pattern, &p)| (self.frequency(pattern as u64) - p).abs())
            .sum();
        sum / 2.0
    }
}

struct TreeSampler {
    success_prob: f64,
    failure: [f64; 4],
    fire_on: [f64; 2],
}

impl TreeSampler {
    fn sample(&self, input_bit: usize, depth: u32, rng: &mut ChaCha8Rng) -> u64 {
        if depth == 0 {
            return (rng.gen::<f64>() < self.fire_on[input_bit]) as u64;
        }
        let (left_bit, right_bit) = if rng.gen::<f64>() < self.success_prob {
            (input_bit, input_bit)
        } else {
            // Draw the failure pair jointly; the two copies of a failed
            // copier are correlated through the shape parameter.
            let draw = rng.gen::<f64>();
            let mut acc = 0.0;
            let mut index = 3;
            for (i, &q) in self.failure.iter().enumerate() {
                acc += q;
                if draw < acc {
                    index = i;
                    break;
                }
            }
            (index >> 1, index & 1)
        };
        let left = self.sample(left_bit, depth - 1, rng);
        let right = self.sample(right_bit, depth - 1, rng);
        left | (right << (1u64 << (depth - 1)))
    }
}

/// Samples the stochastic tree `trials` times and tallies leaf patterns.
/// Runs are reproducible: the generator is seeded per call, so identical
/// arguments give identical counts and distinct seeds are independent.
/// Depth may exceed the exact cap, up to [`MAX_LEVELS`].
pub fn monte_carlo_distribution(
    input: Symbol,
    depth: u32,
    copier: &CopierParams,
    detector: &DetectorParams,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    if depth > MAX_LEVELS {
        return Err(Error::DepthExceedsCap {
            depth,
            cap: MAX_LEVELS,
        });
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let sampler = TreeSampler {
        success_prob: copier.success_prob(),
        failure: crate::model::copier_failure_state(copier.failure_shape())?.as_array(),
        fire_on: [detector.dark_count_prob(), detector.efficiency()],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = HashMap::new();
    for _ in 0..trials {
        let pattern = sampler.sample(input.bit(), depth, &mut rng);
        *counts.entry(pattern).or_insert(0) += 1;
    }
    Ok(EmpiricalDistribution {
        counts,
        trials,
        num_patterns: 1u64 << (1u64 << depth),
    })
}

/// Probability that a photon is seen by at least one of the two detectors
/// behind a single perfect copier: eta(2 - eta), always at least eta.
pub fn perfect_copier_count_prob(efficiency: f64) -> f64 {
    efficiency * (2.0 - efficiency)
}

/// Posterior probability that no photon was incident given that neither
/// detector behind a single perfect copier fired, for a photon prior `p`.
/// The denominator vanishes only at efficiency 1 and prior 1, where the
/// conditioning event is impossible.
pub fn perfect_copier_no_photon_posterior(efficiency: f64, photon_prior: f64) -> Result<f64> {
    let denominator = 1.0 - photon_prior * perfect_copier_count_prob(efficiency);
    if denominator < 1e-15 {
        return Err(Error::DegenerateDenominator { value: denominator });
    }
    Ok((1.0 - photon_prior) / denominator)
}

/// Detection probability when the copier is replaced by a classical
/// measure-and-regenerate repeater: eta^2(2 - eta), never more than eta.
/// Amplifying after the lossy measurement cannot beat the bare detector;
/// the quantum copier wins by copying before any information is lost.
pub fn classical_copier_count_prob(efficiency: f64) -> f64 {
    efficiency * efficiency * (2.0 - efficiency)
}
