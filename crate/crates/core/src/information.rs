//! Scoring the scheme as a classical channel: Shannon mutual information
//! between the source symbol and the joint detector record, and the
//! effective efficiency, the efficiency a single noiseless detector would
//! need to convey the same information.
//!
//! Conventions: logarithms are base 2, 0·log 0 = 0, and outcome patterns
//! with zero marginal probability are skipped (their numerators vanish).

use crate::cascade::{conditional_distributions, ConditionalOutcomeDistribution, SchemeConfig};
use crate::error::{Error, Result};
use crate::model::{CopierParams, DetectorParams, NORMALIZATION_TOLERANCE};

/// Width at which the effective-efficiency bisection stops.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// Hard cap on bisection steps; reached only if the tolerance is never
/// met, since each step halves the interval.
pub const BISECTION_MAX_ITERATIONS: u32 = 200;

/// Slack allowed when checking a mutual-information target against its
/// theoretical range, so roundoff at the endpoints is not rejected.
const TARGET_SLACK: f64 = 1e-12;

/// The two figures of merit of one scheme evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationResult {
    /// Shannon mutual information between source and detector record.
    pub mutual_information_bits: f64,
    /// Efficiency of the noiseless single detector that would convey the
    /// same mutual information at the same prior.
    pub effective_efficiency: f64,
}

/// Core sum over two inputs and any number of outcomes. The sum is
/// provably non-negative, so the tiny negatives that cancellation can
/// produce are clamped to zero.
fn information_sum(priors: [f64; 2], rows: [&[f64]; 2]) -> f64 {
    let mut total = 0.0;
    for (&vacuum, &photon) in rows[0].iter().zip(rows[1].iter()) {
        let marginal = priors[0] * vacuum + priors[1] * photon;
        if marginal <= 0.0 {
            continue;
        }
        for (prior, conditional) in [(priors[0], vacuum), (priors[1], photon)] {
            if prior > 0.0 && conditional > 0.0 {
                total += prior * conditional * (conditional / marginal).log2();
            }
        }
    }
    total.max(0.0)
}

fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        })
    }
}

/// Mutual information, in bits, between a two-symbol source with the
/// given priors and the outcome-pattern record of the channel. Priors
/// must sum to 1 within the construction tolerance and are rescaled.
pub fn mutual_information(
    vacuum_prior: f64,
    photon_prior: f64,
    channel: &ConditionalOutcomeDistribution,
) -> Result<f64> {
    check_probability("vacuum_prior", vacuum_prior)?;
    check_probability("photon_prior", photon_prior)?;
    let sum = vacuum_prior + photon_prior;
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized {
            sum,
            tolerance: NORMALIZATION_TOLERANCE,
        });
    }
    Ok(information_sum(
        [vacuum_prior / sum, photon_prior / sum],
        [channel.given_vacuum(), channel.given_photon()],
    ))
}

fn z_channel_information(efficiency: f64, photon_prior: f64) -> f64 {
    information_sum(
        [1.0 - photon_prior, photon_prior],
        [&[1.0, 0.0], &[1.0 - efficiency, efficiency]],
    )
}

/// Mutual information of the reference receiver: a single noiseless
/// detector of the given efficiency, which fires on a photon with that
/// probability and never fires on vacuum. Strictly increasing in the
/// efficiency for any prior strictly between 0 and 1.
pub fn baseline_mutual_information(efficiency: f64, photon_prior: f64) -> Result<f64> {
    check_probability("efficiency", efficiency)?;
    check_probability("photon_prior", photon_prior)?;
    Ok(z_channel_information(efficiency, photon_prior))
}

/// Inverts the baseline: the efficiency whose noiseless single detector
/// yields `target_mi` bits at the given prior. Bisection on [0, 1]
/// against the strictly monotone baseline, stopping at interval width
/// [`BISECTION_TOLERANCE`].
///
/// Targets inside `[-1e-12, max + 1e-12]` are accepted and clamped into
/// range, absorbing roundoff from upstream channel evaluations; anything
/// further out signals an inconsistent input and is rejected.
pub fn effective_efficiency(target_mi: f64, photon_prior: f64) -> Result<f64> {
    check_probability("photon_prior", photon_prior)?;
    if photon_prior == 0.0 || photon_prior == 1.0 {
        return Err(Error::DegeneratePrior {
            value: photon_prior,
        });
    }
    let max = z_channel_information(1.0, photon_prior);
    if !(-TARGET_SLACK..=max + TARGET_SLACK).contains(&target_mi) {
        return Err(Error::MutualInformationOutOfRange {
            value: target_mi,
            max,
        });
    }
    let target = target_mi.clamp(0.0, max);

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut iterations = 0;
    while hi - lo >= BISECTION_TOLERANCE && iterations < BISECTION_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if z_channel_information(mid, photon_prior) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(0.5 * (lo + hi))
}

/// Effective efficiency of the noiseless scheme (no dark counts, copier
/// failures collapse to vacuum): N-fold iteration of
/// x -> success_prob * (1 - (1 - x)^2) starting from the bare detector
/// efficiency. N = 0 returns the bare efficiency. The iteration is pure
/// arithmetic, so levels beyond the simulation cap are fine.
pub fn closed_form_effective_efficiency(
    success_prob: f64,
    efficiency: f64,
    levels: u32,
) -> Result<f64> {
    check_probability("success_prob", success_prob)?;
    check_probability("efficiency", efficiency)?;
    let mut x = efficiency;
    for _ in 0..levels {
        x = success_prob * (1.0 - (1.0 - x) * (1.0 - x));
    }
    Ok(x)
}

/// Limit of the closed form as the number of levels grows without bound:
/// 2 - 1/success_prob above one half, else 0. Below one half the map's
/// only fixed point in [0, 1] is 0, so the formula's non-positive branch
/// is replaced by the true limit.
pub fn effective_efficiency_limit(success_prob: f64) -> Result<f64> {
    check_probability("success_prob", success_prob)?;
    Ok(if success_prob > 0.5 {
        2.0 - 1.0 / success_prob
    } else {
        0.0
    })
}

/// Copier success probability above which one level of copying beats the
/// bare detector: 1/(2 - efficiency). Always above one half; reaches 1
/// only for a perfect detector, which cannot be improved.
pub fn improvement_threshold(efficiency: f64) -> Result<f64> {
    check_probability("efficiency", efficiency)?;
    Ok(1.0 / (2.0 - efficiency))
}

/// Full pipeline for one parameter point: exact conditional
/// distributions, their mutual information at the configured prior, and
/// the effective efficiency that reproduces it.
pub fn evaluate_scheme(
    config: &SchemeConfig,
    copier: &CopierParams,
    detector: &DetectorParams,
) -> Result<InformationResult> {
    let prior = config.prior_p();
    if prior == 0.0 || prior == 1.0 {
        return Err(Error::DegeneratePrior { value: prior });
    }
    let channel = conditional_distributions(config, copier, detector)?;
    let mutual_information_bits = mutual_information(1.0 - prior, prior, &channel)?;
    let effective_efficiency = effective_efficiency(mutual_information_bits, prior)?;
    Ok(InformationResult {
        mutual_information_bits,
        effective_efficiency,
    })
}
