//! Rendering of the three command outputs: single-point reports, sweep
//! CSVs, and sampling comparisons. All numbers go through [`sig10`] so
//! identical invocations produce byte-identical text.

use qcopier::cascade::{
    monte_carlo_distribution, subtree_outcome_distribution, OutcomePattern, SchemeConfig,
    MAX_EXACT_LEVELS,
};
use qcopier::information::{
    closed_form_effective_efficiency, effective_efficiency_limit, evaluate_scheme,
    improvement_threshold,
};
use qcopier::model::Symbol;

use crate::format::sig10;
use crate::sweep::{SweepParameter, SweepSpec};
use crate::{CliError, Scenario};

/// Effective efficiency of one parameter point: the exact recursion when
/// it applies (no dark counts, vacuum-shaped failures, where it agrees
/// with the pipeline and has no depth cap), the full numeric pipeline
/// otherwise.
fn point_efficiency(point: &Scenario, levels: u32) -> Result<f64, CliError> {
    if point.has_closed_form() {
        Ok(closed_form_effective_efficiency(
            point.eps, point.eta, levels,
        )?)
    } else {
        let config = SchemeConfig::new(levels, point.p)?;
        Ok(evaluate_scheme(&config, &point.copier(), &point.detector())?.effective_efficiency)
    }
}

/// Key-value report for one parameter point.
pub fn eval_report(scenario: &Scenario, levels: u32) -> Result<String, CliError> {
    let config = SchemeConfig::new(levels, scenario.p)?;
    let result = evaluate_scheme(&config, &scenario.copier(), &scenario.detector())?;
    let mut text = String::new();
    text.push_str(&format!(
        "mutual_information_bits = {}\n",
        sig10(result.mutual_information_bits)
    ));
    text.push_str(&format!(
        "effective_efficiency = {}\n",
        sig10(result.effective_efficiency)
    ));
    if scenario.has_closed_form() {
        let closed = closed_form_effective_efficiency(scenario.eps, scenario.eta, levels)?;
        text.push_str(&format!("closed_form_efficiency = {}\n", sig10(closed)));
    }
    text.push_str(&format!(
        "improvement_threshold = {}\n",
        sig10(improvement_threshold(scenario.eta)?)
    ));
    Ok(text)
}

/// CSV over a one-parameter grid: the swept value, one effective
/// efficiency column per requested level count, and the infinite-depth
/// limit of the closed form.
pub fn sweep_csv(spec: &SweepSpec, base: &Scenario, levels: &[u32]) -> Result<String, CliError> {
    let grid = spec.grid();
    // Fail before emitting anything if any grid point would need the
    // depth-capped pipeline beyond its cap.
    for &value in &grid {
        let point = base.with(spec.parameter(), value);
        if !point.has_closed_form() {
            if let Some(&deep) = levels.iter().find(|&&n| n > MAX_EXACT_LEVELS) {
                return Err(CliError::Capability(format!(
                    "level {deep} at xi={}, mu={} has no closed form and the exact \
                     pipeline supports at most {MAX_EXACT_LEVELS} levels",
                    point.xi, point.mu
                )));
            }
        }
    }
    let mut text = String::from(spec.parameter().name());
    for &n in levels {
        text.push_str(&format!(",eta_e_N{n}"));
    }
    text.push_str(",limit\n");
    for &value in &grid {
        let point = base.with(spec.parameter(), value);
        text.push_str(&sig10(value));
        for &n in levels {
            text.push_str(&format!(",{}", sig10(point_efficiency(&point, n)?)));
        }
        text.push_str(&format!(
            ",{}\n",
            sig10(effective_efficiency_limit(point.eps)?)
        ));
    }
    Ok(text)
}

/// The canonical sweep: detector efficiency 0.6, no dark counts,
/// vacuum-shaped failures, even prior, copier quality from 0.5 to 1.0 in
/// steps of 0.005, with columns for 0 through 3 copier levels.
pub fn fig2_csv() -> Result<String, CliError> {
    let spec = SweepSpec::new(SweepParameter::Eps, 0.5, 1.0, 0.005).map_err(CliError::Usage)?;
    let base = Scenario {
        eta: 0.6,
        xi: 0.0,
        eps: 1.0,
        mu: -1.0,
        p: 0.5,
    };
    sweep_csv(&spec, &base, &[0, 1, 2, 3])
}

/// The rendered sampling comparison plus the two numbers the exit status
/// hinges on.
pub struct SamplingComparison {
    pub text: String,
    pub distance: f64,
    pub bound: f64,
}

/// Samples the scheme and tabulates exact versus empirical pattern
/// probabilities. The consistency bound is 5 * sqrt(patterns / trials),
/// five sigma of the coarsest per-pattern binomial fluctuation summed
/// over the pattern space.
pub fn montecarlo_report(
    scenario: &Scenario,
    levels: u32,
    input: Symbol,
    trials: u64,
    seed: u64,
) -> Result<SamplingComparison, CliError> {
    let copier = scenario.copier();
    let detector = scenario.detector();
    let exact = subtree_outcome_distribution(input, levels, &copier, &detector)?;
    let empirical = monte_carlo_distribution(input, levels, &copier, &detector, trials, seed)?;
    let distance = empirical.total_variation_distance(&exact);
    let bound = 5.0 * (exact.len() as f64 / trials as f64).sqrt();

    let num_detectors = 1u32 << levels;
    let mut text = format!(
        "input = {}\nlevels = {levels}\ntrials = {trials}\nseed = {seed}\n",
        match input {
            Symbol::Photon => "photon",
            Symbol::Vacuum => "vacuum",
        }
    );
    text.push_str("pattern,exact,empirical\n");
    for (index, &probability) in exact.iter().enumerate() {
        let pattern = OutcomePattern::new(index as u64, num_detectors)?;
        text.push_str(&format!(
            "{pattern},{},{}\n",
            sig10(probability),
            sig10(empirical.frequency(index as u64))
        ));
    }
    text.push_str(&format!("total_variation = {}\n", sig10(distance)));
    text.push_str(&format!("bound = {}\n", sig10(bound)));
    Ok(SamplingComparison {
        text,
        distance,
        bound,
    })
}
