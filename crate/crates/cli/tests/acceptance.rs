//! Release gate. Every test here checks one externally stated guarantee at
//! its stated tolerance and runtime budget, and prints a PASS line (visible
//! with `--nocapture`) once its assertions hold. The checks deliberately
//! recompute expectations from scratch, including a flat brute-force
//! enumeration of the cascade, instead of trusting library internals.

use std::process::Command;
use std::time::{Duration, Instant};

use qcopier::cascade::{
    classical_copier_count_prob, perfect_copier_count_prob, perfect_copier_no_photon_posterior,
    subtree_outcome_distribution,
};
use qcopier::information::{closed_form_effective_efficiency, evaluate_scheme};
use qcopier::{Complex64, CopierParams, DetectorParams, SchemeConfig, Symbol, TwoQubitPureState};

fn run_binary(args: &[&str]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_qcopier"))
        .args(args)
        .output()
        .expect("binary should spawn");
    assert!(
        output.stderr.is_empty(),
        "unexpected stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("stdout should be UTF-8"),
    )
}

fn report_value(stdout: &str, key: &str) -> f64 {
    let prefix = format!("{key} = ");
    stdout
        .lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("missing report line {key:?} in:\n{stdout}"))
        .parse()
        .expect("numeric report value")
}

fn pipeline_efficiency(eps: f64, eta: f64, xi: f64, mu: f64, levels: u32, p: f64) -> f64 {
    let copier = CopierParams::new(eps, mu).unwrap();
    let detector = DetectorParams::new(eta, xi).unwrap();
    let config = SchemeConfig::new(levels, p).unwrap();
    evaluate_scheme(&config, &copier, &detector)
        .unwrap()
        .effective_efficiency
}

fn finish(label: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{label}: took {elapsed:?}, budget {budget:?}"
    );
    println!("PASS: {label} ({} ms)", elapsed.as_millis());
}

#[test]
fn c01_one_level_of_perfect_copying_lifts_60_percent_to_84() {
    let started = Instant::now();
    assert_eq!(closed_form_effective_efficiency(1.0, 0.6, 1).unwrap(), 0.84);
    let pipeline = pipeline_efficiency(1.0, 0.6, 0.0, -1.0, 1, 0.5);
    assert!((pipeline - 0.84).abs() < 1e-8, "pipeline gave {pipeline}");
    finish(
        "01 one level of perfect copying lifts 0.60 to 0.84",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn c02_copying_at_the_break_even_quality_changes_nothing() {
    let started = Instant::now();
    let break_even = 1.0 / 1.4;
    let pipeline = pipeline_efficiency(break_even, 0.6, 0.0, -1.0, 1, 0.5);
    assert!(
        (pipeline - 0.6).abs() < 1e-6,
        "at success probability {break_even} one level gave {pipeline}"
    );
    finish(
        "02 copying at the break-even quality changes nothing",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn c03_deep_cascades_climb_monotonically_to_the_asymptote() {
    let started = Instant::now();

    let limit = 2.0 - 1.0 / 0.9;
    let mut previous = 0.6;
    for levels in 1..=60 {
        let value = closed_form_effective_efficiency(0.9, 0.6, levels).unwrap();
        assert!(
            value >= previous,
            "efficiency dipped from {previous} to {value} at depth {levels}"
        );
        previous = value;
    }
    assert!(
        (previous - limit).abs() < 1e-9,
        "depth 60 reached {previous}, asymptote {limit}"
    );

    // The preset sweep's final column must be the same asymptote at every
    // grid point above one half.
    let (code, stdout) = run_binary(&["fig2"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 101);
    for (i, row) in rows.iter().enumerate() {
        let eps = (0.5 + i as f64 * 0.005).min(1.0);
        let fields: Vec<f64> = row.split(',').map(|f| f.parse().unwrap()).collect();
        assert!((fields[0] - eps).abs() < 1e-9, "row {i} is misaligned");
        if eps > 0.5 {
            let expected = 2.0 - 1.0 / eps;
            assert!(
                (fields[5] - expected).abs() < 1e-9,
                "limit column at eps={eps} reads {}, expected {expected}",
                fields[5]
            );
        }
    }

    finish(
        "03 deep cascades climb monotonically to 2 - 1/eps",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn c04_exact_pipeline_reproduces_the_noiseless_closed_form() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for eps in [0.6, 0.72, 0.8, 0.9, 1.0] {
        for eta in [0.3, 0.6, 0.9] {
            for levels in 1..=3 {
                let closed = closed_form_effective_efficiency(eps, eta, levels).unwrap();
                let exact = pipeline_efficiency(eps, eta, 0.0, -1.0, levels, 0.5);
                worst = worst.max((closed - exact).abs());
            }
        }
    }
    assert!(worst < 1e-8, "worst disagreement {worst}");
    finish(
        "04 exact pipeline reproduces the noiseless closed form (45 points)",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn c05_effective_efficiency_ignores_the_photon_prior() {
    let started = Instant::now();
    for levels in [1, 2] {
        let values: Vec<f64> = [0.1, 0.5, 0.9]
            .iter()
            .map(|&p| pipeline_efficiency(0.8, 0.6, 0.0, -1.0, levels, p))
            .collect();
        let spread = values.iter().cloned().fold(f64::MIN, f64::max)
            - values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-7, "depth {levels} spread {spread}: {values:?}");
    }
    finish(
        "05 effective efficiency ignores the photon prior",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn c06_single_copier_reference_formulas() {
    let started = Instant::now();
    assert_eq!(perfect_copier_count_prob(0.6), 0.84);
    let posterior = perfect_copier_no_photon_posterior(0.6, 0.5).unwrap();
    assert!(
        (posterior - 0.862069).abs() < 1e-6,
        "posterior gave {posterior}"
    );
    for i in 0..=100 {
        let eta = i as f64 / 100.0;
        let classical = classical_copier_count_prob(eta);
        assert!(classical <= eta, "classical copying beat eta at {eta}");
    }
    finish(
        "06 single-copier reference formulas",
        started,
        Duration::from_secs(1),
    );
}

/// Outcome distribution computed with no recursion and no shared code:
/// every assignment of copier behaviors is enumerated over a heap-indexed
/// complete binary tree, bits are pushed from the root to the leaves, and
/// every leaf firing pattern is weighted by independent detector draws.
/// Pattern bit k belongs to leaf k counted from the left; a copier's left
/// child receives the first slot of its failure pair.
fn flat_distribution(
    input_bit: usize,
    depth: u32,
    eps: f64,
    mu: f64,
    eta: f64,
    xi: f64,
) -> Vec<f64> {
    let leaves = 1usize << depth;
    let copiers = leaves - 1;
    let uniform = (1.0 - mu.abs()) / 4.0;
    let mut failure = [uniform; 4];
    if mu > 0.0 {
        failure[3] += mu;
    } else {
        failure[0] += -mu;
    }

    let mut out = vec![0.0; 1usize << leaves];
    for assignment in 0..5usize.pow(copiers as u32) {
        let mut weight = 1.0;
        let mut bits = vec![0usize; 2 * leaves - 1];
        bits[0] = input_bit;
        let mut rest = assignment;
        for node in 0..copiers {
            let mode = rest % 5;
            rest /= 5;
            if mode == 0 {
                weight *= eps;
                bits[2 * node + 1] = bits[node];
                bits[2 * node + 2] = bits[node];
            } else {
                let pair = mode - 1;
                weight *= (1.0 - eps) * failure[pair];
                bits[2 * node + 1] = pair >> 1;
                bits[2 * node + 2] = pair & 1;
            }
        }
        if weight == 0.0 {
            continue;
        }
        for (pattern, slot) in out.iter_mut().enumerate() {
            let mut prob = weight;
            for leaf in 0..leaves {
                let fire = if bits[copiers + leaf] == 1 {
                    eta
                } else {
                    eta * xi
                };
                prob *= if (pattern >> leaf) & 1 == 1 {
                    fire
                } else {
                    1.0 - fire
                };
            }
            *slot += prob;
        }
    }
    out
}

#[test]
fn c07_recursive_cascade_matches_flat_enumeration() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for eps in [0.0, 0.3, 0.7, 1.0] {
        for eta in [0.0, 0.3, 0.7, 1.0] {
            for mu in [-1.0, 0.0, 1.0] {
                for xi in [0.0, 0.5] {
                    let copier = CopierParams::new(eps, mu).unwrap();
                    let detector = DetectorParams::new(eta, xi).unwrap();
                    for depth in 0..=2 {
                        for (bit, symbol) in [(0, Symbol::Vacuum), (1, Symbol::Photon)] {
                            let recursive =
                                subtree_outcome_distribution(symbol, depth, &copier, &detector)
                                    .unwrap();
                            let flat = flat_distribution(bit, depth, eps, mu, eta, xi);
                            for (pattern, (a, b)) in recursive.iter().zip(&flat).enumerate() {
                                let diff = (a - b).abs();
                                worst = worst.max(diff);
                                assert!(
                                    diff < 1e-12,
                                    "eps={eps} eta={eta} mu={mu} xi={xi} depth={depth} \
                                     input={bit} pattern={pattern}: {a} vs {b}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    finish(
        &format!("07 recursive cascade matches flat enumeration (worst {worst:.2e})"),
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn c08_sampled_distributions_sit_close_to_the_exact_ones() {
    let started = Instant::now();

    let (code, stdout) = run_binary(&[
        "montecarlo",
        "--levels",
        "1",
        "--eps",
        "1",
        "--mu",
        "-1",
        "--eta",
        "0.6",
        "--xi",
        "0",
        "--trials",
        "1000000",
        "--seed",
        "42",
    ]);
    assert_eq!(code, 0);
    let distance = report_value(&stdout, "total_variation");
    let bound = report_value(&stdout, "bound");
    assert!((bound - 0.01).abs() < 1e-9, "bound read {bound}");
    assert!(distance < 0.004, "million-trial run drifted to {distance}");

    let (code, stdout) = run_binary(&[
        "montecarlo",
        "--levels",
        "0",
        "--eta",
        "1",
        "--xi",
        "0",
        "--trials",
        "1000",
    ]);
    assert_eq!(code, 0);
    let distance = report_value(&stdout, "total_variation");
    assert_eq!(distance, 0.0, "a perfect bare detector cannot miss");

    let (code, stdout) = run_binary(&[
        "montecarlo",
        "--levels",
        "2",
        "--eps",
        "0.9",
        "--mu",
        "0.3",
        "--eta",
        "0.7",
        "--xi",
        "0.1",
        "--trials",
        "100000",
    ]);
    assert_eq!(code, 0);
    let distance = report_value(&stdout, "total_variation");
    let bound = report_value(&stdout, "bound");
    assert!((bound - 5.0 * (16.0f64 / 100000.0).sqrt()).abs() < 1e-9);
    assert!(distance < 0.02, "noisy two-level run drifted to {distance}");

    finish(
        "08 sampled distributions sit close to the exact ones",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn c09_entangler_maps_basis_and_superposition_states() {
    let started = Instant::now();

    let symbols = [Symbol::Vacuum, Symbol::Photon];
    for control in symbols {
        for target in symbols {
            let flipped = if control == Symbol::Photon {
                symbols[1 - target.bit()]
            } else {
                target
            };
            let output = TwoQubitPureState::basis(control, target).apply_cnot();
            for first in symbols {
                for second in symbols {
                    let amplitude = output.amplitude(first, second);
                    let expected = f64::from((first, second) == (control, flipped));
                    assert_eq!(amplitude.re, expected);
                    assert_eq!(amplitude.im, 0.0);
                }
            }
        }
    }

    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let bell = TwoQubitPureState::from_amplitudes(half, zero, half, zero)
        .unwrap()
        .apply_cnot();
    for (first, second, expected) in [
        (Symbol::Vacuum, Symbol::Vacuum, half),
        (Symbol::Vacuum, Symbol::Photon, zero),
        (Symbol::Photon, Symbol::Vacuum, zero),
        (Symbol::Photon, Symbol::Photon, half),
    ] {
        let error = (bell.amplitude(first, second) - expected).norm();
        assert!(error < 1e-15, "amplitude error {error}");
    }

    finish(
        "09 entangler maps basis and superposition states",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn c10_preset_sweep_is_reproducible_to_the_byte() {
    let started = Instant::now();

    let (code_a, first) = run_binary(&["fig2"]);
    let (code_b, second) = run_binary(&["fig2"]);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(first, second, "two identical runs must agree byte for byte");

    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 102);
    assert_eq!(lines[0], "eps,eta_e_N0,eta_e_N1,eta_e_N2,eta_e_N3,limit");
    assert_eq!(
        lines[101], "1.000000000,0.6000000000,0.8400000000,0.9744000000,0.9993446400,1.000000000",
        "perfect-copier row must read 0.6, 0.84, 0.9744, 0.99934464, 1.0"
    );

    finish(
        "10 preset sweep is reproducible to the byte",
        started,
        Duration::from_secs(5),
    );
}
