//! Elementary physics of the scheme: the detector POVM, the noisy copier
//! channel, and the ideal CNOT entangler.
//!
//! Every state and operator the detection pipeline touches is diagonal in
//! the photon-number basis, so diagonal objects are stored as plain
//! probability vectors rather than full density matrices. The only coherent
//! object in the crate, [`TwoQubitPureState`], exists to exhibit the CNOT
//! gate acting on superpositions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for normalization checks at construction time.
/// Deviations below this are treated as roundoff and rescaled away;
/// anything larger is rejected as a caller bug.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// One symbol of the binary source: vacuum or a single photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Vacuum,
    Photon,
}

impl Symbol {
    /// The basis index of the symbol: 0 for vacuum, 1 for photon.
    pub fn bit(self) -> usize {
        match self {
            Symbol::Vacuum => 0,
            Symbol::Photon => 1,
        }
    }

    /// Inverse of [`Symbol::bit`] for the two valid indices.
    pub fn from_bit(bit: usize) -> Symbol {
        match bit {
            0 => Symbol::Vacuum,
            1 => Symbol::Photon,
            other => panic!("basis index {other} is not a qubit level"),
        }
    }
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
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

/// Imperfect photodetector: it fires on a photon with probability
/// `efficiency`, and fires spuriously on vacuum with probability
/// `efficiency * dark_count_ratio`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams {
    efficiency: f64,
    dark_count_ratio: f64,
}

impl DetectorParams {
    /// Both parameters must lie in [0, 1]. A ratio of exactly 1 is
    /// admitted: the spurious-count probability is still a probability.
    pub fn new(efficiency: f64, dark_count_ratio: f64) -> Result<Self> {
        Ok(DetectorParams {
            efficiency: check_unit_interval("efficiency", efficiency)?,
            dark_count_ratio: check_unit_interval("dark_count_ratio", dark_count_ratio)?,
        })
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    pub fn dark_count_ratio(&self) -> f64 {
        self.dark_count_ratio
    }

    /// Probability that the detector fires on pure vacuum.
    pub fn dark_count_prob(&self) -> f64 {
        self.efficiency * self.dark_count_ratio
    }
}

/// One element of a binary measurement, diagonal in the photon-number
/// basis: `photon_weight` on |1⟩⟨1| and `vacuum_weight` on |0⟩⟨0|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmElement {
    vacuum_weight: f64,
    photon_weight: f64,
}

impl PovmElement {
    pub fn new(vacuum_weight: f64, photon_weight: f64) -> Result<Self> {
        Ok(PovmElement {
            vacuum_weight: check_unit_interval("vacuum_weight", vacuum_weight)?,
            photon_weight: check_unit_interval("photon_weight", photon_weight)?,
        })
    }

    pub fn vacuum_weight(&self) -> f64 {
        self.vacuum_weight
    }

    pub fn photon_weight(&self) -> f64 {
        self.photon_weight
    }

    /// Born-rule probability of this outcome on a diagonal state.
    pub fn probability(&self, state: &DiagonalQubitState) -> f64 {
        state.photon_prob() * self.photon_weight + (1.0 - state.photon_prob()) * self.vacuum_weight
    }
}

/// A qubit state diagonal in the photon-number basis, fixed by the
/// probability of finding a photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalQubitState {
    photon_prob: f64,
}

impl DiagonalQubitState {
    pub fn new(photon_prob: f64) -> Result<Self> {
        Ok(DiagonalQubitState {
            photon_prob: check_unit_interval("photon_prob", photon_prob)?,
        })
    }

    /// The definite basis state carrying the given symbol.
    pub fn pure(symbol: Symbol) -> Self {
        DiagonalQubitState {
            photon_prob: symbol.bit() as f64,
        }
    }

    pub fn photon_prob(&self) -> f64 {
        self.photon_prob
    }

    pub fn vacuum_prob(&self) -> f64 {
        1.0 - self.photon_prob
    }
}

/// Quality of the copier: it produces two perfect copies with probability
/// `success_prob`, and otherwise emits a fixed two-qubit noise state whose
/// shape is set by `failure_shape` in [-1, 1].
///
/// `failure_shape` interpolates the failure output: -1 gives pure vacuum
/// on both modes, 0 the totally random two-qubit state, +1 a photon pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopierParams {
    success_prob: f64,
    failure_shape: f64,
}

impl CopierParams {
    pub fn new(success_prob: f64, failure_shape: f64) -> Result<Self> {
        let success_prob = check_unit_interval("success_prob", success_prob)?;
        if !(-1.0..=1.0).contains(&failure_shape) {
            return Err(Error::ParameterOutOfRange {
                name: "failure_shape",
                value: failure_shape,
                min: -1.0,
                max: 1.0,
            });
        }
        Ok(CopierParams {
            success_prob,
            failure_shape,
        })
    }

    pub fn success_prob(&self) -> f64 {
        self.success_prob
    }

    pub fn failure_shape(&self) -> f64 {
        self.failure_shape
    }
}

/// Joint distribution of a pair of output qubits in the photon-number
/// basis. The first index is copy 1, the second copy 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDistribution {
    // Laid out as [q00, q01, q10, q11], index 2*first + second.
    probs: [f64; 4],
}

impl PairDistribution {
    /// Entries must be probabilities and sum to 1 within
    /// [`NORMALIZATION_TOLERANCE`]; the sum is then rescaled to exactly 1.
    pub fn new(q00: f64, q01: f64, q10: f64, q11: f64) -> Result<Self> {
        let probs = [q00, q01, q10, q11];
        for &q in &probs {
            check_unit_interval("pair probability", q)?;
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        Ok(PairDistribution {
            probs: probs.map(|q| q / sum),
        })
    }

    pub fn q00(&self) -> f64 {
        self.probs[0]
    }

    pub fn q01(&self) -> f64 {
        self.probs[1]
    }

    pub fn q10(&self) -> f64 {
        self.probs[2]
    }

    pub fn q11(&self) -> f64 {
        self.probs[3]
    }

    /// Probability of finding `first` on copy 1 and `second` on copy 2.
    pub fn prob(&self, first: Symbol, second: Symbol) -> f64 {
        self.probs[2 * first.bit() + second.bit()]
    }

    /// Entries in the order (00, 01, 10, 11).
    pub fn as_array(&self) -> [f64; 4] {
        self.probs
    }
}

/// The POVM of an imperfect detector: the firing element and its
/// complement. Completeness holds exactly: the weights of the two
/// elements sum to 1 level by level.
pub fn detector_povm(detector: &DetectorParams) -> (PovmElement, PovmElement) {
    let eta = detector.efficiency();
    let dark = detector.dark_count_prob();
    let fires = PovmElement {
        vacuum_weight: dark,
        photon_weight: eta,
    };
    let silent = PovmElement {
        vacuum_weight: 1.0 - dark,
        photon_weight: 1.0 - eta,
    };
    (fires, silent)
}

/// Born-rule probability of a measurement outcome on a diagonal state.
pub fn outcome_probability(state: &DiagonalQubitState, element: &PovmElement) -> f64 {
    element.probability(state)
}

/// The two-qubit state a copier emits when it fails, as a function of the
/// shape parameter: a totally random component of weight 1 - |shape|, plus
/// the remaining weight on the photon pair (shape > 0) or on double vacuum
/// (shape <= 0). Both branches agree at shape = 0.
pub fn copier_failure_state(failure_shape: f64) -> Result<PairDistribution> {
    if !(-1.0..=1.0).contains(&failure_shape) {
        return Err(Error::ParameterOutOfRange {
            name: "failure_shape",
            value: failure_shape,
            min: -1.0,
            max: 1.0,
        });
    }
    let uniform = (1.0 - failure_shape.abs()) / 4.0;
    let mut probs = [uniform; 4];
    if failure_shape > 0.0 {
        probs[3] += failure_shape;
    } else {
        probs[0] += -failure_shape;
    }
    Ok(PairDistribution { probs })
}

/// Output pair distribution of the copier on a definite input symbol:
/// two perfect copies with the success probability, the failure state
/// otherwise.
pub fn copier_channel(input: Symbol, copier: &CopierParams) -> PairDistribution {
    let eps = copier.success_prob();
    let failure = copier_failure_state(copier.failure_shape())
        .expect("shape was range-checked at construction");
    let mut probs = failure.probs.map(|q| (1.0 - eps) * q);
    let copied = 2 * input.bit() + input.bit();
    probs[copied] += eps;
    PairDistribution { probs }
}

/// A pure state of two qubits, kept with full complex amplitudes so the
/// CNOT can act on superpositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPureState {
    c00: Complex64,
    c01: Complex64,
    c10: Complex64,
    c11: Complex64,
}

impl TwoQubitPureState {
    /// Amplitudes must have unit total norm within
    /// [`NORMALIZATION_TOLERANCE`]; they are then rescaled to exact unit
    /// norm.
    pub fn from_amplitudes(
        c00: Complex64,
        c01: Complex64,
        c10: Complex64,
        c11: Complex64,
    ) -> Result<Self> {
        let norm_sqr = c00.norm_sqr() + c01.norm_sqr() + c10.norm_sqr() + c11.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum: norm_sqr,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        let scale = norm_sqr.sqrt();
        Ok(TwoQubitPureState {
            c00: c00 / scale,
            c01: c01 / scale,
            c10: c10 / scale,
            c11: c11 / scale,
        })
    }

    /// The product basis state |first⟩|second⟩.
    pub fn basis(first: Symbol, second: Symbol) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        amps[2 * first.bit() + second.bit()] = Complex64::new(1.0, 0.0);
        TwoQubitPureState {
            c00: amps[0],
            c01: amps[1],
            c10: amps[2],
            c11: amps[3],
        }
    }

    /// Amplitude on the basis state |first⟩|second⟩.
    pub fn amplitude(&self, first: Symbol, second: Symbol) -> Complex64 {
        match (first.bit(), second.bit()) {
            (0, 0) => self.c00,
            (0, 1) => self.c01,
            (1, 0) => self.c10,
            _ => self.c11,
        }
    }

    /// Applies the CNOT with the first qubit as control: |10⟩ and |11⟩
    /// exchange amplitudes, the rest are untouched. Applying it twice
    /// returns the original state.
    pub fn apply_cnot(&self) -> Self {
        TwoQubitPureState {
            c00: self.c00,
            c01: self.c01,
            c10: self.c11,
            c11: self.c10,
        }
    }
}

/// Free-function form of [`TwoQubitPureState::apply_cnot`].
pub fn cnot_apply(state: &TwoQubitPureState) -> TwoQubitPureState {
    state.apply_cnot()
}
