//! Simulated Hadamard-test estimation of `tr U` and the quantum 3-braid
//! algorithm built on it.
//!
//! Each diagonal entry `U_kk` is probed by a two-qubit circuit (one ancilla,
//! one work qubit prepared in `|k⟩`). The ancilla outcome probabilities are
//! obtained by applying the gates to a 4-amplitude state vector; shots are
//! then Bernoulli draws from those probabilities.
//!
//! Shots are drawn from ChaCha8 streams keyed by `(seed, k, part)` and
//! addressed by shot index, so a run's tallies do not depend on how the shot
//! loop is split across threads.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::rep2::{compile_gate, jones_from_trace, make_params, Gate2, RepError, RepParams};

/// Tolerance on `‖U·U† − I‖_max` accepted by the circuits.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Upper bound on shots per diagonal entry per part.
pub const MAX_SHOTS: u64 = 1 << 40;

const SHOT_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HadamardError {
    #[error("gate is not unitary (defect {defect:e})")]
    NonUnitaryGate { defect: f64 },
    #[error("invalid precision parameters: {reason}")]
    InvalidPrecision { reason: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Amplitudes over `|ancilla, k⟩` in the order `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub amplitudes: [Complex64; 4],
}

impl TwoQubitState {
    pub fn basis(ancilla: usize, k: usize) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
        amplitudes[2 * ancilla + k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `H ⊗ I`.
    pub fn hadamard_ancilla(&mut self) {
        for k in 0..2 {
            let a0 = self.amplitudes[k];
            let a1 = self.amplitudes[2 + k];
            self.amplitudes[k] = (a0 + a1) * FRAC_1_SQRT_2;
            self.amplitudes[2 + k] = (a0 - a1) * FRAC_1_SQRT_2;
        }
    }

    /// `S ⊗ I` with `S = diag(1, i)`.
    pub fn phase_ancilla(&mut self) {
        for k in 0..2 {
            self.amplitudes[2 + k] *= Complex64::i();
        }
    }

    /// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`.
    pub fn controlled(&mut self, u: &Gate2) {
        let (x0, x1) = (self.amplitudes[2], self.amplitudes[3]);
        self.amplitudes[2] = u.entry(0, 0) * x0 + u.entry(0, 1) * x1;
        self.amplitudes[3] = u.entry(1, 0) * x0 + u.entry(1, 1) * x1;
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(P(ancilla = 0), P(ancilla = 1))`.
    pub fn ancilla_probabilities(&self) -> (f64, f64) {
        let a = &self.amplitudes;
        (a[0].norm_sqr() + a[1].norm_sqr(), a[2].norm_sqr() + a[3].norm_sqr())
    }
}

/// Which half of `U_kk` a circuit measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Re,
    Im,
}

impl Part {
    fn stream_offset(self) -> u64 {
        match self {
            Part::Re => 0,
            Part::Im => 1,
        }
    }

    /// `+1` when outcome 0 counts positively.
    fn zero_sign(self) -> i64 {
        match self {
            Part::Re => 1,
            Part::Im => -1,
        }
    }
}

/// Final state of the probe circuit for `U_kk`: `H`, then `S` for the
/// imaginary part, then controlled-`U`, then `H`.
pub fn circuit_state(u: &Gate2, k: usize, part: Part) -> TwoQubitState {
    let mut state = TwoQubitState::basis(0, k);
    state.hadamard_ancilla();
    if part == Part::Im {
        state.phase_ancilla();
    }
    state.controlled(u);
    state.hadamard_ancilla();
    state
}

fn check_unitary(u: &Gate2) -> Result<(), HadamardError> {
    let defect = u.unitarity_defect();
    if defect.is_finite() && defect <= UNITARITY_TOL {
        Ok(())
    } else {
        Err(HadamardError::NonUnitaryGate { defect })
    }
}

/// Uniform double in `[0, 1)` from the top 53 bits.
fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw_bit(p_zero: f64, rng: &mut impl RngCore) -> u8 {
    if unit_interval(rng.next_u64()) < p_zero {
        0
    } else {
        1
    }
}

/// One run of the real-part circuit; returns the measured ancilla bit.
pub fn qre_shot(u: &Gate2, k: usize, rng: &mut impl RngCore) -> Result<u8, HadamardError> {
    check_unitary(u)?;
    let (p0, _) = circuit_state(u, k, Part::Re).ancilla_probabilities();
    Ok(draw_bit(p0, rng))
}

/// One run of the imaginary-part circuit; returns the measured ancilla bit.
pub fn qim_shot(u: &Gate2, k: usize, rng: &mut impl RngCore) -> Result<u8, HadamardError> {
    check_unitary(u)?;
    let (p0, _) = circuit_state(u, k, Part::Im).ancilla_probabilities();
    Ok(draw_bit(p0, rng))
}

/// Reproducible shot streams derived from a single 64-bit seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyedStreams {
    pub seed: u64,
}

impl KeyedStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// Stream for `(k, part)` positioned at shot `start`.
    pub fn stream(&self, k: usize, part: Part, start: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(2 * k as u64 + part.stream_offset());
        // one u64 (two 32-bit words) per shot
        rng.set_word_pos(2 * start as u128);
        rng
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ShotTally {
    pub zeros: u64,
    pub ones: u64,
}

impl ShotTally {
    pub fn total(&self) -> u64 {
        self.zeros + self.ones
    }
}

/// `n` Bernoulli draws with `P(0) = p_zero` from the `(k, part)` stream.
fn sample(p_zero: f64, n: u64, streams: &KeyedStreams, k: usize, part: Part) -> ShotTally {
    let chunks = n.div_ceil(SHOT_CHUNK);
    let zeros: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * SHOT_CHUNK;
            let len = SHOT_CHUNK.min(n - start);
            let mut rng = streams.stream(k, part, start);
            (0..len).filter(|_| draw_bit(p_zero, &mut rng) == 0).count() as u64
        })
        .sum();
    ShotTally {
        zeros,
        ones: n - zeros,
    }
}

/// A gate together with the outcome probabilities of its four probe
/// circuits. Building it is the one-time compilation step; shots cost O(1).
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardTest {
    gate: Gate2,
    /// `p_zero[part][k]`
    p_zero: [[f64; 2]; 2],
}

impl HadamardTest {
    pub fn new(gate: Gate2) -> Result<Self, HadamardError> {
        check_unitary(&gate)?;
        let p = |k, part| {
            let (p0, _) = circuit_state(&gate, k, part).ancilla_probabilities();
            p0.clamp(0.0, 1.0)
        };
        Ok(Self {
            gate,
            p_zero: [[p(0, Part::Re), p(1, Part::Re)], [p(0, Part::Im), p(1, Part::Im)]],
        })
    }

    pub fn gate(&self) -> &Gate2 {
        &self.gate
    }

    pub fn probability_of_zero(&self, k: usize, part: Part) -> f64 {
        self.p_zero[part.stream_offset() as usize][k]
    }

    fn tallies(&self, n: u64, streams: &KeyedStreams, part: Part) -> [ShotTally; 2] {
        [0, 1].map(|k| sample(self.probability_of_zero(k, part), n, streams, k, part))
    }

    pub fn estimate(&self, n: u64, seed: u64) -> Result<TraceEstimate, HadamardError> {
        check_shots(n)?;
        let streams = KeyedStreams::new(seed);
        let re = self.tallies(n, &streams, Part::Re);
        let im = self.tallies(n, &streams, Part::Im);
        Ok(TraceEstimate::from_tallies(n, seed, re, im))
    }
}

fn check_shots(n: u64) -> Result<(), HadamardError> {
    if n == 0 || n > MAX_SHOTS {
        return Err(HadamardError::InvalidPrecision {
            reason: format!("shot count {n} outside 1..={MAX_SHOTS}"),
        });
    }
    Ok(())
}

/// Sum over `k` of `(±#0 ∓ #1) / n`: `+` for the real part, `−` for the
/// imaginary part.
fn normalized(part: Part, n: u64, tallies: &[ShotTally; 2]) -> f64 {
    let sign = part.zero_sign();
    let net: i64 = tallies
        .iter()
        .map(|t| sign * (t.zeros as i64 - t.ones as i64))
        .sum();
    net as f64 / n as f64
}

/// `Σ_k (#0 − #1)/n` over `n` real-part shots per diagonal entry.
pub fn approx_re_trace(u: &Gate2, n: u64, streams: &KeyedStreams) -> Result<f64, HadamardError> {
    check_shots(n)?;
    let test = HadamardTest::new(*u)?;
    Ok(normalized(Part::Re, n, &test.tallies(n, streams, Part::Re)))
}

/// `Σ_k (#1 − #0)/n` over `n` imaginary-part shots per diagonal entry.
pub fn approx_im_trace(u: &Gate2, n: u64, streams: &KeyedStreams) -> Result<f64, HadamardError> {
    check_shots(n)?;
    let test = HadamardTest::new(*u)?;
    Ok(normalized(Part::Im, n, &test.tallies(n, streams, Part::Im)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    pub re: [ShotTally; 2],
    pub im: [ShotTally; 2],
}

/// Sampled estimate of `tr U` with the raw tallies behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEstimate {
    pub re_estimate: f64,
    pub im_estimate: f64,
    pub n: u64,
    pub seed: u64,
    pub shot_counts: ShotCounts,
}

impl TraceEstimate {
    pub fn from_tallies(n: u64, seed: u64, re: [ShotTally; 2], im: [ShotTally; 2]) -> Self {
        Self {
            re_estimate: normalized(Part::Re, n, &re),
            im_estimate: normalized(Part::Im, n, &im),
            n,
            seed,
            shot_counts: ShotCounts { re, im },
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re_estimate, self.im_estimate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `n = ⌈ln(4/ε₂) / (2ε₁²)⌉`
    #[default]
    Paper,
    /// `n = ⌈(4/ε₁²)·ln(4/ε₂)⌉`, two-sided Hoeffding on the sum of both
    /// normalized diagonal estimates, union-bounded over Re and Im.
    Rigorous,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Paper => "paper",
            BoundMode::Rigorous => "rigorous",
        })
    }
}

impl FromStr for BoundMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(BoundMode::Paper),
            "rigorous" => Ok(BoundMode::Rigorous),
            other => Err(format!("unknown bound mode `{other}` (expected paper or rigorous)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotPlan {
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub n: u64,
    pub bound_mode: BoundMode,
}

/// Shots per diagonal entry per part for precision `epsilon1` with failure
/// probability at most `epsilon2`.
pub fn shots_for(epsilon1: f64, epsilon2: f64, bound_mode: BoundMode) -> Result<ShotPlan, HadamardError> {
    if !(epsilon1.is_finite() && epsilon1 > 0.0) {
        return Err(HadamardError::InvalidPrecision {
            reason: format!("epsilon1 must be a positive real, got {epsilon1}"),
        });
    }
    if !(epsilon2 > 0.0 && epsilon2 <= 1.0) {
        return Err(HadamardError::InvalidPrecision {
            reason: format!("epsilon2 must lie in (0, 1], got {epsilon2}"),
        });
    }
    let log_term = (4.0 / epsilon2).ln();
    let raw = match bound_mode {
        BoundMode::Paper => log_term / (2.0 * epsilon1 * epsilon1),
        BoundMode::Rigorous => 4.0 / (epsilon1 * epsilon1) * log_term,
    };
    let n = raw.ceil().max(1.0);
    if n > MAX_SHOTS as f64 {
        return Err(HadamardError::InvalidPrecision {
            reason: format!("epsilon1 = {epsilon1} needs {n:e} shots, above the {MAX_SHOTS} limit"),
        });
    }
    Ok(ShotPlan {
        epsilon1,
        epsilon2,
        n: n as u64,
        bound_mode,
    })
}

/// Result of one quantum 3-braid run.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumRun {
    pub value: Complex64,
    pub estimate: TraceEstimate,
    pub plan: ShotPlan,
    pub params: RepParams,
}

/// Estimates `V(e^{iφ})` for the closure of `b`: compile `U(b)` once, estimate
/// its trace with `n` shots per diagonal entry per part, then apply the writhe
/// bookkeeping `(−α³)^W · est + (δ² − 2)·(−e^{−iφ})^W`.
pub fn quantum_3sb(
    b: &BraidWord,
    phi: f64,
    epsilon1: f64,
    epsilon2: f64,
    seed: u64,
    bound_mode: BoundMode,
) -> Result<QuantumRun, HadamardError> {
    let params = make_params(phi)?;
    let plan = shots_for(epsilon1, epsilon2, bound_mode)?;
    let test = HadamardTest::new(compile_gate(b, &params))?;
    let estimate = test.estimate(plan.n, seed)?;
    let value = jones_from_trace(estimate.value(), b.writhe(), &params);
    Ok(QuantumRun {
        value,
        estimate,
        plan,
        params,
    })
}
