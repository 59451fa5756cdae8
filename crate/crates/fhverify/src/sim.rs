//! Desk-scale ground truth: dense state-vector evolution, exact path-sum
//! amplitudes, and honest/dishonest provers.
//!
//! The dense simulator applies classical layers as amplitude permutations
//! and transform layers through their coset structure: an m-qubit kernel on
//! the support, identity elsewhere. It handles any transform count; the
//! path-sum oracle is specific to two-transform circuits and is the
//! deterministic twin of the verifier's sampled estimator.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rustfft::{FftDirection, FftPlanner};

use crate::bits::BitString;
use crate::circuit::KTransformCircuit;
use crate::classical::{apply_compiled, ClassicalLayer};
use crate::error::{Error, Result};
use crate::rng::master_stream;
use crate::transform::{TransformKind, TransformLayer};

/// Dense simulation capacity. 2^20 amplitudes is comfortable desk scale;
/// larger circuits get an explicit capacity error rather than a silent
/// truncation.
pub const MAX_DENSE_QUBITS: usize = 20;

/// Path enumeration bound for the exact path-sum oracle.
pub const MAX_PATH_QUBITS: usize = 22;

/// The full quantum state over n qubits. Amplitude `i` belongs to the basis
/// state whose integer reading is `i` (qubit 0 most significant).
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The basis state `|s⟩`.
    pub fn basis(s: &BitString) -> Result<Self> {
        let n = s.len();
        if n > MAX_DENSE_QUBITS {
            return Err(Error::Capacity {
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amplitudes[s.to_index() as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨s|ψ⟩`.
    pub fn amplitude(&self, s: &BitString) -> Result<Complex64> {
        if s.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: s.len(),
            });
        }
        Ok(self.amplitudes[s.to_index() as usize])
    }

    /// Born probability of measuring `s`.
    pub fn probability(&self, s: &BitString) -> Result<f64> {
        Ok(self.amplitude(s)?.norm_sqr())
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn qubit_mask(&self, q: usize) -> u64 {
        1u64 << (self.n - 1 - q)
    }

    fn apply_classical(&mut self, layer: &ClassicalLayer) {
        // Each gate swaps the amplitude pairs whose controls are satisfied.
        for (control_mask, target_mask) in layer.compile(self.n) {
            for idx in 0..self.amplitudes.len() as u64 {
                if idx & target_mask == 0 && idx & control_mask == control_mask {
                    self.amplitudes
                        .swap(idx as usize, (idx | target_mask) as usize);
                }
            }
        }
    }

    fn apply_hadamard_layer(&mut self, support: &[usize]) {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        for &q in support {
            let mask = self.qubit_mask(q);
            for idx in 0..self.amplitudes.len() as u64 {
                if idx & mask == 0 {
                    let lo = idx as usize;
                    let hi = (idx | mask) as usize;
                    let a = self.amplitudes[lo];
                    let b = self.amplitudes[hi];
                    self.amplitudes[lo] = (a + b) * scale;
                    self.amplitudes[hi] = (a - b) * scale;
                }
            }
        }
    }

    fn apply_qft_register(&mut self, f: &TransformLayer, planner: &mut FftPlanner<f64>) {
        let m = f.m();
        let dim = 1usize << m;
        // The register kernel is the discrete Fourier matrix
        // 2^(-m/2)·e^(±2πi·jk/2^m), i.e. a normalized (inverse) FFT.
        let direction = match f.kind() {
            TransformKind::QftRegister => FftDirection::Inverse,
            TransformKind::InverseQftRegister => FftDirection::Forward,
            TransformKind::HadamardLayer => unreachable!("hadamard handled separately"),
        };
        let fft = planner.plan_fft(dim, direction);
        let scale = f.amplitude_magnitude();

        let support_masks: Vec<u64> = f.support().iter().map(|&q| self.qubit_mask(q)).collect();
        let rest_masks: Vec<u64> = (0..self.n)
            .filter(|q| !f.support().contains(q))
            .map(|q| self.qubit_mask(q))
            .collect();
        // Register reading: first listed support qubit is the most
        // significant bit of j.
        let place_register = |j: u64| -> u64 {
            support_masks
                .iter()
                .enumerate()
                .fold(0u64, |acc, (l, &mask)| {
                    if (j >> (m - 1 - l)) & 1 == 1 {
                        acc | mask
                    } else {
                        acc
                    }
                })
        };
        let place_rest = |c: u64| -> u64 {
            rest_masks.iter().enumerate().fold(0u64, |acc, (l, &mask)| {
                if (c >> l) & 1 == 1 {
                    acc | mask
                } else {
                    acc
                }
            })
        };

        let mut buffer = vec![Complex64::new(0.0, 0.0); dim];
        let register_indices: Vec<u64> = (0..dim as u64).map(place_register).collect();
        for c in 0..(1u64 << (self.n - m)) {
            let fixed = place_rest(c);
            for (j, &reg) in register_indices.iter().enumerate() {
                buffer[j] = self.amplitudes[(fixed | reg) as usize];
            }
            fft.process(&mut buffer);
            for (j, &reg) in register_indices.iter().enumerate() {
                self.amplitudes[(fixed | reg) as usize] = buffer[j] * scale;
            }
        }
    }

    fn apply_transform(&mut self, f: &TransformLayer, planner: &mut FftPlanner<f64>) {
        match f.kind() {
            TransformKind::HadamardLayer => self.apply_hadamard_layer(f.support()),
            TransformKind::QftRegister | TransformKind::InverseQftRegister => {
                self.apply_qft_register(f, planner)
            }
        }
    }
}

/// Runs the whole circuit on its input state. Works for any transform count.
pub fn dense_evolve(circuit: &KTransformCircuit) -> Result<StateVector> {
    let mut state = StateVector::basis(circuit.input())?;
    let mut planner = FftPlanner::new();
    state.apply_classical(circuit.classical_layer(0));
    for i in 0..circuit.k() {
        state.apply_transform(circuit.transform_layer(i), &mut planner);
        state.apply_classical(circuit.classical_layer(i + 1));
    }
    Ok(state)
}

/// `⟨s|ψ⟩` for the final state, by dense evolution.
pub fn exact_amplitude_dense(circuit: &KTransformCircuit, s: &BitString) -> Result<Complex64> {
    dense_evolve(circuit)?.amplitude(s)
}

/// The outcome amplitude of a two-transform circuit by full path
/// enumeration: `2^(-(a+b)/2) · Σ_j θ_j · e^(i(α_j + β_j))` over the coset
/// reachable through the first transform. This is the deterministic version
/// of the verifier's sampled estimator.
pub fn exact_amplitude_pathsum(circuit: &KTransformCircuit, s: &BitString) -> Result<Complex64> {
    circuit.require_k(2)?;
    if s.len() != circuit.n() {
        return Err(Error::LengthMismatch {
            expected: circuit.n(),
            found: s.len(),
        });
    }
    let f1 = circuit.transform_layer(0);
    let f2 = circuit.transform_layer(1);
    let a = f1.m();
    let b = f2.m();
    if a > MAX_PATH_QUBITS {
        return Err(Error::EnumerationTooLarge {
            a,
            max: MAX_PATH_QUBITS,
        });
    }
    let r = circuit.classical_layer(0).apply(circuit.input())?;
    let t = circuit.classical_layer(2).apply_inverse(s)?;
    let middle = circuit.classical_layer(1).compile(circuit.n());

    let mut sum = Complex64::new(0.0, 0.0);
    for j in f1.coset_of(&r).iter() {
        let u = BitString::from_index(apply_compiled(&middle, j.to_index()), circuit.n());
        if f2.coset_of(&u).contains(&t) {
            let phase = f1.phase_in_coset(&r, &j).add(&f2.phase_in_coset(&u, &t));
            sum += phase.to_complex();
        }
    }
    Ok(sum * 2f64.powi(-((a + b) as i32)).sqrt())
}

/// Measurement counts over repeated runs of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeHistogram {
    counts: BTreeMap<BitString, u64>,
    shots: u64,
}

impl OutcomeHistogram {
    pub fn counts(&self) -> &BTreeMap<BitString, u64> {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn count(&self, s: &BitString) -> u64 {
        self.counts.get(s).copied().unwrap_or(0)
    }

    /// The most frequent outcome; ties go to the lexicographically smallest.
    pub fn modal(&self) -> Option<BitString> {
        let mut best: Option<(&BitString, u64)> = None;
        for (s, &count) in &self.counts {
            if best.map_or(true, |(_, c)| count > c) {
                best = Some((s, count));
            }
        }
        best.map(|(s, _)| *s)
    }
}

/// The honest prover: runs the circuit and samples `shots` measurement
/// outcomes from the exact output distribution. Built single-threaded per
/// seed so the histogram is reproducible.
pub fn prove(circuit: &KTransformCircuit, shots: u64, seed: u64) -> Result<OutcomeHistogram> {
    let state = dense_evolve(circuit)?;
    let mut cumulative = Vec::with_capacity(state.amplitudes().len());
    let mut total = 0.0f64;
    for amp in state.amplitudes() {
        total += amp.norm_sqr();
        cumulative.push(total);
    }
    let mut rng = master_stream(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let x: f64 = rng.gen::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= x)
            .min(cumulative.len() - 1);
        let outcome = BitString::from_index(idx as u64, circuit.n());
        *counts.entry(outcome).or_insert(0) += 1;
    }
    Ok(OutcomeHistogram { counts, shots })
}

/// How a dishonest prover picks its claimed outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DishonestStrategy {
    /// Always claims this string.
    Fixed(BitString),
    /// Claims a uniformly random string, ignoring the circuit.
    UniformRandom,
    /// Samples the circuit honestly once, then flips one random bit.
    BitFlipOfHonest,
}

/// An adversarial prover for soundness tests: returns a claimed outcome that
/// ignores or perturbs the true distribution.
pub fn dishonest_prove(
    circuit: &KTransformCircuit,
    strategy: &DishonestStrategy,
    seed: u64,
) -> Result<BitString> {
    let n = circuit.n();
    match strategy {
        DishonestStrategy::Fixed(s) => {
            if s.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
            Ok(*s)
        }
        DishonestStrategy::UniformRandom => {
            let mut rng = master_stream(seed);
            let word = crate::transform::uniform_bits(&mut rng, n);
            Ok(BitString::from_index(word, n))
        }
        DishonestStrategy::BitFlipOfHonest => {
            let honest = prove(circuit, 1, seed)?
                .modal()
                .expect("one shot yields one outcome");
            let mut rng = master_stream(seed ^ 0x9e37_79b9_7f4a_7c15);
            Ok(honest.flipped(rng.gen_range(0..n)))
        }
    }
}
