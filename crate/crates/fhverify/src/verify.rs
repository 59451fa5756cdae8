//! The classical verifier for circuits with at most two transform layers.
//!
//! Verification decides, for a claimed outcome string, between "this outcome
//! appears with probability at least δ" and "no outcome appears with
//! probability above ε", under the promise that exactly one of the two
//! holds, with ε < δ/2.
//!
//! - k = 0: direct evaluation of the classical circuit.
//! - k = 1: the outcome probability is exactly `2^(-a)` or 0 and is computed
//!   exactly; no sampling is needed.
//! - k = 2: the outcome amplitude is a sum over paths through the first
//!   transform's coset. Each path carries a unit-modulus (or zero) weight
//!   that can be sampled classically; a Hoeffding argument turns the sample
//!   mean into a sound threshold test.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::bits::BitString;
use crate::circuit::{KTransformCircuit, Layer};
use crate::classical::apply_compiled;
use crate::error::{Error, Result};
use crate::rng::indexed_stream;
use crate::sim::prove;
use crate::transform::{Coset, TransformLayer};

/// Promise-problem parameters: the yes-threshold δ, the no-threshold ε, and
/// the target confidence for the sampled decision.
///
/// Requires ε < δ/2, which makes γ = √(δ/2) − √ε strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PromiseParams {
    delta: f64,
    epsilon: f64,
    confidence: f64,
    samples: Option<u64>,
}

impl PromiseParams {
    pub fn new(delta: f64, epsilon: f64, confidence: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "delta must be in (0, 1], got {delta}"
            )));
        }
        if !(epsilon >= 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must be in [0, 1), got {epsilon}"
            )));
        }
        if !(epsilon < delta / 2.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must be smaller than delta/2, got epsilon={epsilon}, delta={delta}"
            )));
        }
        if !(confidence > 0.0 && confidence < 1.0) {
            return Err(Error::InvalidParams(format!(
                "confidence must be in (0, 1), got {confidence}"
            )));
        }
        Ok(Self {
            delta,
            epsilon,
            confidence,
            samples: None,
        })
    }

    /// Overrides the derived sample count with an explicit one.
    pub fn with_samples(mut self, samples: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParams(
                "sample count must be at least 1".into(),
            ));
        }
        self.samples = Some(samples);
        Ok(self)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }

    pub fn samples(&self) -> Option<u64> {
        self.samples
    }

    /// γ = √(δ/2) − √ε.
    pub fn gamma(&self) -> f64 {
        (self.delta / 2.0).sqrt() - self.epsilon.sqrt()
    }
}

/// Promise parameters rescaled by `2^(b-a)` so they apply to the sampled
/// quantity, which estimates `2^((b-a)/2)` times the outcome amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledParams {
    pub a: usize,
    pub b: usize,
    pub delta_prime: f64,
    pub epsilon_prime: f64,
    pub gamma_prime: f64,
    /// Decision threshold θ = √ε′ + γ′/2.
    pub theta: f64,
    /// True when `2^(a-b) < δ`: the amplitude modulus is capped at
    /// `2^(-(b-a)/2)`, so the yes instance is impossible and the verifier
    /// rejects without sampling.
    pub trivial_reject: bool,
}

/// Rescales δ and ε by `2^(b-a)` and derives γ′ and the threshold θ.
pub fn rescale(params: &PromiseParams, a: usize, b: usize) -> Result<RescaledParams> {
    let scale = 2f64.powi(b as i32 - a as i32);
    let delta_prime = scale * params.delta();
    let epsilon_prime = scale * params.epsilon();
    let gamma_prime = (delta_prime / 2.0).sqrt() - epsilon_prime.sqrt();
    if gamma_prime <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "rescaled gap is not positive (gamma'={gamma_prime}); \
             the promise is unachievable as stated"
        )));
    }
    let theta = epsilon_prime.sqrt() + gamma_prime / 2.0;
    let trivial_reject = 2f64.powi(a as i32 - b as i32) < params.delta();
    Ok(RescaledParams {
        a,
        b,
        delta_prime,
        epsilon_prime,
        gamma_prime,
        theta,
        trivial_reject,
    })
}

/// Smallest sample count guaranteeing the target confidence: the least
/// integer strictly greater than `8·γ′⁻²·ln(2/(1-p))`.
///
/// The error exponent is driven by γ′, the gap that survives rescaling, so
/// that is what enters here; the natural logarithm comes from the
/// exponential tail bound. Callers wanting a stricter count can override it
/// explicitly.
pub fn required_samples(gamma_prime: f64, confidence: f64) -> Result<u64> {
    if !(gamma_prime > 0.0) || !gamma_prime.is_finite() {
        return Err(Error::InvalidParams(format!(
            "gamma' must be positive, got {gamma_prime}"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidParams(format!(
            "confidence must be in (0, 1), got {confidence}"
        )));
    }
    let bound = 8.0 / (gamma_prime * gamma_prime) * (2.0 / (1.0 - confidence)).ln();
    if !bound.is_finite() || bound >= u64::MAX as f64 {
        return Err(Error::InvalidParams(format!(
            "sample count {bound} is out of range"
        )));
    }
    Ok(bound.floor() as u64 + 1)
}

/// Accept or reject the claimed outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// The verifier's full audit trail for one verification run.
///
/// Fields that do not apply to a given arity (for example estimates in the
/// exact k ≤ 1 paths) are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictReport {
    pub decision: Decision,
    /// Transform count of the verified circuit.
    pub k: usize,
    /// Real part of the sample mean (k = 2 only).
    pub a_hat: Option<f64>,
    /// Imaginary part of the sample mean (k = 2 only).
    pub b_hat: Option<f64>,
    /// Decision threshold θ (k = 2 only).
    pub theta: Option<f64>,
    /// Number of path samples drawn. Zero for the exact k ≤ 1 paths and for
    /// trivial rejections.
    pub samples: u64,
    /// Master seed for the sampling streams (k = 2 only).
    pub seed: Option<u64>,
    /// Bound `2·e^(-γ′²N/8)` on the probability the decision is wrong.
    pub failure_bound: Option<f64>,
    /// True when the instance was conjugate-reversed so the sampled
    /// transform has the smaller support.
    pub mirrored: bool,
    /// γ before rescaling (absent for k = 0, which needs no parameters).
    pub gamma: Option<f64>,
    /// γ′ after rescaling (k = 2 only).
    pub gamma_prime: Option<f64>,
    /// Exactly computed outcome probability (k ≤ 1 only).
    pub exact_probability: Option<f64>,
    /// Rejected without sampling because the support sizes cap the
    /// amplitude below the yes threshold.
    pub trivial_reject: bool,
    /// The exact probability fell strictly between ε and δ: the stated
    /// promise does not hold. The verifier rejects and flags it.
    pub promise_violation: bool,
}

impl VerdictReport {
    fn exact(k: usize, decision: Decision, probability: f64) -> Self {
        Self {
            decision,
            k,
            a_hat: None,
            b_hat: None,
            theta: None,
            samples: 0,
            seed: None,
            failure_bound: None,
            mirrored: false,
            gamma: None,
            gamma_prime: None,
            exact_probability: Some(probability),
            trivial_reject: false,
            promise_violation: false,
        }
    }

    pub fn accepted(&self) -> bool {
        self.decision == Decision::Accept
    }
}

/// Verifies a purely classical circuit by direct evaluation.
pub fn verify_k0(circuit: &KTransformCircuit, s: &BitString) -> Result<VerdictReport> {
    circuit.require_k(0)?;
    if s.len() != circuit.n() {
        return Err(Error::LengthMismatch {
            expected: circuit.n(),
            found: s.len(),
        });
    }
    let out = circuit.classical_layer(0).apply(circuit.input())?;
    let decision = if out == *s {
        Decision::Accept
    } else {
        Decision::Reject
    };
    let probability = if out == *s { 1.0 } else { 0.0 };
    Ok(VerdictReport::exact(0, decision, probability))
}

/// Verifies a one-transform circuit exactly.
///
/// The outcome probability of such a circuit is `2^(-a)` when the inverse
/// image of the outcome lies in the reachable coset and 0 otherwise, so no
/// sampling is needed. A probability strictly between ε and δ contradicts
/// the promise; the verifier then rejects with the violation flagged.
pub fn verify_k1(
    circuit: &KTransformCircuit,
    s: &BitString,
    params: &PromiseParams,
) -> Result<VerdictReport> {
    circuit.require_k(1)?;
    if s.len() != circuit.n() {
        return Err(Error::LengthMismatch {
            expected: circuit.n(),
            found: s.len(),
        });
    }
    let f1 = circuit.transform_layer(0);
    let r = circuit.classical_layer(0).apply(circuit.input())?;
    let t = circuit.classical_layer(1).apply_inverse(s)?;
    let probability = if f1.coset_of(&r).contains(&t) {
        2f64.powi(-(f1.m() as i32))
    } else {
        0.0
    };
    let (decision, violation) = if probability >= params.delta() {
        (Decision::Accept, false)
    } else if probability <= params.epsilon() {
        (Decision::Reject, false)
    } else {
        (Decision::Reject, true)
    };
    let mut report = VerdictReport::exact(1, decision, probability);
    report.gamma = Some(params.gamma());
    report.promise_violation = violation;
    Ok(report)
}

/// Precomputed context for sampling path weights of a two-transform
/// circuit's outcome amplitude.
///
/// A path is one coset member `j` reachable through the first transform.
/// Its weight is zero when the middle classical layer pushes `j` outside
/// the second transform's reach of the outcome, and otherwise the unit
/// phase factor `e^(i(α+β))` of the two transitions. The mean weight over
/// the coset equals `2^((b-a)/2)` times the outcome amplitude.
#[derive(Debug)]
pub struct PathSampler<'a> {
    n: usize,
    f1: &'a TransformLayer,
    f2: &'a TransformLayer,
    middle: Vec<(u64, u64)>,
    r: BitString,
    t: BitString,
    coset: Coset,
}

impl<'a> PathSampler<'a> {
    pub fn new(circuit: &'a KTransformCircuit, s: &BitString) -> Result<Self> {
        circuit.require_k(2)?;
        if s.len() != circuit.n() {
            return Err(Error::LengthMismatch {
                expected: circuit.n(),
                found: s.len(),
            });
        }
        let f1 = circuit.transform_layer(0);
        let f2 = circuit.transform_layer(1);
        let r = circuit.classical_layer(0).apply(circuit.input())?;
        let t = circuit.classical_layer(2).apply_inverse(s)?;
        let middle = circuit.classical_layer(1).compile(circuit.n());
        let coset = f1.coset_of(&r);
        Ok(Self {
            n: circuit.n(),
            f1,
            f2,
            middle,
            r,
            t,
            coset,
        })
    }

    /// Support size of the sampled (first) transform.
    pub fn a(&self) -> usize {
        self.f1.m()
    }

    /// Support size of the second transform.
    pub fn b(&self) -> usize {
        self.f2.m()
    }

    /// The coset being sampled.
    pub fn coset(&self) -> &Coset {
        &self.coset
    }

    /// Weight of the path through `j`: modulus 0 or exactly 1.
    pub fn weight(&self, j: &BitString) -> Complex64 {
        debug_assert!(self.coset.contains(j));
        let u = BitString::from_index(apply_compiled(&self.middle, j.to_index()), self.n);
        if self.f2.coset_of(&u).contains(&self.t) {
            let alpha = self.f1.phase_in_coset(&self.r, j);
            let beta = self.f2.phase_in_coset(&u, &self.t);
            alpha.add(&beta).to_complex()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Weight of a path drawn uniformly from the coset.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        self.weight(&self.coset.sample(rng))
    }

    /// Exact mean weight by full coset enumeration: `2^((b-a)/2)` times the
    /// outcome amplitude. Deterministic counterpart of the sampled mean.
    pub fn enumerate_mean(&self) -> Result<Complex64> {
        let a = self.a();
        if a > crate::sim::MAX_PATH_QUBITS {
            return Err(Error::EnumerationTooLarge {
                a,
                max: crate::sim::MAX_PATH_QUBITS,
            });
        }
        let sum: Complex64 = self.coset.iter().map(|j| self.weight(&j)).sum();
        Ok(sum * 2f64.powi(-(a as i32)))
    }
}

/// Draws one path weight for the claimed outcome of a two-transform
/// circuit. The value has modulus 0 or exactly 1.
pub fn sample_path<R: Rng + ?Sized>(
    circuit: &KTransformCircuit,
    s: &BitString,
    rng: &mut R,
) -> Result<Complex64> {
    Ok(PathSampler::new(circuit, s)?.sample(rng))
}

/// Mean of `n_samples` independent path weights: the real and imaginary
/// parts estimate `2^((b-a)/2)` times the outcome amplitude.
///
/// Each sample's randomness is an independent stream addressed by the
/// sample index under the master seed, so the result depends only on
/// `(seed, n_samples)` — never on how the index range is partitioned across
/// worker threads.
pub fn estimate_amplitude(
    circuit: &KTransformCircuit,
    s: &BitString,
    n_samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if n_samples == 0 {
        return Err(Error::InvalidParams(
            "sample count must be at least 1".into(),
        ));
    }
    let sampler = PathSampler::new(circuit, s)?;
    let values: Vec<Complex64> = (0..n_samples)
        .into_par_iter()
        .map(|i| sampler.sample(&mut indexed_stream(seed, i)))
        .collect();
    // Summed in index order so the result is invariant under thread count.
    let sum: Complex64 = values.into_iter().sum();
    let mean = sum / n_samples as f64;
    Ok((mean.re, mean.im))
}

/// Conjugate-reverses a two-transform instance: the reversed circuit runs
/// the inverted layers in opposite order on input `C3⁻¹(s)`, and the claimed
/// outcome becomes the original input. Its outcome amplitude is the complex
/// conjugate of the original, so the modulus — all the verifier needs — is
/// unchanged, while the support sizes (a, b) swap.
pub fn mirror_instance(
    circuit: &KTransformCircuit,
    s: &BitString,
) -> Result<(KTransformCircuit, BitString)> {
    circuit.require_k(2)?;
    if s.len() != circuit.n() {
        return Err(Error::LengthMismatch {
            expected: circuit.n(),
            found: s.len(),
        });
    }
    let new_input = circuit.classical_layer(2).apply_inverse(s)?;
    let layers = vec![
        Layer::Transform(circuit.transform_layer(1).adjoint()),
        Layer::Classical(circuit.classical_layer(1).inverted()),
        Layer::Transform(circuit.transform_layer(0).adjoint()),
        Layer::Classical(circuit.classical_layer(0).inverted()),
    ];
    let mirrored = KTransformCircuit::new(circuit.n(), new_input, layers)?;
    Ok((mirrored, *circuit.input()))
}

/// Verifies a two-transform circuit by path sampling.
///
/// When the first transform has the larger support the instance is mirrored
/// first, so the sampled coset is the smaller one and the rescaled
/// thresholds apply. If the support sizes alone cap the amplitude below the
/// yes threshold the verifier rejects trivially, without sampling.
///
/// The decision takes the larger of |Â| and |B̂| against θ: a concentrated
/// amplitude pushes at least one component above √(δ′/2), while in a no
/// instance both stay below √ε′, so thresholding the maximum separates the
/// two cases. (Requiring both components to clear θ would wrongly reject
/// real-valued amplitudes, whose imaginary part hovers near zero.) A tie at
/// exactly θ accepts, fixed this way for determinism.
pub fn verify_k2(
    circuit: &KTransformCircuit,
    s: &BitString,
    params: &PromiseParams,
    seed: u64,
) -> Result<VerdictReport> {
    circuit.require_k(2)?;
    if s.len() != circuit.n() {
        return Err(Error::LengthMismatch {
            expected: circuit.n(),
            found: s.len(),
        });
    }
    let mirrored = circuit.transform_layer(0).m() > circuit.transform_layer(1).m();
    let (work_circuit, claim);
    if mirrored {
        let (c, o) = mirror_instance(circuit, s)?;
        work_circuit = c;
        claim = o;
    } else {
        work_circuit = circuit.clone();
        claim = *s;
    }
    let a = work_circuit.transform_layer(0).m();
    let b = work_circuit.transform_layer(1).m();
    let rescaled = rescale(params, a, b)?;

    let mut report = VerdictReport {
        decision: Decision::Reject,
        k: 2,
        a_hat: None,
        b_hat: None,
        theta: Some(rescaled.theta),
        samples: 0,
        seed: Some(seed),
        failure_bound: None,
        mirrored,
        gamma: Some(params.gamma()),
        gamma_prime: Some(rescaled.gamma_prime),
        exact_probability: None,
        trivial_reject: rescaled.trivial_reject,
        promise_violation: false,
    };
    if rescaled.trivial_reject {
        return Ok(report);
    }

    let n_samples = match params.samples() {
        Some(n) => n,
        None => required_samples(rescaled.gamma_prime, params.confidence())?,
    };
    let (a_hat, b_hat) = estimate_amplitude(&work_circuit, &claim, n_samples, seed)?;
    report.a_hat = Some(a_hat);
    report.b_hat = Some(b_hat);
    report.samples = n_samples;
    report.failure_bound =
        Some(2.0 * (-rescaled.gamma_prime.powi(2) * n_samples as f64 / 8.0).exp());
    report.decision = if a_hat.abs().max(b_hat.abs()) >= rescaled.theta {
        Decision::Accept
    } else {
        Decision::Reject
    };
    Ok(report)
}

/// Dispatches to the verifier matching the circuit's transform count.
/// Fails for k > 2, which this verification procedure does not cover.
pub fn verify(
    circuit: &KTransformCircuit,
    s: &BitString,
    params: &PromiseParams,
    seed: u64,
) -> Result<VerdictReport> {
    match circuit.k() {
        0 => verify_k0(circuit, s),
        1 => verify_k1(circuit, s, params),
        2 => verify_k2(circuit, s, params, seed),
        k => Err(Error::TooManyTransforms { found: k }),
    }
}

/// Runs the honest prover and returns the most frequent outcome, ties
/// broken lexicographically — the natural witness candidate.
pub fn find_witness(circuit: &KTransformCircuit, shots: u64, seed: u64) -> Result<BitString> {
    prove(circuit, shots, seed)?
        .modal()
        .ok_or_else(|| Error::InvalidParams("witness search needs at least one shot".into()))
}
