//! Classical verification of quantum circuits containing at most two
//! basis-changing layers.
//!
//! A circuit here alternates reversible classical layers (generalized
//! Toffoli gates) with up to two transform layers (Hadamard layers or QFT
//! registers). A prover claims the circuit's likely measurement outcome;
//! the verifier — entirely classical — decides between "that outcome has
//! probability at least δ" and "no outcome has probability above ε", given
//! the promise that exactly one holds. The k = 2 decision samples
//! computational paths through the first transform and thresholds the
//! sample mean, with a Hoeffding bound fixing the sample count.
//!
//! The crate also ships desk-scale oracles (a dense state-vector simulator
//! and an exact path-sum evaluator), honest and dishonest provers for
//! end-to-end soundness experiments, and a text format for circuits.
//!
//! # Examples
//!
//! The `examples/` directory is the guided tour, one runnable program per
//! capability:
//!
//! - `build_and_roundtrip` — constructing circuits in code, serializing
//!   them, and parsing them back.
//! - `simulate_histogram` — dense evolution and measurement histograms.
//! - `amplitudes_two_ways` — the dense oracle against the path-sum oracle.
//! - `path_sampling` — path weights, their mean, and concentration.
//! - `verify_honest` — the full verification protocol on a circuit with a
//!   deterministic outcome.
//! - `reject_dishonest` — adversarial provers being caught.
//! - `witness_flow` — sampling a witness with the prover, then verifying it.
//!
//! Run one with `cargo run --release --example verify_honest`.
//!
//! ```
//! use fhverify::{bernstein_vazirani, find_witness, verify, PromiseParams};
//!
//! let circuit = bernstein_vazirani(&"10110".parse().unwrap());
//! let params = PromiseParams::new(0.9, 0.01, 0.99).unwrap();
//! let witness = find_witness(&circuit, 10, 7).unwrap();
//! let verdict = verify(&circuit, &witness, &params, 7).unwrap();
//! assert!(verdict.accepted());
//! ```
//!
//! A thin `fhverify` binary exposes the same operations as subcommands
//! (`verify`, `prove`, `amplitude`, `witness`) over circuit files.

pub mod bits;
pub mod circuit;
pub mod classical;
pub mod error;
pub mod parse;
pub mod report;
mod rng;
pub mod sim;
pub mod transform;
pub mod verify;

pub use bits::BitString;
pub use circuit::{KTransformCircuit, Layer};
pub use classical::{
    apply_classical, apply_gate, invert_classical, ClassicalLayer, ReversibleGate,
};
pub use error::{Error, Result};
pub use parse::{bernstein_vazirani, parse_circuit, serialize_circuit, ParseError, ParseErrorKind};
pub use report::{circuit_digest, RunReport, REPORT_SCHEMA};
pub use sim::{
    dense_evolve, dishonest_prove, exact_amplitude_dense, exact_amplitude_pathsum, prove,
    DishonestStrategy, OutcomeHistogram, StateVector, MAX_DENSE_QUBITS, MAX_PATH_QUBITS,
};
pub use transform::{
    coset_of, phase_of, sample_coset, Coset, Phase, TransformKind, TransformLayer,
};
pub use verify::{
    estimate_amplitude, find_witness, mirror_instance, required_samples, rescale, sample_path,
    verify, verify_k0, verify_k1, verify_k2, Decision, PathSampler, PromiseParams, RescaledParams,
    VerdictReport,
};
