//! The verifier's random variable up close: unit-modulus path weights,
//! their exact mean, and how the sampled estimate concentrates.
//!
//! ```bash
//! cargo run --release --example path_sampling
//! ```

use fhverify::{estimate_amplitude, exact_amplitude_dense, parse_circuit, BitString, PathSampler};

const CIRCUIT: &str = "\
qubits 3
input 000
layer hadamard 0 1 2
layer classical
  cnot 0 2
  cnot 1 2
end
layer hadamard 0 1 2
";

fn main() {
    let circuit = parse_circuit(CIRCUIT).unwrap();
    let outcome: BitString = "110".parse().unwrap();

    let sampler = PathSampler::new(&circuit, &outcome).unwrap();
    println!(
        "paths run through the 2^{} member coset of the first transform:",
        sampler.a()
    );
    for j in sampler.coset().iter() {
        let w = sampler.weight(&j);
        println!("  j = {j}  weight {:+.1} {:+.1}i", w.re, w.im);
    }

    let mean = sampler.enumerate_mean().unwrap();
    let scale = 2f64.powf((sampler.b() as f64 - sampler.a() as f64) / 2.0);
    let target = exact_amplitude_dense(&circuit, &outcome).unwrap() * scale;
    println!(
        "\nexact mean over the coset: {:+.6} {:+.6}i",
        mean.re, mean.im
    );
    println!(
        "rescaled dense amplitude:  {:+.6} {:+.6}i",
        target.re, target.im
    );

    println!("\nsampled estimates converge on the mean:");
    for n_samples in [10u64, 100, 1_000, 10_000, 100_000] {
        let (a_hat, b_hat) = estimate_amplitude(&circuit, &outcome, n_samples, 42).unwrap();
        let err = ((a_hat - mean.re).powi(2) + (b_hat - mean.im).powi(2)).sqrt();
        println!("  N = {n_samples:6}   Â = {a_hat:+.4}   B̂ = {b_hat:+.4}   error {err:.4}");
    }
}
