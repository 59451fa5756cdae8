//! The full protocol on a circuit with a deterministic outcome: the honest
//! prover reports what it measured, the classical verifier checks it by
//! path sampling.
//!
//! ```bash
//! cargo run --release --example verify_honest
//! ```

use fhverify::{bernstein_vazirani, prove, verify, PromiseParams};

fn main() {
    // Hidden string recovered by the circuit in one run.
    let hidden = "10110011".parse().unwrap();
    let circuit = bernstein_vazirani(&hidden);
    println!("circuit: {} qubits, k = {}", circuit.n(), circuit.k());

    // Step 1: the prover runs the circuit and sends the outcome.
    let outcome = prove(&circuit, 1, 99).unwrap().modal().unwrap();
    println!("prover claims outcome {outcome}");

    // Steps 2-3: the verifier samples path weights and thresholds the mean.
    let params = PromiseParams::new(0.9, 0.01, 0.99).unwrap();
    let report = verify(&circuit, &outcome, &params, 7).unwrap();

    println!("\nverifier audit trail:");
    println!("  samples drawn   {}", report.samples);
    println!("  Â               {:+.6}", report.a_hat.unwrap());
    println!("  B̂               {:+.6}", report.b_hat.unwrap());
    println!("  threshold θ     {:.6}", report.theta.unwrap());
    println!("  γ'              {:.6}", report.gamma_prime.unwrap());
    println!("  failure bound   {:.3e}", report.failure_bound.unwrap());
    println!("  decision        {:?}", report.decision);
    assert!(report.accepted());
}
