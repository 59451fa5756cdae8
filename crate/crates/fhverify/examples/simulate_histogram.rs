//! Dense state-vector evolution and measurement histograms.
//!
//! ```bash
//! cargo run --release --example simulate_histogram
//! ```

use fhverify::{dense_evolve, parse_circuit, prove};

const GHZ_LIKE: &str = "\
qubits 3
input 000
layer hadamard 0
layer classical
  cnot 0 1
  cnot 1 2
end
";

fn main() {
    let circuit = parse_circuit(GHZ_LIKE).unwrap();

    let state = dense_evolve(&circuit).unwrap();
    println!("final state (nonzero amplitudes):");
    for idx in 0..state.amplitudes().len() {
        let amp = state.amplitudes()[idx];
        if amp.norm() > 1e-12 {
            println!("  |{idx:03b}⟩  {:+.6} {:+.6}i", amp.re, amp.im);
        }
    }
    println!("total probability: {:.12}", state.norm_squared());

    let shots = 10_000;
    let histogram = prove(&circuit, shots, 7).unwrap();
    println!("\n{shots} shots with seed 7:");
    for (outcome, count) in histogram.counts() {
        println!(
            "  {outcome}  {count:5}  ({:.3})",
            *count as f64 / shots as f64
        );
    }
    println!("modal outcome: {}", histogram.modal().unwrap());
}
