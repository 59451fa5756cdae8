//! Witness search: when nobody tells the verifier the likely outcome, a
//! quantum-capable prover can find it by sampling, and the string itself
//! then acts as a checkable witness.
//!
//! ```bash
//! cargo run --release --example witness_flow
//! ```

use fhverify::{find_witness, parse_circuit, verify, PromiseParams};

const DETERMINISTIC: &str = "\
qubits 5
input 00000
layer classical
  x 4
end
layer hadamard 0 1 2 3 4
layer classical
  cnot 0 4
  cnot 3 4
end
layer hadamard 0 1 2 3 4
";

const UNIFORM: &str = "\
qubits 2
input 00
layer hadamard 0
layer classical
end
layer hadamard 1
";

fn main() {
    let params = PromiseParams::new(0.9, 0.25, 0.99).unwrap();

    let circuit = parse_circuit(DETERMINISTIC).unwrap();
    let witness = find_witness(&circuit, 20, 11).unwrap();
    let report = verify(&circuit, &witness, &params, 11).unwrap();
    println!("deterministic circuit:");
    println!("  sampled witness {witness}");
    println!(
        "  verified: {:?} (Â = {:+.4})",
        report.decision,
        report.a_hat.unwrap()
    );

    // On a circuit with no likely outcome, whatever witness the prover
    // offers is rejected.
    let circuit = parse_circuit(UNIFORM).unwrap();
    let witness = find_witness(&circuit, 20, 11).unwrap();
    let report = verify(&circuit, &witness, &params, 11).unwrap();
    println!("uniform-output circuit:");
    println!("  sampled witness {witness}");
    println!(
        "  verified: {:?} (Â = {:+.4})",
        report.decision,
        report.a_hat.unwrap()
    );
}
