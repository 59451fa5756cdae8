//! Build a circuit in code, serialize it to the text format, and parse it
//! back.
//!
//! ```bash
//! cargo run --release --example build_and_roundtrip
//! ```

use fhverify::{
    parse_circuit, serialize_circuit, ClassicalLayer, KTransformCircuit, Layer, ReversibleGate,
    TransformLayer,
};

fn main() {
    // Three qubits: prepare 011, spread the first two through a QFT
    // register, entangle, and undo the register.
    let circuit = KTransformCircuit::new(
        3,
        "011".parse().unwrap(),
        vec![
            Layer::Classical(ClassicalLayer::new(vec![ReversibleGate::x(0)])),
            Layer::Transform(TransformLayer::qft(vec![0, 1]).unwrap()),
            Layer::Classical(ClassicalLayer::new(vec![
                ReversibleGate::cnot(1, 2).unwrap(),
                ReversibleGate::toffoli(0, 1, 2).unwrap(),
            ])),
            Layer::Transform(TransformLayer::inverse_qft(vec![0, 1]).unwrap()),
        ],
    )
    .unwrap();

    let text = serialize_circuit(&circuit);
    println!("serialized circuit:\n");
    println!("{text}");

    let reparsed = parse_circuit(&text).unwrap();
    assert_eq!(reparsed, circuit);
    println!(
        "parsed back identically: k = {}, n = {}",
        reparsed.k(),
        reparsed.n()
    );

    // Located errors instead of crashes on malformed input:
    let broken = "qubits 2\ninput 00\nlayer hadamard 0 0\n";
    match parse_circuit(broken) {
        Err(e) => println!("\nmalformed input is rejected with a located error:\n  {e}"),
        Ok(_) => unreachable!(),
    }
}
