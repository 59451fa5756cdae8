//! Shared fixtures and seeded random circuit generation for the
//! integration suites.

#![allow(dead_code)]

use fhverify::{
    BitString, ClassicalLayer, KTransformCircuit, Layer, ReversibleGate, TransformLayer,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bits(text: &str) -> BitString {
    text.parse().unwrap()
}

pub fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> BitString {
    let word = if n == 64 {
        rng.gen()
    } else {
        rng.gen_range(0..(1u64 << n))
    };
    BitString::from_index(word, n)
}

/// A random generalized Toffoli with up to three controls.
pub fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> ReversibleGate {
    let target = rng.gen_range(0..n);
    let mut pool: Vec<usize> = (0..n).filter(|&q| q != target).collect();
    let count = rng.gen_range(0..=pool.len().min(3));
    for i in 0..count {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    ReversibleGate::new(pool[..count].to_vec(), target).expect("valid gate")
}

pub fn random_layer(rng: &mut ChaCha8Rng, n: usize, max_gates: usize) -> ClassicalLayer {
    let count = rng.gen_range(0..=max_gates);
    ClassicalLayer::new((0..count).map(|_| random_gate(rng, n)).collect())
}

/// A random transform with exactly `m` support qubits in random order.
pub fn random_transform_with_m(rng: &mut ChaCha8Rng, n: usize, m: usize) -> TransformLayer {
    assert!(m >= 1 && m <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    let support = pool[..m].to_vec();
    match rng.gen_range(0..3) {
        0 => TransformLayer::hadamard(support),
        1 => TransformLayer::qft(support),
        _ => TransformLayer::inverse_qft(support),
    }
    .expect("valid transform")
}

pub fn random_transform(rng: &mut ChaCha8Rng, n: usize) -> TransformLayer {
    let m = rng.gen_range(1..=n);
    random_transform_with_m(rng, n, m)
}

/// Random circuit with `k` transform layers over `n` qubits.
pub fn random_circuit(rng: &mut ChaCha8Rng, n: usize, k: usize) -> KTransformCircuit {
    let input = random_bits(rng, n);
    let mut layers = Vec::new();
    for i in 0..=k {
        layers.push(Layer::Classical(random_layer(rng, n, 6)));
        if i < k {
            layers.push(Layer::Transform(random_transform(rng, n)));
        }
    }
    KTransformCircuit::new(n, input, layers).expect("alternating layers")
}

/// Random two-transform circuit with fixed support sizes a and b.
pub fn random_k2_with_supports(
    rng: &mut ChaCha8Rng,
    n: usize,
    a: usize,
    b: usize,
) -> KTransformCircuit {
    let input = random_bits(rng, n);
    let layers = vec![
        Layer::Classical(random_layer(rng, n, 6)),
        Layer::Transform(random_transform_with_m(rng, n, a)),
        Layer::Classical(random_layer(rng, n, 6)),
        Layer::Transform(random_transform_with_m(rng, n, b)),
        Layer::Classical(random_layer(rng, n, 6)),
    ];
    KTransformCircuit::new(n, input, layers).expect("alternating layers")
}

/// H then H on one qubit: the identity circuit.
pub fn hh_identity() -> KTransformCircuit {
    KTransformCircuit::new(
        1,
        bits("0"),
        vec![
            Layer::Transform(TransformLayer::hadamard(vec![0]).unwrap()),
            Layer::Classical(ClassicalLayer::identity()),
            Layer::Transform(TransformLayer::hadamard(vec![0]).unwrap()),
        ],
    )
    .unwrap()
}

/// F1 = H{0}, F2 = H{1} on two qubits: every outcome has probability 1/4.
pub fn uniform_no_instance() -> KTransformCircuit {
    KTransformCircuit::new(
        2,
        bits("00"),
        vec![
            Layer::Transform(TransformLayer::hadamard(vec![0]).unwrap()),
            Layer::Classical(ClassicalLayer::identity()),
            Layer::Transform(TransformLayer::hadamard(vec![1]).unwrap()),
        ],
    )
    .unwrap()
}
