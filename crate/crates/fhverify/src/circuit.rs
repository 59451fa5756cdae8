//! Whole circuits: alternating classical and transform layers over a fixed
//! basis-state input.

use crate::bits::BitString;
use crate::classical::ClassicalLayer;
use crate::error::{Error, Result};
use crate::transform::TransformLayer;

/// One raw layer, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum Layer {
    Classical(ClassicalLayer),
    Transform(TransformLayer),
}

/// A circuit in normal form: classical layers and transform layers strictly
/// alternating as `C1, F1, C2, …, F_k, C_{k+1}`, applied to a basis-state
/// input and measured in the computational basis. Classical layers may be
/// empty (the identity).
///
/// Normalization merges adjacent classical layers by concatenation and pads
/// with empty classical layers. Two transform layers in direct succession
/// are rejected: merging them would change the transform count silently, so
/// the caller must declare them as a single transform layer.
#[derive(Debug, Clone, PartialEq)]
pub struct KTransformCircuit {
    n: usize,
    input: BitString,
    classical: Vec<ClassicalLayer>,
    transforms: Vec<TransformLayer>,
}

impl KTransformCircuit {
    pub fn new(n: usize, input: BitString, layers: Vec<Layer>) -> Result<Self> {
        if input.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: input.len(),
            });
        }
        let mut classical = vec![ClassicalLayer::identity()];
        let mut transforms: Vec<TransformLayer> = Vec::new();
        let mut previous_was_transform = false;
        for layer in layers {
            match layer {
                Layer::Classical(c) => {
                    c.validate(n)?;
                    let last = classical.pop().expect("at least one classical layer");
                    classical.push(last.concat(c));
                    previous_was_transform = false;
                }
                Layer::Transform(f) => {
                    if previous_was_transform {
                        return Err(Error::AdjacentTransforms);
                    }
                    f.validate(n)?;
                    transforms.push(f);
                    classical.push(ClassicalLayer::identity());
                    previous_was_transform = true;
                }
            }
        }
        Ok(Self {
            n,
            input,
            classical,
            transforms,
        })
    }

    /// A purely classical circuit (k = 0).
    pub fn classical_only(n: usize, input: BitString, layer: ClassicalLayer) -> Result<Self> {
        Self::new(n, input, vec![Layer::Classical(layer)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of transform layers.
    pub fn k(&self) -> usize {
        self.transforms.len()
    }

    pub fn input(&self) -> &BitString {
        &self.input
    }

    /// Same circuit with a different input state.
    pub fn with_input(&self, input: BitString) -> Result<Self> {
        if input.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: input.len(),
            });
        }
        let mut out = self.clone();
        out.input = input;
        Ok(out)
    }

    /// The k+1 classical layers, in temporal order.
    pub fn classical_layers(&self) -> &[ClassicalLayer] {
        &self.classical
    }

    /// The k transform layers, in temporal order.
    pub fn transform_layers(&self) -> &[TransformLayer] {
        &self.transforms
    }

    pub fn classical_layer(&self, i: usize) -> &ClassicalLayer {
        &self.classical[i]
    }

    pub fn transform_layer(&self, i: usize) -> &TransformLayer {
        &self.transforms[i]
    }

    /// Layers in temporal order, for simulators.
    pub fn layers(&self) -> impl Iterator<Item = Layer> + '_ {
        self.classical.iter().enumerate().flat_map(move |(i, c)| {
            let mut pair = Vec::with_capacity(2);
            pair.push(Layer::Classical(c.clone()));
            if i < self.transforms.len() {
                pair.push(Layer::Transform(self.transforms[i].clone()));
            }
            pair.into_iter()
        })
    }

    /// Fails unless the circuit has exactly `k` transform layers.
    pub fn require_k(&self, k: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::WrongArity {
                expected: k,
                found: self.k(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ReversibleGate;

    fn bits(text: &str) -> BitString {
        text.parse().unwrap()
    }

    fn cnot_layer() -> ClassicalLayer {
        ClassicalLayer::new(vec![ReversibleGate::cnot(0, 1).unwrap()])
    }

    #[test]
    fn adjacent_classical_layers_merge() {
        let c1 = ClassicalLayer::new(vec![ReversibleGate::x(0)]);
        let c2 = cnot_layer();
        let circuit = KTransformCircuit::new(
            2,
            bits("00"),
            vec![Layer::Classical(c1.clone()), Layer::Classical(c2.clone())],
        )
        .unwrap();
        assert_eq!(circuit.k(), 0);
        assert_eq!(circuit.classical_layers().len(), 1);
        assert_eq!(circuit.classical_layer(0).gates().len(), 2);
    }

    #[test]
    fn lone_transform_gets_padded() {
        let f = TransformLayer::hadamard(vec![0]).unwrap();
        let circuit =
            KTransformCircuit::new(1, bits("0"), vec![Layer::Transform(f.clone())]).unwrap();
        assert_eq!(circuit.k(), 1);
        assert!(circuit.classical_layer(0).is_identity());
        assert!(circuit.classical_layer(1).is_identity());
        assert_eq!(circuit.transform_layer(0), &f);
    }

    #[test]
    fn adjacent_transforms_rejected_even_with_disjoint_supports() {
        let f1 = TransformLayer::hadamard(vec![0]).unwrap();
        let f2 = TransformLayer::hadamard(vec![1]).unwrap();
        let result = KTransformCircuit::new(
            2,
            bits("00"),
            vec![
                Layer::Classical(cnot_layer()),
                Layer::Transform(f1),
                Layer::Transform(f2),
            ],
        );
        assert_eq!(result, Err(Error::AdjacentTransforms));
    }

    #[test]
    fn normalization_is_idempotent() {
        let circuit = KTransformCircuit::new(
            2,
            bits("00"),
            vec![
                Layer::Classical(cnot_layer()),
                Layer::Transform(TransformLayer::hadamard(vec![0]).unwrap()),
                Layer::Classical(cnot_layer()),
            ],
        )
        .unwrap();
        let layers: Vec<Layer> = circuit.layers().collect();
        let again = KTransformCircuit::new(2, bits("00"), layers).unwrap();
        assert_eq!(circuit, again);
    }

    #[test]
    fn input_length_must_match() {
        assert!(matches!(
            KTransformCircuit::new(3, bits("00"), vec![]),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn layer_indices_validated_against_n() {
        let c = ClassicalLayer::new(vec![ReversibleGate::x(4)]);
        assert!(matches!(
            KTransformCircuit::new(2, bits("00"), vec![Layer::Classical(c)]),
            Err(Error::IndexOutOfRange { index: 4, n: 2 })
        ));
    }
}
