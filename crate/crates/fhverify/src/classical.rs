//! Reversible classical layers built from generalized Toffoli gates.
//!
//! Every gate flips one target bit when all of its control bits are set, so
//! each gate is its own inverse and a layer of gates acts as a permutation of
//! the computational basis.

use crate::bits::BitString;
use crate::error::{Error, Result};

/// A generalized Toffoli gate: zero or more controls and one target.
///
/// No controls is a Pauli-X, one control a CNOT, two controls a Toffoli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleGate {
    controls: Vec<usize>,
    target: usize,
}

impl ReversibleGate {
    /// Builds a gate, rejecting duplicate controls and a target that is also
    /// a control. Controls are kept sorted so gate rendering is canonical.
    pub fn new(mut controls: Vec<usize>, target: usize) -> Result<Self> {
        controls.sort_unstable();
        for pair in controls.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateQubit {
                    qubit: pair[0],
                    context: "controls",
                });
            }
        }
        if controls.binary_search(&target).is_ok() {
            return Err(Error::TargetInControls { target });
        }
        Ok(Self { controls, target })
    }

    /// Unconditional bit flip on `target`.
    pub fn x(target: usize) -> Self {
        Self {
            controls: Vec::new(),
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(vec![control], target)
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Result<Self> {
        Self::new(vec![c1, c2], target)
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Largest qubit index the gate touches.
    pub fn max_index(&self) -> usize {
        self.controls
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(self.target)
    }

    /// Applies the gate to a basis state: the target bit is flipped iff all
    /// control bits are 1. The input is not modified.
    pub fn apply(&self, s: &BitString) -> Result<BitString> {
        let n = s.len();
        if let Some(&index) = self.controls.iter().find(|&&c| c >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if self.target >= n {
            return Err(Error::IndexOutOfRange {
                index: self.target,
                n,
            });
        }
        if self.controls.iter().all(|&c| s.get(c)) {
            Ok(s.flipped(self.target))
        } else {
            Ok(*s)
        }
    }
}

/// An ordered list of reversible gates, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassicalLayer {
    gates: Vec<ReversibleGate>,
}

impl ClassicalLayer {
    pub fn new(gates: Vec<ReversibleGate>) -> Self {
        Self { gates }
    }

    /// The identity permutation.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gates(&self) -> &[ReversibleGate] {
        &self.gates
    }

    pub fn is_identity(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends another layer's gates after this one's.
    pub fn concat(mut self, other: ClassicalLayer) -> Self {
        self.gates.extend(other.gates);
        self
    }

    /// Checks every gate index against a qubit count.
    pub fn validate(&self, n: usize) -> Result<()> {
        for gate in &self.gates {
            if gate.max_index() >= n {
                return Err(Error::IndexOutOfRange {
                    index: gate.max_index(),
                    n,
                });
            }
        }
        Ok(())
    }

    /// Applies the gates in list order.
    pub fn apply(&self, s: &BitString) -> Result<BitString> {
        let mut out = *s;
        for gate in &self.gates {
            out = gate.apply(&out)?;
        }
        Ok(out)
    }

    /// Applies the inverse permutation: gates in reverse order, each gate
    /// being its own inverse.
    pub fn apply_inverse(&self, s: &BitString) -> Result<BitString> {
        let mut out = *s;
        for gate in self.gates.iter().rev() {
            out = gate.apply(&out)?;
        }
        Ok(out)
    }

    /// The layer realizing the inverse permutation (gate list reversed).
    pub fn inverted(&self) -> Self {
        Self {
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Compiles the layer into `(control_mask, target_mask)` pairs over the
    /// integer reading of an `n`-bit string, for tight simulation loops.
    pub(crate) fn compile(&self, n: usize) -> Vec<(u64, u64)> {
        let mask_of = |q: usize| 1u64 << (n - 1 - q);
        self.gates
            .iter()
            .map(|g| {
                let cm = g.controls.iter().fold(0u64, |acc, &c| acc | mask_of(c));
                (cm, mask_of(g.target))
            })
            .collect()
    }
}

/// Applies a compiled layer to the integer reading of a basis state.
pub(crate) fn apply_compiled(compiled: &[(u64, u64)], mut index: u64) -> u64 {
    for &(control_mask, target_mask) in compiled {
        if index & control_mask == control_mask {
            index ^= target_mask;
        }
    }
    index
}

/// Free-function form of [`ReversibleGate::apply`].
pub fn apply_gate(gate: &ReversibleGate, s: &BitString) -> Result<BitString> {
    gate.apply(s)
}

/// Free-function form of [`ClassicalLayer::apply`].
pub fn apply_classical(layer: &ClassicalLayer, s: &BitString) -> Result<BitString> {
    layer.apply(s)
}

/// Free-function form of [`ClassicalLayer::apply_inverse`].
pub fn invert_classical(layer: &ClassicalLayer, s: &BitString) -> Result<BitString> {
    layer.apply_inverse(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(text: &str) -> BitString {
        text.parse().unwrap()
    }

    #[test]
    fn toffoli_flips_only_when_controls_set() {
        let g = ReversibleGate::toffoli(0, 1, 2).unwrap();
        assert_eq!(g.apply(&bits("110")).unwrap(), bits("111"));
        assert_eq!(g.apply(&bits("100")).unwrap(), bits("100"));
    }

    #[test]
    fn x_flips_unconditionally() {
        let g = ReversibleGate::x(0);
        assert_eq!(g.apply(&bits("011")).unwrap(), bits("111"));
    }

    #[test]
    fn gate_application_is_pure() {
        let g = ReversibleGate::cnot(0, 1).unwrap();
        let s = bits("10");
        let a = g.apply(&s).unwrap();
        let b = g.apply(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(s, bits("10"));
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let g = ReversibleGate::cnot(0, 5).unwrap();
        assert_eq!(
            g.apply(&bits("00")),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        );
    }

    #[test]
    fn gate_construction_rejects_bad_shapes() {
        assert_eq!(
            ReversibleGate::new(vec![1, 1], 0),
            Err(Error::DuplicateQubit {
                qubit: 1,
                context: "controls"
            })
        );
        assert_eq!(
            ReversibleGate::cnot(2, 2),
            Err(Error::TargetInControls { target: 2 })
        );
    }

    #[test]
    fn empty_layer_is_identity() {
        let layer = ClassicalLayer::identity();
        assert_eq!(layer.apply(&bits("0101")).unwrap(), bits("0101"));
        assert_eq!(layer.apply_inverse(&bits("1111")).unwrap(), bits("1111"));
    }

    #[test]
    fn cnot_layer() {
        let layer = ClassicalLayer::new(vec![ReversibleGate::cnot(0, 1).unwrap()]);
        assert_eq!(layer.apply(&bits("10")).unwrap(), bits("11"));
        assert_eq!(layer.apply_inverse(&bits("11")).unwrap(), bits("10"));
    }

    #[test]
    fn gates_apply_in_list_order() {
        // X on qubit 2, then CNOT with control 2 and target 0.
        let layer = ClassicalLayer::new(vec![
            ReversibleGate::x(2),
            ReversibleGate::cnot(2, 0).unwrap(),
        ]);
        assert_eq!(layer.apply(&bits("000")).unwrap(), bits("101"));
    }

    #[test]
    fn layer_is_a_bijection_on_all_inputs() {
        // Truth-table check over all 8 inputs of the layer above.
        let layer = ClassicalLayer::new(vec![
            ReversibleGate::x(2),
            ReversibleGate::cnot(2, 0).unwrap(),
        ]);
        let mut seen = [false; 8];
        for i in 0..8u64 {
            let out = layer.apply(&BitString::from_index(i, 3)).unwrap();
            let idx = out.to_index() as usize;
            assert!(!seen[idx], "output {out} repeated");
            seen[idx] = true;
        }
        assert!(seen.iter().all(|&v| v));
    }

    #[test]
    fn compiled_form_matches_bitstring_form() {
        let layer = ClassicalLayer::new(vec![
            ReversibleGate::x(2),
            ReversibleGate::cnot(2, 0).unwrap(),
            ReversibleGate::toffoli(0, 2, 1).unwrap(),
        ]);
        let compiled = layer.compile(3);
        for i in 0..8u64 {
            let s = BitString::from_index(i, 3);
            assert_eq!(
                apply_compiled(&compiled, i),
                layer.apply(&s).unwrap().to_index()
            );
        }
    }
}
