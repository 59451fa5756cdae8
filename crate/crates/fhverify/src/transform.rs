//! Basis-changing transform layers with classically samplable structure.
//!
//! A transform layer acts on a support set of qubits and leaves the rest
//! alone. From a basis state it reaches exactly the coset of states agreeing
//! with the input outside the support, every transition amplitude in the
//! coset has magnitude `2^(-m/2)` for support size `m`, and the transition
//! phase is an exact rational multiple of 2π. Those three facts are what the
//! verifier samples against, so phases are kept as exact rationals and only
//! converted to floating point once per sampled path.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// The transform families provided: a layer of Hadamards, or a (possibly
/// inverse) quantum Fourier transform over an ordered register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    HadamardLayer,
    QftRegister,
    InverseQftRegister,
}

/// An exact phase angle `2π · num / 2^log2_den`, reduced so that `num` is
/// odd or zero. Power-of-two denominators mean phases add without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase {
    num: u64,
    log2_den: u32,
}

impl Phase {
    pub const ZERO: Phase = Phase {
        num: 0,
        log2_den: 0,
    };

    /// Builds `2π · num / 2^log2_den`, reducing to canonical form.
    pub fn new(mut num: u64, mut log2_den: u32) -> Self {
        assert!(log2_den <= 64);
        // reduce modulo one full turn
        if log2_den < 64 {
            num &= (1u64 << log2_den) - 1;
        }
        while log2_den > 0 && num & 1 == 0 {
            num >>= 1;
            log2_den -= 1;
        }
        if num == 0 {
            log2_den = 0;
        }
        Self { num, log2_den }
    }

    /// A half turn: the factor −1.
    pub fn half_turn() -> Self {
        Phase::new(1, 1)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    /// Sum of two phases, modulo a full turn. Exact.
    pub fn add(&self, other: &Phase) -> Phase {
        let d = self.log2_den.max(other.log2_den);
        let lift = |p: &Phase| {
            if p.num == 0 {
                0u64
            } else {
                p.num << (d - p.log2_den) // shift < 64 because num != 0 forces log2_den >= 1
            }
        };
        let sum = lift(self).wrapping_add(lift(other));
        Phase::new(sum, d)
    }

    /// The negated angle, modulo a full turn. Exact.
    pub fn negated(&self) -> Phase {
        if self.num == 0 {
            Phase::ZERO
        } else if self.log2_den == 64 {
            Phase::new(self.num.wrapping_neg(), 64)
        } else {
            Phase::new((1u64 << self.log2_den) - self.num, self.log2_den)
        }
    }

    /// Angle in radians, in `[0, 2π)`.
    pub fn radians(&self) -> f64 {
        std::f64::consts::TAU * self.num as f64 / 2f64.powi(self.log2_den as i32)
    }

    /// `e^{iφ}`. Quarter-turn multiples come out exactly ±1 or ±i, so
    /// Hadamard phases are exactly ±1.
    pub fn to_complex(&self) -> Complex64 {
        match (self.num, self.log2_den) {
            (0, 0) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, self.radians()),
        }
    }
}

/// The set of basis states a transform can reach from a given input: all
/// strings agreeing with the base outside the support. Holds `2^m` members
/// without ever materializing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    base: BitString,
    support: Vec<usize>,
    support_mask: u64,
}

impl Coset {
    fn new(base: BitString, support: &[usize]) -> Self {
        let n = base.len();
        let support_mask = support
            .iter()
            .fold(0u64, |acc, &q| acc | (1u64 << (n - 1 - q)));
        Self {
            base,
            support: support.to_vec(),
            support_mask,
        }
    }

    pub fn base(&self) -> &BitString {
        &self.base
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Support cardinality m.
    pub fn m(&self) -> usize {
        self.support.len()
    }

    /// Number of members, `2^m`.
    pub fn size(&self) -> u128 {
        1u128 << self.m()
    }

    /// Membership test: agrees with the base outside the support.
    pub fn contains(&self, s: &BitString) -> bool {
        s.len() == self.base.len()
            && (s.to_index() ^ self.base.to_index()) & !self.support_mask == 0
    }

    /// The member whose support-restricted reading is `index`, with the
    /// first listed support qubit most significant.
    pub fn member(&self, index: u64) -> BitString {
        let m = self.m();
        debug_assert!(m == 64 || index < (1u64 << m));
        let mut out = self.base;
        for (l, &q) in self.support.iter().enumerate() {
            out = out.with_bit(q, (index >> (m - 1 - l)) & 1 != 0);
        }
        out
    }

    /// Uniform sample over the coset: each member has probability `2^(-m)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        self.member(uniform_bits(rng, self.m()))
    }

    /// Iterates all members in support-reading order. Intended for desk-scale
    /// enumeration; requires m ≤ 32.
    pub fn iter(&self) -> impl Iterator<Item = BitString> + '_ {
        assert!(self.m() <= 32, "coset enumeration limited to m <= 32");
        (0..(1u64 << self.m())).map(move |i| self.member(i))
    }
}

/// Draws `m` uniform bits from the stream (unbiased: the range is a power of
/// two, so masking suffices).
pub(crate) fn uniform_bits<R: Rng + ?Sized>(rng: &mut R, m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        rng.next_u64() & (u64::MAX >> (64 - m))
    }
}

/// A basis-changing layer: kind plus ordered support.
///
/// Support order is significant for QFT registers: the first listed qubit is
/// the most significant bit of the register reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformLayer {
    kind: TransformKind,
    support: Vec<usize>,
}

impl TransformLayer {
    pub fn new(kind: TransformKind, support: Vec<usize>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateQubit {
                    qubit: pair[0],
                    context: "support",
                });
            }
        }
        Ok(Self { kind, support })
    }

    pub fn hadamard(support: Vec<usize>) -> Result<Self> {
        Self::new(TransformKind::HadamardLayer, support)
    }

    pub fn qft(support: Vec<usize>) -> Result<Self> {
        Self::new(TransformKind::QftRegister, support)
    }

    pub fn inverse_qft(support: Vec<usize>) -> Result<Self> {
        Self::new(TransformKind::InverseQftRegister, support)
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Support cardinality m.
    pub fn m(&self) -> usize {
        self.support.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some(&index) = self.support.iter().find(|&&q| q >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(())
    }

    /// Magnitude of every in-coset transition amplitude: `2^(-m/2)`.
    pub fn amplitude_magnitude(&self) -> f64 {
        2f64.powi(-(self.m() as i32)).sqrt()
    }

    /// The adjoint transform: Hadamard layers are self-adjoint, QFT and
    /// inverse QFT swap. Support (and its order) is preserved.
    pub fn adjoint(&self) -> TransformLayer {
        let kind = match self.kind {
            TransformKind::HadamardLayer => TransformKind::HadamardLayer,
            TransformKind::QftRegister => TransformKind::InverseQftRegister,
            TransformKind::InverseQftRegister => TransformKind::QftRegister,
        };
        Self {
            kind,
            support: self.support.clone(),
        }
    }

    /// The coset of states reachable from `s`.
    pub fn coset_of(&self, s: &BitString) -> Coset {
        Coset::new(*s, &self.support)
    }

    /// Support-restricted reading of `s`, first listed support qubit most
    /// significant.
    fn register_reading(&self, s: &BitString) -> u64 {
        self.support
            .iter()
            .fold(0u64, |acc, &q| (acc << 1) | s.get(q) as u64)
    }

    /// Transition phase for an in-coset pair, without the membership check.
    pub(crate) fn phase_in_coset(&self, s_in: &BitString, s_out: &BitString) -> Phase {
        match self.kind {
            TransformKind::HadamardLayer => {
                // (−1)^{⟨s_in, s_out⟩ restricted to the support}
                let parity =
                    (self.register_reading(s_in) & self.register_reading(s_out)).count_ones() & 1;
                Phase::new(parity as u64, 1)
            }
            TransformKind::QftRegister => {
                let m = self.m() as u32;
                let j = self.register_reading(s_in) as u128;
                let k = self.register_reading(s_out) as u128;
                let num = if m == 64 {
                    (j * k) as u64
                } else {
                    ((j * k) & ((1u128 << m) - 1)) as u64
                };
                Phase::new(num, m)
            }
            TransformKind::InverseQftRegister => {
                let forward = Self {
                    kind: TransformKind::QftRegister,
                    support: self.support.clone(),
                };
                forward.phase_in_coset(s_in, s_out).negated()
            }
        }
    }

    /// Transition phase of the `s_in → s_out` amplitude.
    ///
    /// Errors if `s_out` is outside the reachable coset (the amplitude is
    /// then zero and has no phase); callers needing the zero/nonzero
    /// indicator test membership explicitly.
    pub fn phase_of(&self, s_in: &BitString, s_out: &BitString) -> Result<Phase> {
        if !self.coset_of(s_in).contains(s_out) {
            return Err(Error::OutsideCoset {
                base: s_in.to_string(),
                outcome: s_out.to_string(),
            });
        }
        Ok(self.phase_in_coset(s_in, s_out))
    }

    /// Full transition amplitude `⟨s_out| T |s_in⟩`, zero outside the coset.
    pub fn entry(&self, s_in: &BitString, s_out: &BitString) -> Complex64 {
        if self.coset_of(s_in).contains(s_out) {
            self.phase_in_coset(s_in, s_out).to_complex() * self.amplitude_magnitude()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// Free-function form of [`TransformLayer::coset_of`].
pub fn coset_of(f: &TransformLayer, s: &BitString) -> Coset {
    f.coset_of(s)
}

/// Uniform sample from the coset reachable from `s`.
pub fn sample_coset<R: Rng + ?Sized>(f: &TransformLayer, s: &BitString, rng: &mut R) -> BitString {
    f.coset_of(s).sample(rng)
}

/// Free-function form of [`TransformLayer::phase_of`].
pub fn phase_of(f: &TransformLayer, s_in: &BitString, s_out: &BitString) -> Result<Phase> {
    f.phase_of(s_in, s_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn bits(text: &str) -> BitString {
        text.parse().unwrap()
    }

    /// Dense matrix oracle, independent of `phase_in_coset`: the m-qubit
    /// kernel of the transform in register-reading coordinates.
    fn dense_kernel(kind: TransformKind, m: usize) -> Vec<Vec<Complex64>> {
        let dim = 1usize << m;
        let mut k = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        match kind {
            TransformKind::HadamardLayer => {
                // Kronecker power of the 2x2 Hadamard matrix.
                for (row, row_slot) in k.iter_mut().enumerate() {
                    for (col, slot) in row_slot.iter_mut().enumerate() {
                        let sign = if (row & col).count_ones() & 1 == 1 {
                            -1.0
                        } else {
                            1.0
                        };
                        *slot = Complex64::new(sign / (dim as f64).sqrt(), 0.0);
                    }
                }
            }
            TransformKind::QftRegister | TransformKind::InverseQftRegister => {
                let sign = if kind == TransformKind::QftRegister {
                    1.0
                } else {
                    -1.0
                };
                for (row, row_slot) in k.iter_mut().enumerate() {
                    for (col, slot) in row_slot.iter_mut().enumerate() {
                        let angle =
                            sign * std::f64::consts::TAU * (row as f64) * (col as f64) / dim as f64;
                        *slot = Complex64::from_polar(1.0 / (dim as f64).sqrt(), angle);
                    }
                }
            }
        }
        k
    }

    #[test]
    fn coset_of_single_hadamard() {
        let f = TransformLayer::hadamard(vec![0]).unwrap();
        let c = f.coset_of(&bits("00"));
        assert_eq!(c.size(), 2);
        assert!(c.contains(&bits("00")));
        assert!(c.contains(&bits("10")));
        assert!(!c.contains(&bits("01")));
    }

    #[test]
    fn full_support_coset_is_everything() {
        let f = TransformLayer::hadamard(vec![0, 1]).unwrap();
        let c = f.coset_of(&bits("10"));
        let members: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        assert_eq!(members, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn qft_coset_fixes_non_support_bits() {
        let f = TransformLayer::qft(vec![1, 2]).unwrap();
        let c = f.coset_of(&bits("011"));
        assert_eq!(c.size(), 4);
        for member in c.iter() {
            assert!(!member.get(0), "bit 0 must stay fixed at 0, got {member}");
        }
        assert!(c.contains(&bits("001")));
        assert!(!c.contains(&bits("101")));
    }

    #[test]
    fn cosets_partition_the_string_space() {
        let f = TransformLayer::qft(vec![0, 2]).unwrap();
        let n = 4;
        let mut seen = HashMap::new();
        for i in 0..(1u64 << n) {
            let s = BitString::from_index(i, n);
            let rep = f.coset_of(&s).member(0); // canonical representative
            *seen.entry(rep).or_insert(0usize) += 1;
        }
        assert_eq!(seen.len(), 1 << (n - f.m()));
        assert!(seen.values().all(|&count| count == 1 << f.m()));
    }

    #[test]
    fn empty_support_rejected() {
        assert_eq!(TransformLayer::hadamard(vec![]), Err(Error::EmptySupport));
    }

    #[test]
    fn duplicate_support_rejected() {
        assert_eq!(
            TransformLayer::hadamard(vec![0, 0]),
            Err(Error::DuplicateQubit {
                qubit: 0,
                context: "support"
            })
        );
    }

    #[test]
    fn hadamard_phases_match_matrix() {
        let f = TransformLayer::hadamard(vec![0]).unwrap();
        let one = bits("1");
        let zero = bits("0");
        assert_eq!(f.phase_of(&one, &one).unwrap(), Phase::half_turn());
        assert_eq!(f.phase_of(&zero, &one).unwrap(), Phase::ZERO);
        assert_eq!(
            f.phase_of(&one, &one).unwrap().to_complex(),
            Complex64::new(-1.0, 0.0)
        );
    }

    #[test]
    fn qft_phase_example() {
        let f = TransformLayer::qft(vec![0, 1]).unwrap();
        // j = 01 reads 1, k = 11 reads 3: angle 2π·3/4
        let p = f.phase_of(&bits("01"), &bits("11")).unwrap();
        assert_eq!(p, Phase::new(3, 2));
        assert!((p.radians() - std::f64::consts::TAU * 3.0 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn phase_outside_coset_is_an_error() {
        let f = TransformLayer::hadamard(vec![0]).unwrap();
        assert!(matches!(
            f.phase_of(&bits("00"), &bits("01")),
            Err(Error::OutsideCoset { .. })
        ));
    }

    #[test]
    fn amplitude_magnitudes() {
        let h1 = TransformLayer::hadamard(vec![0]).unwrap();
        let h4 = TransformLayer::hadamard(vec![0, 1, 2, 3]).unwrap();
        let q3 = TransformLayer::qft(vec![0, 1, 2]).unwrap();
        assert!((h1.amplitude_magnitude() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((h4.amplitude_magnitude() - 0.25).abs() < 1e-15);
        assert!((q3.amplitude_magnitude() - 2f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn entries_match_dense_kernel_oracle() {
        // All (s_in, s_out) pairs for every kind, m up to 6.
        for kind in [
            TransformKind::HadamardLayer,
            TransformKind::QftRegister,
            TransformKind::InverseQftRegister,
        ] {
            for m in 1..=6usize {
                let support: Vec<usize> = (0..m).collect();
                let f = TransformLayer::new(kind, support).unwrap();
                let kernel = dense_kernel(kind, m);
                for j in 0..(1u64 << m) {
                    let s_in = BitString::from_index(j, m);
                    for k in 0..(1u64 << m) {
                        let s_out = BitString::from_index(k, m);
                        let got = f.entry(&s_in, &s_out);
                        let want = kernel[k as usize][j as usize];
                        assert!(
                            (got - want).norm() < 1e-12,
                            "kind {kind:?} m={m} j={j} k={k}: got {got}, want {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_is_unitary() {
        // K†K = I within 1e-10 for each kind and m ≤ 6, K assembled from
        // amplitude_magnitude and phase_of.
        for kind in [
            TransformKind::HadamardLayer,
            TransformKind::QftRegister,
            TransformKind::InverseQftRegister,
        ] {
            for m in 1..=6usize {
                let support: Vec<usize> = (0..m).collect();
                let f = TransformLayer::new(kind, support).unwrap();
                let dim = 1usize << m;
                let mut k = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
                for (col, col_slot) in k.iter_mut().enumerate() {
                    let s_in = BitString::from_index(col as u64, m);
                    for (row, slot) in col_slot.iter_mut().enumerate() {
                        let s_out = BitString::from_index(row as u64, m);
                        *slot = f.entry(&s_in, &s_out);
                    }
                }
                // k[col][row] = ⟨row|F|col⟩; check Σ_r conj(k[c1][r])·k[c2][r] = δ
                for c1 in 0..dim {
                    for c2 in 0..dim {
                        let dot: Complex64 = (0..dim).map(|r| k[c1][r].conj() * k[c2][r]).sum();
                        let want = if c1 == c2 { 1.0 } else { 0.0 };
                        assert!(
                            (dot - want).norm() < 1e-10,
                            "kind {kind:?} m={m} columns {c1},{c2} not orthonormal: {dot}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_swaps_qft_direction_and_negates_phases() {
        let h = TransformLayer::hadamard(vec![0, 2]).unwrap();
        assert_eq!(h.adjoint(), h);
        let q = TransformLayer::qft(vec![0, 1]).unwrap();
        assert_eq!(
            q.adjoint(),
            TransformLayer::inverse_qft(vec![0, 1]).unwrap()
        );

        // phase_of(adjoint(f), s_out, s_in) = −phase_of(f, s_in, s_out),
        // exhaustively for m ≤ 5.
        for kind in [
            TransformKind::HadamardLayer,
            TransformKind::QftRegister,
            TransformKind::InverseQftRegister,
        ] {
            for m in 1..=5usize {
                let f = TransformLayer::new(kind, (0..m).collect()).unwrap();
                let adj = f.adjoint();
                for j in 0..(1u64 << m) {
                    let a = BitString::from_index(j, m);
                    for k in 0..(1u64 << m) {
                        let b = BitString::from_index(k, m);
                        assert_eq!(
                            adj.phase_of(&b, &a).unwrap(),
                            f.phase_of(&a, &b).unwrap().negated()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sampling_single_qubit_is_balanced() {
        let f = TransformLayer::hadamard(vec![0]).unwrap();
        let base = bits("0");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let total = 100_000usize;
        let ones = (0..total)
            .filter(|_| sample_coset(&f, &base, &mut rng).get(0))
            .count();
        let frequency = ones as f64 / total as f64;
        assert!((frequency - 0.5).abs() < 0.01, "frequency {frequency}");
    }

    #[test]
    fn sampling_uniformity_chi_square() {
        // m = 4 coset, 2^16 samples; chi-square against uniform with 15
        // degrees of freedom. 37.697 is the 0.999 quantile.
        let f = TransformLayer::hadamard(vec![0, 1, 2, 3]).unwrap();
        let base = bits("0000");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = 1usize << 16;
        let mut counts = [0u64; 16];
        for _ in 0..samples {
            counts[f.coset_of(&base).sample(&mut rng).to_index() as usize] += 1;
        }
        let expected = samples as f64 / 16.0;
        let statistic: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(
            statistic < 37.697,
            "chi-square statistic {statistic} too large"
        );
    }

    #[test]
    fn phase_arithmetic_is_exact() {
        let a = Phase::new(3, 3); // 3/8 turn
        let b = Phase::new(3, 2); // 3/4 turn
        assert_eq!(a.add(&b), Phase::new(1, 3)); // 9/8 ≡ 1/8 turn
        assert_eq!(a.add(&a.negated()), Phase::ZERO);
        assert_eq!(Phase::new(4, 3), Phase::new(1, 1)); // reduction 4/8 = 1/2
    }
}
