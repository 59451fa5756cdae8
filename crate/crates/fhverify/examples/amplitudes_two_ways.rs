//! The same outcome amplitude from two independent oracles: dense
//! state-vector evolution and exact path-sum enumeration.
//!
//! ```bash
//! cargo run --release --example amplitudes_two_ways
//! ```

use fhverify::{
    bernstein_vazirani, exact_amplitude_dense, exact_amplitude_pathsum, parse_circuit, BitString,
};

const MIXED_TRANSFORMS: &str = "\
qubits 4
input 0110
layer classical
  x 1
end
layer qft 2 0 3
layer classical
  toffoli 0 1 2
  cnot 3 1
end
layer hadamard 1 2
";

fn main() {
    let bv = bernstein_vazirani(&"10110".parse().unwrap());
    let witness: BitString = "101101".parse().unwrap();
    let dense = exact_amplitude_dense(&bv, &witness).unwrap();
    let pathsum = exact_amplitude_pathsum(&bv, &witness).unwrap();
    println!("deterministic circuit, its witness outcome:");
    println!("  dense    {:+.12} {:+.12}i", dense.re, dense.im);
    println!("  path sum {:+.12} {:+.12}i", pathsum.re, pathsum.im);
    println!("  gap      {:.3e}\n", (dense - pathsum).norm());

    let circuit = parse_circuit(MIXED_TRANSFORMS).unwrap();
    println!("mixed QFT/Hadamard circuit, all 16 outcomes:");
    let mut worst: f64 = 0.0;
    for idx in 0..16u64 {
        let s = BitString::from_index(idx, 4);
        let dense = exact_amplitude_dense(&circuit, &s).unwrap();
        let pathsum = exact_amplitude_pathsum(&circuit, &s).unwrap();
        let gap = (dense - pathsum).norm();
        worst = worst.max(gap);
        println!(
            "  {s}  P = {:.6}   dense {:+.6} {:+.6}i   path sum {:+.6} {:+.6}i",
            dense.norm_sqr(),
            dense.re,
            dense.im,
            pathsum.re,
            pathsum.im
        );
    }
    println!("worst dense/path-sum gap: {worst:.3e}");
}
