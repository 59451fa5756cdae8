//! Soundness in action: dishonest provers claiming wrong outcomes get
//! rejected across a sweep of seeds.
//!
//! ```bash
//! cargo run --release --example reject_dishonest
//! ```

use fhverify::{bernstein_vazirani, dishonest_prove, verify, DishonestStrategy, PromiseParams};

fn main() {
    let circuit = bernstein_vazirani(&"110101".parse().unwrap());
    let params = PromiseParams::new(0.9, 0.01, 0.99).unwrap();

    let strategies = [
        (
            "fixed all-zero claim",
            DishonestStrategy::Fixed("0000000".parse().unwrap()),
        ),
        ("uniformly random claim", DishonestStrategy::UniformRandom),
        (
            "honest outcome, one bit flipped",
            DishonestStrategy::BitFlipOfHonest,
        ),
    ];

    let seeds = 100u64;
    for (label, strategy) in &strategies {
        let mut rejected = 0;
        for seed in 0..seeds {
            let claim = dishonest_prove(&circuit, strategy, seed).unwrap();
            let report = verify(&circuit, &claim, &params, seed).unwrap();
            if !report.accepted() {
                rejected += 1;
            }
        }
        println!("{label:32}  rejected {rejected}/{seeds}");
    }

    // The honest witness, for contrast, is accepted.
    let honest = fhverify::find_witness(&circuit, 1, 0).unwrap();
    let report = verify(&circuit, &honest, &params, 0).unwrap();
    println!("honest witness {honest:32} accepted: {}", report.accepted());
}
