// All cuts below a capacity threshold, by exhaustive scan and by repeated
// random contraction, plus exact near-minimum cut counts.
//
// Run with `cargo run --example near_min_cuts`.

use fgc::exact::count_cuts_at_most;
use fgc::graph::{enumerate_cuts_below, EnumerationLimits, EnumerationMode};
use fgc::{Capacities, Multigraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let g = Multigraph::cycle(n)?;
    let caps = Capacities::uniform(n, 1.0)?;
    let limits = EnumerationLimits::default();

    // every pair of cycle edges is a minimum cut of capacity 2
    let exhaustive = enumerate_cuts_below(&g, &caps, 3.0, EnumerationMode::Exhaustive, &limits)?;
    let contraction = EnumerationMode::Contraction {
        fail_prob: 1e-6,
        seed: 42,
    };
    let sampled = enumerate_cuts_below(&g, &caps, 3.0, contraction, &limits)?;
    println!(
        "{} cuts below 3 (contraction found {})",
        exhaustive.len(),
        sampled.len()
    );
    assert_eq!(exhaustive.len(), n * (n - 1) / 2);
    assert_eq!(sampled, exhaustive);

    for alpha in [1.0, 1.5, 2.0] {
        let count = count_cuts_at_most(&g, &caps, alpha)?;
        println!(
            "alpha {alpha}: {count} cuts, n^(2 alpha) = {}",
            (n as f64).powf(2.0 * alpha)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
