// The cutting-plane LP, with and without knapsack-cover rows.
//
// Run with `cargo run --example relaxation`.

use fgc::lp::{solve_relaxation_with, RelaxationConfig, RowFamily};
use fgc::model::EdgeKind::{Safe, Unsafe};
use fgc::{FgcInstance, Multigraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // a cheap and an expensive safe edge, six unit unsafe edges, p = 2, q = 4
    let mut kinds = vec![Safe, Safe];
    kinds.extend([Unsafe; 6]);
    let mut costs = vec![1.0, 10.0];
    costs.extend([1.0; 6]);
    let inst = FgcInstance::new(Multigraph::new(2, vec![(0, 1); 8])?, kinds, costs, 2, 4)?;

    let mut values = Vec::new();
    for family in [RowFamily::CutCovering, RowFamily::KnapsackCover] {
        let cfg = RelaxationConfig {
            family,
            ..RelaxationConfig::default()
        };
        let r = solve_relaxation_with(&inst, &cfg)?;
        println!(
            "{family:?}: value {:.4} after {} rounds, x = {:?}",
            r.value,
            r.iterations,
            r.x.as_slice()
        );
        values.push(r.value);
    }
    assert!(values[1] > values[0] + 1e-3);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
