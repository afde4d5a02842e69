// Knapsack-cover rows and the separation oracle.
//
// One safe and three unsafe parallel edges with `p = 2`, `q = 4`: the cut
// carries capacity exactly `p(p+q)` at the all-ones point, yet two
// knapsack-cover rows are violated.
//
// Run with `cargo run --example separation`.

use fgc::graph::CutSearch;
use fgc::lp::{constraint_row, separate, FractionalSolution, DEFAULT_EPS};
use fgc::model::EdgeKind::{Safe, Unsafe};
use fgc::{Cut, FgcInstance, Multigraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // edges 4..=6 only make the full edge set feasible; they stay at 0
    let kinds = vec![Safe, Unsafe, Unsafe, Unsafe, Safe, Unsafe, Unsafe];
    let inst = FgcInstance::new(
        Multigraph::new(2, vec![(0, 1); 7])?,
        kinds,
        vec![1.0; 7],
        2,
        4,
    )?;
    let x = FractionalSolution::new(vec![1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0])?;
    let cut = Cut::new(2, [1])?;

    for j in [vec![], vec![0], vec![1, 2, 3]] {
        let row = constraint_row(&inst, &cut, &j)?;
        println!("J = {j:?}: lhs {} vs rhs {}", row.lhs(&x), row.rhs);
    }

    let row = separate(&inst, &x, DEFAULT_EPS, &CutSearch::default())?.expect("x is cut off");
    println!(
        "most violated: J = {:?}, violation {}",
        row.j_edges,
        row.violation(&x)
    );
    assert_eq!(row.violation(&x), 3.0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
