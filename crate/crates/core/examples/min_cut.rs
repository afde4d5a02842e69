// Minimum cut of a weighted multigraph.
//
// Run with `cargo run --example min_cut`.

use fgc::graph::min_cut;
use fgc::{Capacities, Multigraph};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    // two triangles joined by a light bridge 2-3
    let g = Multigraph::new(
        6,
        vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
    )?;
    let caps = Capacities::new(vec![3.0, 3.0, 3.0, 1.5, 3.0, 3.0, 3.0])?;
    let (cut, value) = min_cut(&g, &caps)?;
    println!("minimum cut {value} with side {:?}", cut.vertices());
    assert_eq!(value, 1.5);
    assert_eq!(cut.vertices(), vec![3, 4, 5]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
