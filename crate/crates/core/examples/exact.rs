// Exact optimum by branch and bound, next to the LP bound.
//
// Run with `cargo run --example exact`.

use fgc::exact::exact_opt;
use fgc::io::parse_instance;
use fgc::lp::{solve_relaxation, DEFAULT_EPS};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [
        ("two_vertex", include_str!("data/two_vertex.fgc")),
        ("triangle_p1q0", include_str!("data/triangle_p1q0.fgc")),
    ] {
        let inst = parse_instance(text)?;
        let best = exact_opt(&inst)?;
        let lp = solve_relaxation(&inst, DEFAULT_EPS)?.value;
        println!(
            "{name}: opt {} with {:?}, lp {lp}, {} nodes",
            best.best_cost,
            best.best_selection.ids(),
            best.nodes_explored
        );
        assert!(lp <= best.best_cost + 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
