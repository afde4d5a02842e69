// Checking an edge selection, with a violated cut as the witness.
//
// Run with `cargo run --example feasibility`.

use fgc::io::{parse_edge_list, parse_instance};
use fgc::model::{is_feasible, is_feasible_direct};

const INSTANCE: &str = include_str!("data/two_vertex.fgc");

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(INSTANCE)?;
    for list in ["s1", "u1", "u1,u2"] {
        let f = parse_edge_list(&inst, list)?;
        let verdict = is_feasible(&inst, &f)?;
        assert_eq!(verdict.feasible, is_feasible_direct(&inst, &f)?.feasible);
        match &verdict.witness {
            None => println!("{list:>6}: feasible, cost {}", inst.cost_of(&f)),
            Some(cut) => println!("{list:>6}: violated cut {:?}", cut.vertices()),
        }
    }
    assert!(!is_feasible(&inst, &parse_edge_list(&inst, "u1")?)?.feasible);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
