// Relaxation followed by randomized rounding.
//
// Run with `cargo run --example rounding`.

use fgc::io::{gen_random, GenParams};
use fgc::model::is_feasible;
use fgc::rounding::{solve, RoundingConfig};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random(&GenParams {
        n: 8,
        m: 18,
        safe_fraction: 0.5,
        cost_range: (1.0, 10.0),
        p: 2,
        q: 1,
        seed: 3,
    })?;
    for scale_constant in [100.0, 0.5] {
        let cfg = RoundingConfig {
            scale_constant,
            seed: 7,
            ..RoundingConfig::default()
        };
        let out = solve(&inst, &cfg)?;
        println!(
            "C = {scale_constant}: cost {:.3} vs lp {:.3} after {} attempt(s), {} edges forced",
            out.cost, out.lp_value, out.attempts_used, out.forced_set_size
        );
        assert!(is_feasible(&inst, &out.selection)?.feasible);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
