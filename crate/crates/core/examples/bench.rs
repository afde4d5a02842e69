// Generating instances, writing them to disk and running a bench suite.
//
// Run with `cargo run --example bench`.

use fgc::harness::{run_bench, BenchOutcome, SolveOptions, Suite};
use fgc::io::{gen_random, read_instance, write_instance, GenParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random(&GenParams {
        n: 6,
        m: 14,
        safe_fraction: 0.5,
        cost_range: (1.0, 10.0),
        p: 1,
        q: 1,
        seed: 7,
    })?;
    let path = std::env::temp_dir().join(format!("fgc-example-{}.json", std::process::id()));
    write_instance(&path, &inst)?;
    assert_eq!(read_instance(&path)?, inst);
    std::fs::remove_file(&path)?;

    let suite = Suite::parse("n=4..6 m=10 p=1..2 q=1 seed=0..1 exact=1")?;
    for line in run_bench(&suite, &SolveOptions::default(), false) {
        match line.outcome {
            BenchOutcome::Report(r) => println!(
                "item {:>2}: n={} m={} p={} lp {:.3} opt {:.3} cost {:.3}",
                line.item,
                r.n,
                r.m,
                r.p,
                r.lp_value,
                r.exact_cost.unwrap_or(f64::NAN),
                r.solution_cost
            ),
            BenchOutcome::Failed { error, .. } => println!("item {:>2}: {error}", line.item),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
