// Iteration counts over seeded random acyclic quivers.

use std::collections::BTreeMap;
use std::error::Error;

use quiver_bipartite::{bipartitize, random_acyclic, GenSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut by_ell: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for seed in 0..200 {
        let q = random_acyclic(&GenSpec { n: 8, edge_probability: 0.4, max_multiplicity: 3, seed });
        let (trace, report) = bipartitize(&q)?;
        let e = by_ell.entry(trace.ell).or_default();
        e.0 += 1;
        e.1 = e.1.max(report.step1_iterations);
        e.2 = e.2.max(report.step2_iterations);
    }
    println!("ell  runs  max_step1  max_step2");
    for (ell, (runs, s1, s2)) in by_ell {
        println!("{ell:>3}  {runs:>4}  {s1:>9}  {s2:>9}");
        if s2 > ell.saturating_sub(1) {
            return Err(format!("ell {ell}: {s2} source rounds").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
