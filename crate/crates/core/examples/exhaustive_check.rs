// Run and certify every labeled acyclic quiver on at most three vertices.

use std::error::Error;

use quiver_bipartite::{bipartitize, certify, enumerate_small};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (mut total, mut accepted, mut max_inserted) = (0, 0, 0);
    for q in enumerate_small(3, 2)? {
        let (trace, report) = bipartitize(&q)?;
        total += 1;
        if certify(&q, &trace).accepted() {
            accepted += 1;
        }
        max_inserted = max_inserted.max(report.inserted_vertices);
    }
    println!("{accepted}/{total} certified, at most {max_inserted} inserted vertices");
    if accepted != total {
        return Err("some quiver failed".into());
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
