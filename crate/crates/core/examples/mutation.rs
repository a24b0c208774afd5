// Matrix mutation next to the arrow-level definition, and the involution.

use std::error::Error;

use quiver_bipartite::verify::{oracle_mutate, ArrowList};
use quiver_bipartite::{Quiver, VertexId};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = Quiver::from_arrows(3, &[(1, 2), (2, 3)])?;
    println!("q = {q}");
    println!("{:?}", q.matrix());

    let middle = VertexId(1);
    let m = q.mutate(middle)?;
    println!("mutate at 2: {m}");
    println!("{:?}", m.matrix());

    let by_arrows = oracle_mutate(&ArrowList::from_quiver(&q), middle.index()).to_quiver()?;
    println!("arrow-level mutation agrees: {}", by_arrows == m);

    let back = m.mutate(middle)?;
    println!("mutating again restores q: {}", back == q);

    // Parallel arrows compose multiplicatively.
    let double = Quiver::from_arrows(3, &[(1, 2), (1, 2), (2, 3), (2, 3), (2, 3)])?;
    println!("{double} at 2 -> {}", double.mutate(middle)?);
    if by_arrows != m || back != q {
        return Err("mutation mismatch".into());
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
