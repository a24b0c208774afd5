// Graphviz output for each state of the construction. Set `DOT_DIR` to write
// the files instead of printing them.

use std::error::Error;
use std::path::PathBuf;

use quiver_bipartite::{bipartitize, emit_dot, Quiver};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = Quiver::from_arrows(4, &[(1, 2), (2, 3), (1, 3), (3, 4)])?;
    let (trace, _) = bipartitize(&q)?;
    let stages = [("input", &trace.input), ("final", &trace.final_quiver)];
    let dir = std::env::var_os("DOT_DIR").map(PathBuf::from);
    for (name, quiver) in stages {
        let dot = emit_dot(quiver);
        match &dir {
            Some(d) => std::fs::write(d.join(format!("{name}.dot")), dot)?,
            None => println!("// {name}\n{dot}"),
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
