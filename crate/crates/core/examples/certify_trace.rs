// Serialize a trace, read it back, certify it, then tamper with it.

use std::error::Error;

use quiver_bipartite::{bipartitize, certify, parse_trace, random_acyclic, serialize_trace, GenSpec, Quiver};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = random_acyclic(&GenSpec { n: 6, edge_probability: 0.5, max_multiplicity: 2, seed: 7 });
    println!("input {q}");
    let (trace, report) = bipartitize(&q)?;
    println!("{report}, {} events", trace.events.len());

    let text = serialize_trace(&trace);
    let reread = parse_trace(&text)?;
    let cert = certify(&q, &reread);
    println!(
        "bipartite_ok={} full_subquiver_ok={} mutation_equivalent_ok={}",
        cert.bipartite_ok, cert.full_subquiver_ok, cert.mutation_equivalent_ok
    );

    let mut tampered = reread.clone();
    let n = tampered.final_quiver.vertex_count();
    tampered.final_quiver = Quiver::new(n);
    let bad = certify(&q, &tampered);
    println!("tampered trace accepted: {}", bad.accepted());
    for note in &bad.notes {
        println!("  {note}");
    }
    if !cert.accepted() || bad.accepted() {
        return Err("unexpected verdict".into());
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
