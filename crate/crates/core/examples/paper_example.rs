// The three-vertex example, step by step: frame the arrow 1->2 with a new
// vertex, mutate there, then mutate at the sources.

use std::error::Error;

use quiver_bipartite::{bipartitize, certify, path_profile, MutationEvent, Quiver};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = Quiver::from_arrows(3, &[(1, 2), (1, 3), (3, 2)])?;
    let profile = path_profile(&q)?;
    println!("input {q}, longest path {}", profile.ell);

    let (trace, report) = bipartitize(&q)?;
    let mut state = q.clone();
    for event in &trace.events {
        state = match event {
            MutationEvent::InsertVertex { vertex, head_of_alpha, tail_of_alpha } => {
                let alpha = quiver_bipartite::Arrow { tail: *tail_of_alpha, head: *head_of_alpha, multiplicity: 1 };
                let (framed, v) = state.insert_framed_vertex(&alpha)?;
                assert_eq!(v, *vertex);
                println!("insert {}: {framed}", framed.label(v));
                framed
            }
            MutationEvent::MutateAt(v) => {
                let next = state.mutate(*v)?;
                println!("mutate at {}: {next}", next.label(*v));
                next
            }
            MutationEvent::MutateSources(vs) => {
                let next = state.mutate_sequence(vs)?;
                let names: Vec<&str> = vs.iter().map(|v| state.label(*v)).collect();
                println!("mutate at sources {names:?}: {next}");
                next
            }
        };
    }
    assert_eq!(state, trace.final_quiver);
    println!("{report}");

    let cert = certify(&q, &trace);
    println!("ambient quiver {}", cert.ambient);
    println!("certificate accepted: {}", cert.accepted());
    if !cert.accepted() {
        return Err("certificate rejected".into());
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
