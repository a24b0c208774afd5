//! Test corpora: seeded random acyclic quivers and exhaustive labeled
//! enumeration of small ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::QuiverError;
use crate::quiver::{Quiver, VertexId};

/// Largest vertex count accepted by the exhaustive enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub edge_probability: f64,
    pub max_multiplicity: u32,
    pub seed: u64,
}

/// Shuffles the vertices into a random topological order, then includes each
/// forward pair with probability `edge_probability` and a multiplicity drawn
/// uniformly from `1..=max_multiplicity`.
pub fn random_acyclic(spec: &GenSpec) -> Quiver {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut order: Vec<usize> = (0..spec.n).collect();
    order.shuffle(&mut rng);
    let p = spec.edge_probability.clamp(0.0, 1.0);
    let max_mult = spec.max_multiplicity.max(1);
    let mut q = Quiver::new(spec.n);
    for a in 0..spec.n {
        for b in a + 1..spec.n {
            if rng.gen_bool(p) {
                let m = rng.gen_range(1..=max_mult);
                q.add_arrows(VertexId(order[a]), VertexId(order[b]), m as i64).expect("distinct vertices");
            }
        }
    }
    q
}

fn guard(n: usize) -> Result<(), QuiverError> {
    if n > MAX_ENUMERATION_ORDER {
        Err(QuiverError::TooLarge { what: "exhaustive enumeration", size: n, limit: MAX_ENUMERATION_ORDER })
    } else {
        Ok(())
    }
}

/// Every labeled acyclic quiver on exactly `n` vertices with entries in
/// `[-max_mult, max_mult]`, in a fixed order.
pub fn enumerate_exact(n: usize, max_mult: u32) -> Result<impl Iterator<Item = Quiver>, QuiverError> {
    guard(n)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let base = 2 * max_mult as u64 + 1;
    let total = base.pow(pairs.len() as u32);
    let m = max_mult as i64;
    Ok((0..total).filter_map(move |mut code| {
        let mut q = Quiver::new(n);
        for &(i, j) in &pairs {
            let entry = (code % base) as i64 - m;
            code /= base;
            if entry != 0 {
                q.add_arrows(VertexId(i), VertexId(j), entry).expect("distinct vertices");
            }
        }
        q.is_acyclic().then_some(q)
    }))
}

/// Every labeled acyclic quiver with `1..=max_n` vertices, by increasing order.
pub fn enumerate_small(max_n: usize, max_mult: u32) -> Result<impl Iterator<Item = Quiver>, QuiverError> {
    guard(max_n)?;
    let per_order = (1..=max_n).map(move |n| enumerate_exact(n, max_mult).expect("guarded"));
    Ok(per_order.flatten())
}
