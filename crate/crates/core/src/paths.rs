//! Oriented-path statistics over the support digraph of an acyclic quiver.
//!
//! Path length is the number of arrows. Parallel arrows do not multiply
//! paths: a path is a vertex sequence along positive matrix entries.

use std::collections::BTreeSet;

use crate::error::QuiverError;
use crate::quiver::{Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathProfile {
    /// Longest oriented path length; 0 for arrowless quivers.
    pub ell: usize,
    /// Lengths of non-extendable paths with at least one arrow.
    pub maximal_lengths: BTreeSet<usize>,
    /// Arrows `(tail, head)` lying on at least one path of length `ell`.
    pub on_max_path: BTreeSet<(VertexId, VertexId)>,
}

/// Longest path ending at / starting from each vertex, in topological order.
struct Reach {
    order: Vec<VertexId>,
    into: Vec<usize>,
    from: Vec<usize>,
}

fn reach(q: &Quiver) -> Result<Reach, QuiverError> {
    let order = q.topological_order().ok_or(QuiverError::Cyclic)?;
    let n = q.vertex_count();
    let mut into = vec![0usize; n];
    for &v in &order {
        for w in q.successors(v) {
            into[w.0] = into[w.0].max(into[v.0] + 1);
        }
    }
    let mut from = vec![0usize; n];
    for &v in order.iter().rev() {
        for w in q.successors(v) {
            from[v.0] = from[v.0].max(from[w.0] + 1);
        }
    }
    Ok(Reach { order, into, from })
}

/// Length of the longest oriented path.
pub fn longest_path_length(q: &Quiver) -> Result<usize, QuiverError> {
    Ok(reach(q)?.into.into_iter().max().unwrap_or(0))
}

/// Longest path, the maximal-path length set and the arrow support of the
/// longest paths, by dynamic programming over a topological order.
pub fn path_profile(q: &Quiver) -> Result<PathProfile, QuiverError> {
    let Reach { order, into, from } = reach(q)?;
    let n = q.vertex_count();
    let ell = into.iter().copied().max().unwrap_or(0);

    let mut on_max_path = BTreeSet::new();
    for a in q.arrows() {
        if into[a.tail.0] + 1 + from[a.head.0] == ell {
            on_max_path.insert((a.tail, a.head));
        }
    }

    // to_sink[v][len]: some path from v to a sink has `len` arrows
    let mut to_sink = vec![vec![false; n]; n];
    for &v in order.iter().rev() {
        let succ: Vec<VertexId> = q.successors(v).collect();
        if succ.is_empty() {
            to_sink[v.0][0] = true;
            continue;
        }
        let mut acc = vec![false; n];
        for w in succ {
            for (len, &hit) in to_sink[w.0].iter().enumerate() {
                if hit {
                    acc[len + 1] = true;
                }
            }
        }
        to_sink[v.0] = acc;
    }
    let mut maximal_lengths = BTreeSet::new();
    for v in q.vertices() {
        if q.in_degree(v) == 0 && q.out_degree(v) > 0 {
            maximal_lengths.extend(to_sink[v.0].iter().enumerate().filter(|(_, &h)| h).map(|(l, _)| l));
        }
    }
    Ok(PathProfile { ell, maximal_lengths, on_max_path })
}
