//! Certification of construction traces, plus brute-force oracles used for
//! differential testing.
//!
//! The certificate rebuilds the ambient quiver by undoing every recorded
//! mutation on the final quiver while keeping the inserted vertices. Mutation
//! at `k` only reads entries indexed by `i`, `j` and `k`, so undoing the
//! mutations restores every entry among the original vertices: the input is
//! the full subquiver of the ambient quiver on its own vertices.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bipartitize::{MutationEvent, Trace};
use crate::error::QuiverError;
use crate::paths::PathProfile;
use crate::quiver::{Arrow, Quiver, VertexId};

/// Largest vertex count `enumerate_paths` accepts.
pub const MAX_ENUMERATION_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace input does not match the given quiver")]
    InputMismatch,
    #[error("event {event}: vertex index {index} out of range ({n} vertices)")]
    UnknownVertex { event: usize, index: usize, n: usize },
    #[error("event {event}: inserted vertex must be index {expected}, got {got}")]
    InsertOutOfOrder { event: usize, expected: usize, got: usize },
    #[error("event {event}: {source}")]
    Quiver { event: usize, source: QuiverError },
    #[error("final quiver has {got} vertices but the input has {input}")]
    FinalTooSmall { input: usize, got: usize },
}

fn check(event: usize, v: VertexId, n: usize) -> Result<(), TraceError> {
    if v.0 < n {
        Ok(())
    } else {
        Err(TraceError::UnknownVertex { event, index: v.0, n })
    }
}

/// Re-executes the event list from `input`.
pub fn replay_forward(input: &Quiver, trace: &Trace) -> Result<Quiver, TraceError> {
    if !input.equal(&trace.input) {
        return Err(TraceError::InputMismatch);
    }
    let mut cur = input.clone();
    for (e, event) in trace.events.iter().enumerate() {
        let n = cur.vertex_count();
        match event {
            MutationEvent::InsertVertex { vertex, head_of_alpha, tail_of_alpha } => {
                check(e, *head_of_alpha, n)?;
                check(e, *tail_of_alpha, n)?;
                if vertex.0 != n {
                    return Err(TraceError::InsertOutOfOrder { event: e, expected: n, got: vertex.0 });
                }
                let alpha = Arrow { tail: *tail_of_alpha, head: *head_of_alpha, multiplicity: 1 };
                let (framed, _) =
                    cur.insert_framed_vertex(&alpha).map_err(|source| TraceError::Quiver { event: e, source })?;
                cur = framed;
            }
            MutationEvent::MutateAt(v) => {
                check(e, *v, n)?;
                cur = cur.mutate(*v).map_err(|source| TraceError::Quiver { event: e, source })?;
            }
            MutationEvent::MutateSources(vs) => {
                for v in vs {
                    check(e, *v, n)?;
                }
                cur = cur.mutate_sequence(vs).map_err(|source| TraceError::Quiver { event: e, source })?;
            }
        }
    }
    Ok(cur)
}

/// Undoes every mutation event on the final quiver, newest first, keeping
/// inserted vertices. The result contains the input as a full subquiver.
pub fn reconstruct_ambient(trace: &Trace) -> Result<Quiver, TraceError> {
    let n = trace.final_quiver.vertex_count();
    if n < trace.input.vertex_count() {
        return Err(TraceError::FinalTooSmall { input: trace.input.vertex_count(), got: n });
    }
    let mut cur = trace.final_quiver.clone();
    for (e, event) in trace.events.iter().enumerate().rev() {
        match event {
            MutationEvent::InsertVertex { vertex, .. } => check(e, *vertex, n)?,
            MutationEvent::MutateAt(v) => {
                check(e, *v, n)?;
                cur = cur.mutate(*v).map_err(|source| TraceError::Quiver { event: e, source })?;
            }
            MutationEvent::MutateSources(vs) => {
                for &v in vs.iter().rev() {
                    check(e, v, n)?;
                    cur = cur.mutate(v).map_err(|source| TraceError::Quiver { event: e, source })?;
                }
            }
        }
    }
    Ok(cur)
}

/// Mutation vertices of the trace in forward order, inserts dropped.
pub fn mutation_sequence(trace: &Trace) -> Vec<VertexId> {
    let mut seq = Vec::new();
    for event in &trace.events {
        match event {
            MutationEvent::InsertVertex { .. } => {}
            MutationEvent::MutateAt(v) => seq.push(*v),
            MutationEvent::MutateSources(vs) => seq.extend(vs.iter().copied()),
        }
    }
    seq
}

/// Evidence that the input is a full subquiver of a quiver mutation
/// equivalent to a bipartite quiver.
#[derive(Debug, Clone)]
pub struct EmbeddingCertificate {
    /// The reconstructed ambient quiver on the final vertex set.
    pub ambient: Quiver,
    /// Image of each input vertex in `ambient` (the identity injection).
    pub vertex_map: Vec<VertexId>,
    pub bipartite_ok: bool,
    pub full_subquiver_ok: bool,
    pub mutation_equivalent_ok: bool,
    /// Why a check failed, when one did.
    pub notes: Vec<String>,
}

impl EmbeddingCertificate {
    pub fn accepted(&self) -> bool {
        self.bipartite_ok && self.full_subquiver_ok && self.mutation_equivalent_ok
    }
}

/// Checks a trace against `input`. Failures are reported in the verdict
/// fields, never as errors.
pub fn certify(input: &Quiver, trace: &Trace) -> EmbeddingCertificate {
    let vertex_map: Vec<VertexId> = input.vertices().collect();
    let mut notes = Vec::new();
    let bipartite_ok = trace.final_quiver.is_bipartite();
    if !bipartite_ok {
        notes.push("final quiver is not bipartite".to_string());
    }

    let ambient = match reconstruct_ambient(trace) {
        Ok(r) => r,
        Err(e) => {
            notes.push(format!("cannot reconstruct ambient quiver: {e}"));
            return EmbeddingCertificate {
                ambient: trace.final_quiver.clone(),
                vertex_map,
                bipartite_ok,
                full_subquiver_ok: false,
                mutation_equivalent_ok: false,
                notes,
            };
        }
    };

    let full_subquiver_ok = match ambient.restrict(&vertex_map) {
        Ok(sub) => sub.equal(input),
        Err(_) => false,
    };
    if !full_subquiver_ok {
        notes.push("input is not the full subquiver of the ambient quiver on its vertices".to_string());
    }

    let from_ambient = ambient.mutate_sequence(&mutation_sequence(trace));
    let ambient_reaches = matches!(&from_ambient, Ok(q) if q.equal(&trace.final_quiver));
    if !ambient_reaches {
        notes.push("mutation replay from the ambient quiver misses the final quiver".to_string());
    }
    let input_reaches = match replay_forward(input, trace) {
        Ok(q) => q.equal(&trace.final_quiver),
        Err(e) => {
            notes.push(format!("forward replay failed: {e}"));
            false
        }
    };
    if !input_reaches {
        notes.push("recorded events do not produce the final quiver".to_string());
    }

    EmbeddingCertificate {
        ambient,
        vertex_map,
        bipartite_ok,
        full_subquiver_ok,
        mutation_equivalent_ok: ambient_reaches && input_reaches,
        notes,
    }
}

/// A quiver as an explicit list of arrow copies on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowList {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl ArrowList {
    pub fn from_quiver(q: &Quiver) -> Self {
        let mut arrows = Vec::new();
        for a in q.arrows() {
            for _ in 0..a.multiplicity {
                arrows.push((a.tail.0, a.head.0));
            }
        }
        ArrowList { n: q.vertex_count(), arrows }
    }

    pub fn to_quiver(&self) -> Result<Quiver, QuiverError> {
        let one_based: Vec<(usize, usize)> = self.arrows.iter().map(|&(t, h)| (t + 1, h + 1)).collect();
        Quiver::from_arrows(self.n, &one_based)
    }
}

/// Mutation at `k` on arrow copies: compose every `i -> k -> j`, reverse the
/// arrows at `k`, then cancel opposite pairs.
pub fn oracle_mutate(q: &ArrowList, k: usize) -> ArrowList {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &(i, a) in &q.arrows {
        if a != k {
            continue;
        }
        for &(b, j) in &q.arrows {
            if b == k {
                out.push((i, j));
            }
        }
    }
    for &(t, h) in &q.arrows {
        if t == k || h == k {
            out.push((h, t));
        } else {
            out.push((t, h));
        }
    }
    let mut count: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (t, h) in out {
        *count.entry((t, h)).or_default() += 1;
    }
    let mut arrows = Vec::new();
    for (&(t, h), &c) in &count {
        let back = count.get(&(h, t)).copied().unwrap_or(0);
        for _ in 0..(c - back).max(0) {
            arrows.push((t, h));
        }
    }
    ArrowList { n: q.n, arrows }
}

/// Reverses every arrow whose tail is in `set`, leaving all others.
pub fn reverse_arrows_from(q: &Quiver, set: &BTreeSet<VertexId>) -> Quiver {
    let mut out = q.restrict(&q.vertices().collect::<Vec<_>>()).expect("all vertices");
    for a in q.arrows() {
        let m = a.multiplicity as i64;
        if set.contains(&a.tail) {
            out.add_arrows(a.tail, a.head, -2 * m).expect("valid arrow");
        }
    }
    out
}

/// Every directed path with at least one arrow, by depth-first search.
pub fn enumerate_paths(q: &Quiver) -> Result<Vec<Vec<VertexId>>, QuiverError> {
    if q.vertex_count() > MAX_ENUMERATION_VERTICES {
        return Err(QuiverError::TooLarge {
            what: "path enumeration",
            size: q.vertex_count(),
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    if !q.is_acyclic() {
        return Err(QuiverError::Cyclic);
    }
    fn walk(q: &Quiver, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let last = *path.last().unwrap();
        for w in q.successors(last) {
            path.push(w);
            out.push(path.clone());
            walk(q, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for v in q.vertices() {
        walk(q, &mut vec![v], &mut out);
    }
    Ok(out)
}

/// Path profile computed from the explicit path list.
pub fn brute_force_profile(q: &Quiver) -> Result<PathProfile, QuiverError> {
    let paths = enumerate_paths(q)?;
    let ell = paths.iter().map(|p| p.len() - 1).max().unwrap_or(0);
    let mut maximal_lengths = BTreeSet::new();
    let mut on_max_path = BTreeSet::new();
    for p in &paths {
        let len = p.len() - 1;
        if q.in_degree(p[0]) == 0 && q.out_degree(*p.last().unwrap()) == 0 {
            maximal_lengths.insert(len);
        }
        if len == ell {
            on_max_path.extend(p.windows(2).map(|w| (w[0], w[1])));
        }
    }
    Ok(PathProfile { ell, maximal_lengths, on_max_path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartitize::bipartitize;

    fn v(i: usize) -> VertexId {
        VertexId(i - 1)
    }

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::from_arrows(n, arrows).unwrap()
    }

    fn example_trace() -> Trace {
        bipartitize(&q(3, &[(1, 2), (1, 3), (3, 2)])).unwrap().0
    }

    #[test]
    fn replay_example() {
        let t = example_trace();
        let fin = replay_forward(&t.input, &t).unwrap();
        assert_eq!(fin, q(4, &[(3, 1), (3, 2), (4, 1), (4, 2)]));
    }

    #[test]
    fn replay_empty_trace() {
        let input = q(3, &[(1, 2)]);
        let t = Trace { input: input.clone(), events: vec![], j: 0, ell: 1, final_quiver: input.clone() };
        assert_eq!(replay_forward(&input, &t).unwrap(), input);
        assert_eq!(reconstruct_ambient(&t).unwrap(), input);
    }

    #[test]
    fn replay_rejects_bad_vertex() {
        let mut t = example_trace();
        t.events.push(MutationEvent::MutateAt(VertexId(17)));
        assert!(matches!(
            replay_forward(&t.input.clone(), &t),
            Err(TraceError::UnknownVertex { event: 3, index: 17, n: 4 })
        ));
        assert!(reconstruct_ambient(&t).is_err());
    }

    #[test]
    fn reconstruct_example_by_hand() {
        let t = example_trace();
        let fin = &t.final_quiver;
        let first = fin.mutate(v(1)).unwrap();
        assert_eq!(first, q(4, &[(1, 4), (1, 3), (4, 2), (3, 2)]));
        let second = first.mutate(v(4)).unwrap();
        assert_eq!(second, q(4, &[(2, 4), (4, 1), (1, 2), (1, 3), (3, 2)]));
        let r = reconstruct_ambient(&t).unwrap();
        assert_eq!(r, second);
        assert_eq!(r.restrict(&[v(1), v(2), v(3)]).unwrap(), t.input);
    }

    #[test]
    fn certify_example() {
        let t = example_trace();
        let c = certify(&t.input, &t);
        assert!(c.bipartite_ok && c.full_subquiver_ok && c.mutation_equivalent_ok);
        assert!(c.accepted());
        assert_eq!(c.vertex_map, vec![v(1), v(2), v(3)]);
    }

    #[test]
    fn certify_tampered_final() {
        let mut t = example_trace();
        t.final_quiver = q(4, &[(3, 1), (3, 2), (4, 1)]);
        let c = certify(&t.input.clone(), &t);
        assert!(!c.mutation_equivalent_ok);
        assert!(!c.accepted());
        assert!(!c.notes.is_empty());
    }

    #[test]
    fn certify_wrong_input() {
        let t = example_trace();
        let c = certify(&q(3, &[(1, 2)]), &t);
        assert!(!c.accepted());
        assert!(!c.full_subquiver_ok);
    }

    #[test]
    fn oracle_example() {
        let l = ArrowList::from_quiver(&q(4, &[(2, 4), (4, 1), (1, 2), (1, 3), (3, 2)]));
        let m = oracle_mutate(&l, 3).to_quiver().unwrap();
        assert_eq!(m, q(4, &[(1, 4), (4, 2), (1, 3), (3, 2)]));
    }

    #[test]
    fn oracle_isolated_vertex_is_identity() {
        let input = q(4, &[(1, 2), (2, 3)]);
        let l = ArrowList::from_quiver(&input);
        assert_eq!(oracle_mutate(&l, 3).to_quiver().unwrap(), input);
    }

    #[test]
    fn reverse_arrows_matches_source_mutation() {
        let mid = q(4, &[(1, 4), (4, 2), (1, 3), (3, 2)]);
        let by_rev = reverse_arrows_from(&mid, &mid.sources());
        assert_eq!(by_rev, q(4, &[(4, 1), (4, 2), (3, 1), (3, 2)]));
    }

    #[test]
    fn paths_example() {
        let p = enumerate_paths(&q(3, &[(1, 2), (1, 3), (3, 2)])).unwrap();
        let got: BTreeSet<Vec<VertexId>> = p.into_iter().collect();
        let want = BTreeSet::from([
            vec![v(1), v(2)],
            vec![v(1), v(3)],
            vec![v(3), v(2)],
            vec![v(1), v(3), v(2)],
        ]);
        assert_eq!(got, want);
        assert!(enumerate_paths(&Quiver::new(3)).unwrap().is_empty());
    }

    #[test]
    fn paths_guards() {
        assert_eq!(enumerate_paths(&q(3, &[(1, 2), (2, 3), (3, 1)])), Err(QuiverError::Cyclic));
        assert!(matches!(enumerate_paths(&Quiver::new(13)), Err(QuiverError::TooLarge { .. })));
    }
}
