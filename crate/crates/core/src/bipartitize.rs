//! The two-phase construction taking an acyclic quiver to a bipartite one.
//!
//! Phase one fixes `ell`, the longest path length of the input, and then
//! repeatedly picks an arrow that lies on no path of length `ell`, frames it
//! with a new vertex `v` (arrows `head -> v -> tail`) and mutates at `v`. The
//! net effect replaces one copy of the arrow by a two-arrow detour through `v`.
//! Once every arrow lies on a path of length `ell`, all maximal paths have
//! that length. Phase two then mutates simultaneously at all sources until
//! every vertex is a source or a sink, which takes at most `ell - 1` rounds.
//!
//! Every claim the construction relies on is checked as it runs; a failed
//! check aborts with the trace recorded so far.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::QuiverError;
use crate::paths::{path_profile, PathProfile};
use crate::quiver::{Arrow, Quiver, VertexId};

/// Environment variable holding the default phase-one iteration cap.
pub const STEP1_CAP_ENV: &str = "QUIVER_STEP1_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationEvent {
    /// A new vertex framed by `head_of_alpha -> vertex -> tail_of_alpha`.
    InsertVertex { vertex: VertexId, head_of_alpha: VertexId, tail_of_alpha: VertexId },
    MutateAt(VertexId),
    /// Simultaneous mutation at a set of pairwise non-adjacent vertices.
    MutateSources(Vec<VertexId>),
}

/// Replayable record linking an input quiver to the quiver it was turned into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub input: Quiver,
    pub events: Vec<MutationEvent>,
    /// Number of phase-one iterations; phase two starts at state `j`.
    pub j: usize,
    pub ell: usize,
    pub final_quiver: Quiver,
}

impl Trace {
    fn start(input: &Quiver, ell: usize) -> Self {
        Trace { input: input.clone(), events: Vec::new(), j: 0, ell, final_quiver: input.clone() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub step1_iterations: usize,
    pub step2_iterations: usize,
    pub inserted_vertices: usize,
    /// Profile of each phase-one state, including the one where the phase stops.
    pub step1_profiles: Vec<PathProfile>,
    /// Profile after each phase-two round.
    pub step2_profiles: Vec<PathProfile>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step1_iterations={}, step2_iterations={}, inserted_vertices={}",
            self.step1_iterations, self.step2_iterations, self.inserted_vertices
        )
    }
}

/// Which non-saturated arrow phase one subdivides next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArrowChoice {
    /// Lexicographically least `(tail, head)`.
    #[default]
    Least,
    /// Uniform among candidates, seeded.
    Random(u64),
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    /// Phase-one iteration cap; `None` means `10 * ell * total multiplicity`.
    pub step1_cap: Option<usize>,
    pub choice: ArrowChoice,
}

impl Config {
    /// Reads the cap from `QUIVER_STEP1_CAP` when set and parseable.
    pub fn from_env() -> Self {
        let step1_cap = std::env::var(STEP1_CAP_ENV).ok().and_then(|s| s.trim().parse().ok());
        Config { step1_cap, ..Config::default() }
    }
}

/// Default phase-one cap for an input with longest path `ell`.
pub fn default_step1_cap(input: &Quiver, ell: usize) -> usize {
    10usize.saturating_mul(ell).saturating_mul(input.arrow_count() as usize)
}

/// The checked statements a construction run relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// Every phase-one state is acyclic.
    Acyclicity,
    /// Phase one never lengthens the longest path beyond `ell`.
    LongestPathBound,
    /// After phase one, all maximal paths have length `ell`.
    EqualMaximalLengths,
    /// After phase-two round `r`, maximal lengths lie in `{1, max(1, ell - r)}`.
    PathLengthLaw,
    /// Phase two ends within `max(0, ell - 1)` rounds.
    BipartiteBound,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Claim::Acyclicity => "intermediate states stay acyclic",
            Claim::LongestPathBound => "longest path never exceeds ell",
            Claim::EqualMaximalLengths => "all maximal paths have length ell after phase one",
            Claim::PathLengthLaw => "maximal path lengths lie in {1, max(1, ell - r)}",
            Claim::BipartiteBound => "bipartite within max(0, ell - 1) source rounds",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("phase one did not finish within {cap} iterations")]
    Step1CapExceeded { cap: usize, trace: Box<Trace>, report: Box<RunReport> },
    #[error("invariant violated ({claim}): {detail}")]
    InvariantViolation { claim: Claim, detail: String, trace: Box<Trace> },
}

impl ConstructionError {
    /// Trace recorded up to the failure, if any.
    pub fn trace(&self) -> Option<&Trace> {
        match self {
            ConstructionError::Quiver(_) => None,
            ConstructionError::Step1CapExceeded { trace, .. }
            | ConstructionError::InvariantViolation { trace, .. } => Some(trace),
        }
    }
}

fn violation(claim: Claim, detail: String, trace: &Trace) -> ConstructionError {
    ConstructionError::InvariantViolation { claim, detail, trace: Box::new(trace.clone()) }
}

/// Arrows that lie on no path of length `ell`, sorted by `(tail, head)`.
fn candidates(q: &Quiver, profile: &PathProfile, ell: usize) -> Vec<Arrow> {
    let empty = BTreeSet::new();
    let support = if profile.ell == ell { &profile.on_max_path } else { &empty };
    q.arrows().into_iter().filter(|a| !support.contains(&(a.tail, a.head))).collect()
}

/// Least arrow (by `(tail, head)`) lying on no oriented path of length `ell`.
/// Parallel copies count as one candidate.
pub fn pick_subdividable_arrow(q: &Quiver, ell: usize) -> Result<Option<Arrow>, QuiverError> {
    let profile = path_profile(q)?;
    Ok(candidates(q, &profile, ell).into_iter().next())
}

/// Phase one: subdivide arrows off the longest paths until none remain.
///
/// Returns `Q^(j)`, a trace whose events are `InsertVertex`/`MutateAt` pairs,
/// and the per-iteration report.
pub fn step1(q: &Quiver, config: &Config) -> Result<(Quiver, Trace, RunReport), ConstructionError> {
    let ell = path_profile(q)?.ell;
    let cap = config.step1_cap.unwrap_or_else(|| default_step1_cap(q, ell));
    let mut rng = match config.choice {
        ArrowChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ArrowChoice::Least => None,
    };
    let mut trace = Trace::start(q, ell);
    let mut report = RunReport::default();
    let mut cur = q.clone();

    loop {
        let profile = path_profile(&cur).map_err(|_| {
            violation(Claim::Acyclicity, format!("state {} is cyclic", report.step1_iterations), &trace)
        })?;
        if profile.ell > ell {
            return Err(violation(
                Claim::LongestPathBound,
                format!("state {} has longest path {} > {ell}", report.step1_iterations, profile.ell),
                &trace,
            ));
        }
        let cands = candidates(&cur, &profile, ell);
        report.step1_profiles.push(profile);
        let alpha = match rng.as_mut() {
            Some(rng) => cands.choose(rng).copied(),
            None => cands.first().copied(),
        };
        let Some(alpha) = alpha else { break };
        if report.step1_iterations >= cap {
            return Err(ConstructionError::Step1CapExceeded {
                cap,
                trace: Box::new(trace),
                report: Box::new(report),
            });
        }

        let (framed, v) = cur.insert_framed_vertex(&alpha)?;
        cur = framed.mutate(v)?;
        trace.events.push(MutationEvent::InsertVertex {
            vertex: v,
            head_of_alpha: alpha.head,
            tail_of_alpha: alpha.tail,
        });
        trace.events.push(MutationEvent::MutateAt(v));
        report.step1_iterations += 1;
        report.inserted_vertices += 1;
        trace.j = report.step1_iterations;
        trace.final_quiver = cur.clone();
    }

    let last = report.step1_profiles.last().expect("at least one profile");
    if ell >= 1 && last.maximal_lengths != BTreeSet::from([ell]) {
        return Err(violation(
            Claim::EqualMaximalLengths,
            format!("maximal lengths {:?}, expected {{{ell}}}", last.maximal_lengths),
            &trace,
        ));
    }
    Ok((cur, trace, report))
}

/// Phase two: mutate at all sources of `q` until it is bipartite.
///
/// `ell` is the longest path length fixed in phase one and `j` the state index
/// where this phase starts; the returned trace covers this phase only.
pub fn step2(q: &Quiver, ell: usize, j: usize) -> Result<(Quiver, Trace, RunReport), ConstructionError> {
    let mut trace = Trace::start(q, ell);
    trace.j = j;
    let mut report = RunReport::default();
    let mut cur = q.clone();
    let bound = ell.saturating_sub(1);

    while !cur.is_bipartite() {
        if report.step2_iterations >= ell {
            return Err(violation(
                Claim::BipartiteBound,
                format!("not bipartite after {} rounds (ell = {ell})", report.step2_iterations),
                &trace,
            ));
        }
        let sources: Vec<VertexId> = cur.sources().into_iter().collect();
        cur = cur.mutate_sequence(&sources)?;
        report.step2_iterations += 1;
        trace.events.push(MutationEvent::MutateSources(sources));
        trace.final_quiver = cur.clone();

        let r = report.step2_iterations;
        let profile = path_profile(&cur).map_err(|_| {
            violation(Claim::Acyclicity, format!("state after round {r} is cyclic"), &trace)
        })?;
        let allowed = BTreeSet::from([1, 1.max(ell.saturating_sub(r))]);
        if !profile.maximal_lengths.is_subset(&allowed) {
            return Err(violation(
                Claim::PathLengthLaw,
                format!("round {r}: maximal lengths {:?} not within {allowed:?}", profile.maximal_lengths),
                &trace,
            ));
        }
        report.step2_profiles.push(profile);
    }
    if report.step2_iterations > bound {
        return Err(violation(
            Claim::BipartiteBound,
            format!("{} rounds exceeds bound {bound}", report.step2_iterations),
            &trace,
        ));
    }
    Ok((cur, trace, report))
}

/// Runs both phases and returns the complete trace and report.
pub fn bipartitize(q: &Quiver) -> Result<(Trace, RunReport), ConstructionError> {
    bipartitize_with(q, &Config::default())
}

pub fn bipartitize_with(q: &Quiver, config: &Config) -> Result<(Trace, RunReport), ConstructionError> {
    let (mid, mut trace, mut report) = step1(q, config)?;
    let (fin, tail, r2) = step2(&mid, trace.ell, trace.j).map_err(|e| match e {
        ConstructionError::InvariantViolation { claim, detail, trace: t2 } => {
            let mut joined = trace.clone();
            joined.events.extend(t2.events);
            joined.final_quiver = t2.final_quiver;
            ConstructionError::InvariantViolation { claim, detail, trace: Box::new(joined) }
        }
        other => other,
    })?;
    trace.events.extend(tail.events);
    trace.final_quiver = fin;
    report.step2_iterations = r2.step2_iterations;
    report.step2_profiles = r2.step2_profiles;
    Ok((trace, report))
}
