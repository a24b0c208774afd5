//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiver_bipartite::cli::cli_main;
use quiver_bipartite::paths::path_profile;
use quiver_bipartite::verify::{oracle_mutate, reverse_arrows_from, ArrowList};
use quiver_bipartite::*;

const EXHAUSTIVE_MAX_N: usize = 4;
const EXHAUSTIVE_MAX_MULT: u32 = 2;
const RANDOM_SAMPLES: u64 = 1200;
const RANDOM_EDGE_PROB: f64 = 0.4;
const RANDOM_MAX_MULT: u32 = 3;
const INVOLUTION_PAIRS: u64 = 10_000;

struct Outcome {
    id: u32,
    name: &'static str,
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(id: u32, name: &'static str) -> Self {
        Outcome { id, name, failures: Vec::new(), detail: String::new() }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            self.failures.push(msg);
        } else if self.failures.len() == 5 {
            self.failures.push("...".into());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn v(i: usize) -> VertexId {
    VertexId(i - 1)
}

/// Per-run observations for the claim checks, gathered by replaying the
/// trace independently of the report snapshots.
struct RunCheck {
    step2_rounds: usize,
    ell: usize,
    cap_hit: bool,
    error: Option<String>,
    acyclic_ok: bool,
    step1_lengths: Option<BTreeSet<usize>>,
    law_violations: Vec<String>,
    certified: bool,
}

fn check_run(q: &Quiver) -> RunCheck {
    let mut rc = RunCheck {
        step2_rounds: 0,
        ell: 0,
        cap_hit: false,
        error: None,
        acyclic_ok: true,
        step1_lengths: None,
        law_violations: Vec::new(),
        certified: false,
    };
    let (trace, report) = match bipartitize(q) {
        Ok(x) => x,
        Err(e) => {
            rc.cap_hit = matches!(e, ConstructionError::Step1CapExceeded { .. });
            rc.error = Some(e.to_string());
            return rc;
        }
    };
    rc.ell = trace.ell;
    rc.step2_rounds = report.step2_iterations;

    let mut state = q.clone();
    let mut round = 0;
    for (idx, event) in trace.events.iter().enumerate() {
        match event {
            MutationEvent::InsertVertex { head_of_alpha, tail_of_alpha, .. } => {
                let alpha = Arrow { tail: *tail_of_alpha, head: *head_of_alpha, multiplicity: 1 };
                state = state.insert_framed_vertex(&alpha).expect("replay insert").0;
            }
            MutationEvent::MutateAt(k) => {
                state = state.mutate(*k).expect("replay mutate");
                if !state.is_acyclic() {
                    rc.acyclic_ok = false;
                }
            }
            MutationEvent::MutateSources(vs) => {
                if idx == 2 * trace.j {
                    rc.step1_lengths = Some(path_profile(&state).unwrap().maximal_lengths);
                }
                state = state.mutate_sequence(vs).expect("replay sources");
                round += 1;
                let lengths = path_profile(&state).unwrap().maximal_lengths;
                let allowed = BTreeSet::from([1, 1.max(trace.ell.saturating_sub(round))]);
                if !lengths.is_subset(&allowed) {
                    rc.law_violations.push(format!("round {round}: {lengths:?} not in {allowed:?}"));
                }
            }
        }
    }
    if rc.step1_lengths.is_none() {
        // no source rounds: Q^(j) is the final state
        rc.step1_lengths = Some(path_profile(&state).unwrap().maximal_lengths);
    }
    rc.certified = state.equal(&trace.final_quiver) && certify(q, &trace).accepted();
    rc
}

fn exhaustive_corpus() -> Vec<Quiver> {
    enumerate_small(EXHAUSTIVE_MAX_N, EXHAUSTIVE_MAX_MULT).unwrap().collect()
}

fn random_corpus() -> Vec<(u64, Quiver)> {
    (0..RANDOM_SAMPLES)
        .map(|seed| {
            let n = 3 + (seed % 8) as usize;
            let spec = GenSpec { n, edge_probability: RANDOM_EDGE_PROB, max_multiplicity: RANDOM_MAX_MULT, seed };
            (seed, random_acyclic(&spec))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new(1, "worked example end to end, exact, < 1 ms");
    let q = Quiver::from_arrows(3, &[(1, 2), (1, 3), (3, 2)]).unwrap();
    let _ = bipartitize(&q);
    let start = Instant::now();
    let result = bipartitize(&q);
    let elapsed = start.elapsed();
    let (trace, _) = result.expect("example runs");
    let want_events = vec![
        MutationEvent::InsertVertex { vertex: v(4), head_of_alpha: v(2), tail_of_alpha: v(1) },
        MutationEvent::MutateAt(v(4)),
        MutationEvent::MutateSources(vec![v(1)]),
    ];
    if trace.events != want_events {
        o.fail(format!("events {:?}", trace.events));
    }
    let want_final = Quiver::from_arrows(4, &[(3, 1), (3, 2), (4, 1), (4, 2)]).unwrap();
    if trace.final_quiver != want_final {
        o.fail(format!("final {}", trace.final_quiver));
    }
    if elapsed >= Duration::from_millis(1) {
        o.fail(format!("took {elapsed:?}"));
    }
    o.detail = format!("{elapsed:?}");
    o
}

struct CorpusSummary {
    runs: usize,
    checks: Vec<(String, RunCheck)>,
    elapsed: Duration,
}

fn run_corpus(items: Vec<(String, Quiver)>) -> CorpusSummary {
    let start = Instant::now();
    let checks: Vec<(String, RunCheck)> = items.into_iter().map(|(name, q)| (name, check_run(&q))).collect();
    CorpusSummary { runs: checks.len(), checks, elapsed: start.elapsed() }
}

fn theorem_outcome(id: u32, name: &'static str, s: &CorpusSummary, budget: Duration) -> Outcome {
    let mut o = Outcome::new(id, name);
    for (label, c) in &s.checks {
        if let Some(e) = &c.error {
            o.fail(format!("{label}: {e}"));
        } else if !c.certified {
            o.fail(format!("{label}: certificate rejected"));
        }
    }
    if s.elapsed >= budget {
        o.fail(format!("took {:?}, budget {budget:?}", s.elapsed));
    }
    o.detail = format!("{} quivers in {:?}", s.runs, s.elapsed);
    o
}

fn claim_outcomes(all: &[&CorpusSummary]) -> Vec<Outcome> {
    let mut c4 = Outcome::new(4, "source rounds <= max(0, ell - 1)");
    let mut c5 = Outcome::new(5, "after round r maximal lengths within {1, max(1, ell - r)}");
    let mut c6 = Outcome::new(6, "maximal lengths = {ell} after phase one");
    let mut c7 = Outcome::new(7, "every phase-one state acyclic");
    let mut runs = 0;
    let mut max_rounds = 0;
    for s in all {
        for (label, c) in &s.checks {
            runs += 1;
            if let Some(e) = &c.error {
                for o in [&mut c4, &mut c5, &mut c6, &mut c7] {
                    o.fail(format!("{label}: {e}"));
                }
                continue;
            }
            max_rounds = max_rounds.max(c.step2_rounds);
            if c.step2_rounds > c.ell.saturating_sub(1) {
                c4.fail(format!("{label}: {} rounds with ell {}", c.step2_rounds, c.ell));
            }
            for v in &c.law_violations {
                c5.fail(format!("{label}: {v}"));
            }
            let lengths = c.step1_lengths.clone().unwrap_or_default();
            if c.ell >= 1 && lengths != BTreeSet::from([c.ell]) {
                c6.fail(format!("{label}: {lengths:?} with ell {}", c.ell));
            }
            if !c.acyclic_ok {
                c7.fail(format!("{label}: cyclic intermediate state"));
            }
        }
    }
    c4.detail = format!("{runs} runs, max rounds {max_rounds}");
    c5.detail = format!("{runs} runs");
    c6.detail = format!("{runs} runs");
    c7.detail = format!("{runs} runs");
    vec![c4, c5, c6, c7]
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=8);
    let mut q = Quiver::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let e: i64 = rng.gen_range(-3..=3);
            if e != 0 {
                q.add_arrows(VertexId(i), VertexId(j), e).unwrap();
            }
        }
    }
    q
}

fn criterion_8(corpus: &[Quiver]) -> Outcome {
    let mut o = Outcome::new(8, "matrix mutation = arrow-level oracle; involution");
    let mut checked = 0;
    for q in corpus {
        let arrows = ArrowList::from_quiver(q);
        for k in q.vertices() {
            checked += 1;
            let oracle = oracle_mutate(&arrows, k.0).to_quiver().unwrap();
            if oracle != q.mutate(k).unwrap() {
                o.fail(format!("{q} at {k}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..INVOLUTION_PAIRS {
        let q = random_quiver(&mut rng);
        let k = VertexId(rng.gen_range(0..q.vertex_count()));
        let m = q.mutate(k).unwrap();
        if !m.is_skew_symmetric() || m.mutate(k).unwrap() != q {
            o.fail(format!("involution fails for {q} at {k}"));
        }
    }
    o.detail = format!("{checked} oracle pairs, {INVOLUTION_PAIRS} involution pairs");
    o
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

fn criterion_9(corpus: &[Quiver]) -> Outcome {
    let mut o = Outcome::new(9, "source mutation order-free and equal to reversing source arrows");
    let mut perms = 0;
    for q in corpus {
        let sources = q.sources();
        let list: Vec<VertexId> = sources.iter().copied().collect();
        let reference = reverse_arrows_from(q, &sources);
        for p in permutations(&list) {
            perms += 1;
            if q.mutate_sequence(&p).unwrap() != reference {
                o.fail(format!("{q} order {p:?}"));
            }
        }
    }
    o.detail = format!("{} quivers, {perms} orders", corpus.len());
    o
}

fn criterion_10(all: &[&CorpusSummary]) -> Outcome {
    let mut o = Outcome::new(10, "no phase-one cap hit; stats bit-identical across runs");
    for s in all {
        for (label, c) in &s.checks {
            if c.cap_hit {
                o.fail(format!("{label}: phase-one cap hit"));
            }
        }
    }
    let args = ["quiver-bipartite", "stats", "--n", "8", "--samples", "500", "--seed", "2024"];
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli_main(args, &mut out, &mut err);
        if code != 0 {
            o.fail(format!("stats exit {code}: {}", String::from_utf8_lossy(&err)));
        }
        outputs.push(out);
    }
    if outputs[0] != outputs[1] {
        o.fail("stats output differs between runs".into());
    }
    let rows = outputs[0].iter().filter(|&&b| b == b'\n').count().saturating_sub(1);
    if rows != 500 {
        o.fail(format!("{rows} rows"));
    }
    o.detail = format!("{rows} rows, {} bytes", outputs[0].len());
    o
}

fn main() {
    let exhaustive = exhaustive_corpus();
    let desk = run_corpus(exhaustive.iter().enumerate().map(|(i, q)| (format!("exhaustive#{i} {q}"), q.clone())).collect());
    let random = run_corpus(random_corpus().into_iter().map(|(seed, q)| (format!("seed {seed} {q}"), q)).collect());

    let mut outcomes = vec![
        criterion_1(),
        theorem_outcome(
            2,
            "exhaustive theorem check (<= 4 vertices, mult <= 2), < 60 s",
            &desk,
            Duration::from_secs(60),
        ),
        theorem_outcome(
            3,
            "randomized theorem check (1200 quivers, n <= 10, p = 0.4, mult <= 3), < 120 s",
            &random,
            Duration::from_secs(120),
        ),
    ];
    outcomes.extend(claim_outcomes(&[&desk, &random]));
    outcomes.push(criterion_8(&exhaustive));
    outcomes.push(criterion_9(&exhaustive));
    outcomes.push(criterion_10(&[&desk, &random]));

    let mut failed = 0;
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} ({})", o.id, o.name, o.detail);
        for f in &o.failures {
            println!("         {f}");
        }
        failed += usize::from(!o.passed());
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
