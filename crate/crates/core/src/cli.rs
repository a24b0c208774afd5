//! Command-line front end. Exit codes: 0 success or certificate accepted,
//! 1 certificate rejected, 2 usage or schema error, 3 invariant violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::bipartitize::{bipartitize_with, ArrowChoice, Config, ConstructionError, RunReport, STEP1_CAP_ENV};
use crate::generate::{enumerate_small, random_acyclic, GenSpec};
use crate::io::{emit_dot, parse_quiver, parse_trace, serialize_quiver, serialize_trace};
use crate::paths::path_profile;
use crate::quiver::Quiver;
use crate::verify::certify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quiver-bipartite", version, about = "Turn acyclic quivers into bipartite ones by insertion and mutation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the construction and print the run report.
    Bipartitize {
        input: PathBuf,
        /// Write the trace document here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the final quiver as DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also print per-iteration path profiles.
        #[arg(long)]
        report: bool,
        #[arg(long, env = STEP1_CAP_ENV)]
        step1_cap: Option<usize>,
        /// Pick subdivided arrows at random with this seed instead of the least one.
        #[arg(long)]
        random_arrow: Option<u64>,
    },
    /// Check a trace against its input and print the certificate.
    Verify { input: PathBuf, trace: PathBuf },
    /// Mutate at one vertex (by label) and print the result.
    Mutate {
        input: PathBuf,
        #[arg(short = 'k', long = "vertex")]
        vertex: String,
    },
    /// One CSV row per seeded random quiver.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
        #[arg(long, env = STEP1_CAP_ENV)]
        step1_cap: Option<usize>,
    },
    /// Run and certify every labeled acyclic quiver up to the given size.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        max_mult: u32,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

fn read_quiver(path: &Path) -> Result<Quiver, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_quiver(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn construction_failure(e: ConstructionError) -> Failure {
    match &e {
        ConstructionError::Quiver(_) => Failure::usage(e.to_string()),
        _ => {
            let mut message = e.to_string();
            if let Some(t) = e.trace() {
                message.push_str("\ntrace so far:\n");
                message.push_str(&serialize_trace(t));
            }
            Failure { code: EXIT_INVARIANT, message }
        }
    }
}

fn report_lines(report: &RunReport, detailed: bool) -> String {
    let mut s = format!("{report}\n");
    if detailed {
        for (i, p) in report.step1_profiles.iter().enumerate() {
            s.push_str(&format!(
                "step1[{i}]: ell={} maximal_lengths={:?} arrows_on_longest={}\n",
                p.ell,
                p.maximal_lengths,
                p.on_max_path.len()
            ));
        }
        for (i, p) in report.step2_profiles.iter().enumerate() {
            s.push_str(&format!("step2[{}]: maximal_lengths={:?}\n", i + 1, p.maximal_lengths));
        }
    }
    s
}

fn stats_row(spec: &GenSpec, cap: Option<usize>) -> Result<String, ConstructionError> {
    let q = random_acyclic(spec);
    let config = Config { step1_cap: cap, ..Config::default() };
    let (trace, report) = bipartitize_with(&q, &config)?;
    Ok(format!(
        "{},{},{},{},{},{},{}",
        spec.seed,
        spec.n,
        q.arrow_count(),
        trace.ell,
        report.step1_iterations,
        report.step2_iterations,
        report.inserted_vertices
    ))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let io_err = |e: std::io::Error| Failure::usage(e.to_string());
    match cli.command {
        Command::Bipartitize { input, trace, dot, report, step1_cap, random_arrow } => {
            let q = read_quiver(&input)?;
            let config = Config {
                step1_cap,
                choice: random_arrow.map_or(ArrowChoice::Least, ArrowChoice::Random),
            };
            let (t, r) = bipartitize_with(&q, &config).map_err(construction_failure)?;
            if let Some(path) = trace {
                write_file(&path, &serialize_trace(&t))?;
            }
            if let Some(path) = dot {
                write_file(&path, &emit_dot(&t.final_quiver))?;
            }
            write!(out, "{}", report_lines(&r, report)).map_err(io_err)?;
            if report {
                writeln!(out, "ell={} j={}", t.ell, t.j).map_err(io_err)?;
            }
            writeln!(out, "final: {}", t.final_quiver).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, trace } => {
            let q = read_quiver(&input)?;
            let text = fs::read_to_string(&trace).map_err(|e| Failure::usage(format!("{}: {e}", trace.display())))?;
            let t = parse_trace(&text).map_err(|e| Failure::usage(format!("{}: {e}", trace.display())))?;
            let c = certify(&q, &t);
            writeln!(out, "bipartite_ok={}", c.bipartite_ok).map_err(io_err)?;
            writeln!(out, "full_subquiver_ok={}", c.full_subquiver_ok).map_err(io_err)?;
            writeln!(out, "mutation_equivalent_ok={}", c.mutation_equivalent_ok).map_err(io_err)?;
            writeln!(out, "ambient: {}", c.ambient).map_err(io_err)?;
            for note in &c.notes {
                writeln!(out, "note: {note}").map_err(io_err)?;
            }
            let verdict = if c.accepted() { "ACCEPTED" } else { "REJECTED" };
            writeln!(out, "{verdict}").map_err(io_err)?;
            Ok(if c.accepted() { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Mutate { input, vertex } => {
            let q = read_quiver(&input)?;
            let k = q.vertex_by_label(&vertex).ok_or_else(|| Failure::usage(format!("unknown vertex {vertex:?}")))?;
            let m = q.mutate(k).map_err(|e| Failure::usage(e.to_string()))?;
            write!(out, "{}", serialize_quiver(&m)).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Stats { n, samples, seed, edge_prob, max_mult, step1_cap } => {
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(Failure::usage("--edge-prob must lie in [0, 1]"));
            }
            let rows: Vec<Result<String, ConstructionError>> = (0..samples as u64)
                .into_par_iter()
                .map(|i| {
                    let spec = GenSpec {
                        n,
                        edge_probability: edge_prob,
                        max_multiplicity: max_mult,
                        seed: seed.wrapping_add(i),
                    };
                    stats_row(&spec, step1_cap)
                })
                .collect();
            writeln!(out, "seed,n,arrows,ell,step1_iterations,step2_iterations,inserted_vertices").map_err(io_err)?;
            for row in rows {
                writeln!(out, "{}", row.map_err(construction_failure)?).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { max_n, max_mult } => {
            let corpus = enumerate_small(max_n, max_mult).map_err(|e| Failure::usage(e.to_string()))?;
            writeln!(out, "index,n,arrows,ell,step1_iterations,step2_iterations,inserted_vertices,accepted")
                .map_err(io_err)?;
            let (mut total, mut accepted) = (0usize, 0usize);
            for (i, q) in corpus.enumerate() {
                let (t, r) = bipartitize_with(&q, &Config::default()).map_err(construction_failure)?;
                let ok = certify(&q, &t).accepted();
                total += 1;
                accepted += ok as usize;
                let ell = path_profile(&q).map(|p| p.ell).unwrap_or(0);
                writeln!(
                    out,
                    "{i},{},{},{ell},{},{},{},{ok}",
                    q.vertex_count(),
                    q.arrow_count(),
                    r.step1_iterations,
                    r.step2_iterations,
                    r.inserted_vertices
                )
                .map_err(io_err)?;
            }
            writeln!(out, "# total={total} accepted={accepted}").map_err(io_err)?;
            Ok(if accepted == total { EXIT_OK } else { EXIT_REJECTED })
        }
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}
