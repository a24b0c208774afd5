//! Embedding finite acyclic quivers into quivers mutation equivalent to
//! bipartite quivers.
//!
//! [`bipartitize()`] subdivides arrows that miss the longest paths by framing
//! them with new vertices and mutating there, then mutates at all sources
//! until the quiver is bipartite. The resulting [`Trace`] replays exactly, and
//! [`certify`] checks that the input is a full subquiver of a quiver mutation
//! equivalent to the bipartite result.

pub mod bipartitize;
pub mod cli;
pub mod error;
pub mod generate;
pub mod io;
pub mod paths;
pub mod quiver;
pub mod verify;

pub use bipartitize::{
    bipartitize, bipartitize_with, pick_subdividable_arrow, step1, step2, ArrowChoice, Claim, Config,
    ConstructionError, MutationEvent, RunReport, Trace,
};
pub use error::QuiverError;
pub use generate::{enumerate_exact, enumerate_small, random_acyclic, GenSpec};
pub use io::{emit_dot, parse_quiver, parse_trace, serialize_quiver, serialize_trace, SchemaError};
pub use paths::{path_profile, PathProfile};
pub use quiver::{Arrow, Provenance, Quiver, VertexId};
pub use verify::{certify, reconstruct_ambient, replay_forward, EmbeddingCertificate, TraceError};
