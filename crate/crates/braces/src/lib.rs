//! Bipartite matching covered graphs and braces: predicates, tight cut
//! decompositions, the removable/thin/strictly-thin edge ladder, expansion
//! operations, minimality-preserving pairs, named graph families, and an
//! isomorph-rejected enumerator with an independent brute-force oracle.
//!
//! Graph values are immutable; operations return new graphs. Everything is
//! sized for exhaustive work on graphs of order at most sixteen.

mod bits;
pub mod cuts;
pub mod edges;
pub mod enumerate;
pub mod expand;
pub mod families;
pub mod graph;
pub mod harness;
pub mod iso;
pub mod matching;
pub mod par;
pub mod text;

pub use cuts::{find_nontrivial_tight_cut, is_tight_cut, tight_cut_decomposition, DecompositionResult};
pub use edges::{
    classify_edges, edge_index, is_minimal_brace, is_removable, is_strictly_thin, is_superfluous,
    is_thin, non_superfluous_certificate, EdgeClassification,
};
pub use enumerate::{brute_force_graphs, generate_braces, minimal_braces, verify_bound, Corpus};
pub use harness::{verify_generation_oracle, verify_small_order, verify_thin_properties, CheckReport};
pub use expand::{
    all_expansions, expand_index_one, expand_index_two, expand_index_zero, find_mpp,
    stable_extension, verify_narrow, MppCertificate,
};
pub use families::{is_mccuaig, make, Family, FamilySpec};
pub use graph::{BipartiteGraph, Edge, EdgeId, EdgeMap, Shore, Side, VertexId};
pub use iso::{are_isomorphic, canonical_form, CanonicalForm};
pub use matching::{
    has_perfect_matching, is_brace, is_matching_covered, maximum_matching, surplus, Matching,
};
pub use par::run_with_workers;

use thiserror::Error as ThisError;

/// Errors across the whole crate.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("edge ({a}, {b}) out of range for classes of sizes {na} and {nb}")]
    EndpointOutOfRange { a: usize, b: usize, na: usize, nb: usize },
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("endpoints {u} and {v} lie in the same class")]
    SameClassEndpoints { u: VertexId, v: VertexId },
    #[error("shore must be a nonempty proper vertex subset")]
    EmptyOrFullShore,
    #[error("cannot contract an even shore (|X| = {size})")]
    EvenShore { size: usize },
    #[error("contraction would join the new vertex to both classes")]
    NonBipartiteContraction,
    #[error("vertex {vertex} has degree {degree}, not two")]
    NotDegreeTwo { vertex: VertexId, degree: usize },
    #[error("vertex {vertex} has both edges parallel to one neighbor")]
    ParallelNeighbors { vertex: VertexId },
    #[error("vertex {vertex} is cubic; bi-splitting needs degree four or more")]
    CubicVertex { vertex: VertexId },
    #[error("bad bi-split: {0}")]
    BadSplit(&'static str),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex subset must lie within a single class")]
    MixedClassSubset,
    #[error("operation requires order at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("operation requires {0}")]
    Precondition(&'static str),
    #[error("vertices {u} and {v} are adjacent")]
    AdjacentVertices { u: VertexId, v: VertexId },
    #[error("expansion result is not simple")]
    NonSimpleResult,
    #[error("vertex set is not a stable set meeting each class twice")]
    BadStableSet,
    #[error("graph is not a minimal brace")]
    NotMinimalBrace,
    #[error("graph lies in the exceptional family (K2, C4 and the McCuaig braces)")]
    InExceptionalFamily,
    #[error("max order {requested} exceeds the guardrail {limit}; pass the override to go higher")]
    Guardrail { requested: usize, limit: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` does not admit order {order}: {why}")]
    BadFamilyOrder { family: &'static str, order: usize, why: &'static str },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
