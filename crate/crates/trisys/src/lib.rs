//! Triple systems (3-uniform hypergraphs) with no triangles of prescribed kinds.
//!
//! Three triples can close a cycle through three vertices in exactly four
//! non-isomorphic ways; we call the patterns `A`, `B`, `C`, `D`.  Forbidding a
//! subset of them defines fifteen extremal problems, several with matching
//! constructions and exact small-`n` optima.  This crate provides:
//!
//! * the data model for triple systems (degrees, shadow, links, own pairs)
//!   plus exact canonical forms and isomorphism tests at desk scale,
//! * detectors for the four patterns (and the augmented `A+`/`B+`), general
//!   hypergraph 3-cycles, contiguity components, cluster/crown structure and
//!   the pair-partition machinery of AC-free systems,
//! * generators for every named extremal construction, including the
//!   extension-closed family whose isomorphism classes are counted by
//!   Fibonacci numbers,
//! * graph-side tooling: path-2 graphs, remote pairs, decomposition
//!   divisibility predicates and an exact K4-packing search,
//! * an exact branch-and-bound oracle for `ex(n, S)` at small `n`, the
//!   closed-form catalog for all fifteen forbidden sets, and a batch
//!   verification harness that cross-checks the two.

pub mod canon;
pub mod config;
pub mod constructions;
pub mod error;
pub mod formula;
pub mod graph;
pub mod io;
pub mod packing;
pub mod search;
pub mod system;
pub mod verify;

pub use config::{Config, ConfigSet, Occurrence};
pub use error::{Error, Result};
pub use graph::{Graph, Tournament};
pub use system::{Triple, TripleSystem};
