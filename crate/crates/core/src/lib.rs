//! Reconstruction of hidden directed graphs from path queries.
//!
//! A learner sees the hidden graph only through a [`QueryOracle`], which
//! answers "is there a directed path from `u` to `v`?" and charges every
//! question. Two learners are provided:
//!
//! * [`scc::learn_scc`] recovers the strongly connected components and the
//!   condensation DAG with at most `2nk + k²` queries.
//! * [`almost_tree::reconstruct_rooted_graph`] recovers every edge of a
//!   bounded-degree rooted tree, or of a tree with one extra non-transitive
//!   edge.
//!
//! [`generate`] builds seeded instances and [`bench`] runs query-counting
//! experiments over them.

pub mod almost_tree;
pub mod bench;
mod bits;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod scc;

pub use bits::BitMatrix;
pub use error::{Error, Rejection, Result};
pub use generate::{Family, GenSpec, Instance, InstanceMeta};
pub use graph::{AlmostTreeCertificate, DirectedGraph, Edge, Vertex};
pub use oracle::{QueryOracle, RelativeView};
pub use scc::SccPartition;
