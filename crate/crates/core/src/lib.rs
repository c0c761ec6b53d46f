//! Rigidity-matroid ranks, `(p,q)`-connectivity checking, constructive
//! packing of rigid spanning subgraphs and spanning trees via matroid union,
//! and vertex-robust Eulerian orientations — every positive answer backed by
//! an independently checkable certificate, every engine cross-checked
//! against brute-force oracles.

pub mod certificates;
pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matroid_union;
pub mod oracles;
pub mod orientation;
pub mod packing;
pub mod rigidity;

pub use connectivity::{ConnectivitySpec, ConnectivityWitness, PqVerdict};
pub use error::{Error, Result};
pub use graph::{Arc, EdgeId, EdgeSet, Graph, Orientation, Partition, VertexId};
pub use matroid_union::{DeficiencyOutcome, DeficiencyWitness, MatroidOracle, UnionPartition};
pub use orientation::{SearchBudget, TJoinSpec};
pub use packing::{PackOutcome, Packing, PackingVerdict};
pub use rigidity::{Cover, PebbleState};
