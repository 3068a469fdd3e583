//! Linear-time recognition of level-split, level-threshold and level-chain
//! weighted graphs.
//!
//! A weighted graph is *level-G* when every level graph (the spanning
//! subgraph of edges with weight at least `i`) belongs to the class G. The
//! pipeline in [`level::recognize_level`] computes a degree-minimal edge
//! elimination scheme ([`dmees`]) and replays it through a deletion-only
//! dynamic recognizer ([`dynamic`]); the naive baseline recognizes each level
//! graph separately.

pub mod bucket;
pub mod dmees;
pub mod dynamic;
pub mod error;
pub mod forbidden;
pub mod graph;
pub mod harness;
pub mod io;
pub mod level;
pub mod recognize;

pub use bucket::{BucketOrder, KeyRange};
pub use dmees::{compute_dmees, verify_dmees, EliminationScheme};
pub use dynamic::{replay, DynRecognizer, Replay, Verdict};
pub use error::{BucketError, GraphError, ParseError, RecognizeError, SchemeError};
pub use forbidden::{find_forbidden, Pattern, PatternWitness};
pub use graph::{EdgeId, Graph, Neighbor, VertexId, WeightedGraph};
pub use io::{emit_scheme, emit_weighted, parse_scheme, parse_weighted, ParseOptions};
pub use level::{check_scheme, naive_recognize_level, recognize_level, sorted_safe_scheme, LevelVerdict};
pub use recognize::{brute_safe, safe_edge, ChainPartition, ClassId, SplitPartition};
