//! Instance generators, property drivers and benchmark rows shared by the
//! CLI, the test suites and the benches.

pub mod bench;
pub mod gen;
pub mod props;

pub use bench::{bench, BenchRow};
pub use gen::{gen_class_graph, gen_level_instance, gen_sized_instance, GenSpec, Instance, Polarity};
pub use props::{dsm_property_check, DsmReport};
