//! Strong edge-colouring of multigraphs without large clique minors:
//! exact solvers for the strong parameters, generators for the extremal
//! families, a weight-decomposition engine, a constructive colouring
//! algorithm for hosts with no K4 minor, fractional-colouring assembly,
//! and a claim harness that checks every bound with machine-readable
//! verdicts.

pub mod assembly;
pub mod constructions;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod k4color;
pub mod line_graph;
pub mod minors;
pub mod rational;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeInstance, Multigraph, SimpleGraph};
pub use line_graph::{
    edge_diameter_at_most_two, is_strong_clique, line_graph_square, DiameterVerdict,
    LineGraphSquare, StrongColouring,
};
pub use minors::{has_clique_minor, hadwiger_number, MinorConfig, MinorWitness};
pub use rational::Rational;
pub use solvers::Limits;
pub use verify::{run_suite, suite_passes, ClaimReport, SuiteConfig, SuiteKind, Verdict};
