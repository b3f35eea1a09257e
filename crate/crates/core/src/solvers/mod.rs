//! Exact desk-scale solvers. Everything here returns either an exact optimum
//! with a deterministic witness or a clean size-limit error; nothing is ever
//! silently approximated.

pub mod bitset;
pub mod chromatic;
pub mod clique;
pub mod fractional;
pub mod joined;
pub mod lp;
pub mod matching;
pub mod strong;
pub mod vizing;

pub use chromatic::{chromatic_number, ProperColouring};
pub use clique::max_clique;
pub use fractional::{fractional_chromatic, maximal_stable_sets, FractionalColouring};
pub use joined::pairwise_joined_matching_number;
pub use matching::{matching_number, maximum_matching, tutte_berge_verify};
pub use strong::{
    fractional_strong_chromatic_index, strong_chromatic_index, strong_clique_number,
};
pub use vizing::{vizing_edge_colouring, EdgeColouring};

/// Size limits for the exponential solvers. Exceeding one is an error,
/// never a wrong answer.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Vertex cap for exact chromatic number.
    pub chromatic_vertices: usize,
    /// Vertex cap for the exact fractional-chromatic LP.
    pub fractional_vertices: usize,
    /// Edge-instance cap for exact strong chromatic index.
    pub strong_index_instances: usize,
    /// Distinct-edge cap for the joined-matching search.
    pub joined_matching_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            chromatic_vertices: 64,
            fractional_vertices: 30,
            strong_index_instances: 40,
            joined_matching_edges: 80,
        }
    }
}
