//! Solvers for making a distinguished vertex `p` the unique minimum- or
//! maximum-degree vertex of a graph by deleting a lightest set of other
//! vertices (MDD(min) / MDD(max)).

pub mod approx;
pub mod cubic;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod io;
pub mod reductions;
pub mod subroutines;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{complement, induced_subgraph, Graph, Subgraph, Vertex};
pub use instance::{
    classify_neighborhood, is_feasible, is_feasible_set, DeletionSet, Instance, Neighborhood, NeighborhoodCase,
    Objective,
};
pub use weight::Weight;
