//! Spectral radii, clique numbers and Lagrangians of hypergraphs with mixed
//! edge sizes, plus the clique-number bounds relating them.

pub mod bounds;
pub mod clique;
pub mod error;
pub mod hypergraph;
pub mod lagrangian;
pub mod spectral;
pub mod tensor;

pub use bounds::{check_all, BoundOptions, BoundReport};
pub use clique::{max_clique_exact, max_clique_with_cap, CliqueResult};
pub use error::{Error, Result};
pub use hypergraph::{
    complete_r_graph, parse_hypergraph, random_r_graph, serialize_hypergraph, Edge, Hypergraph,
};
pub use lagrangian::{maximize_lagrangian, LagrangianOptions, LagrangianResult, SimplexVector};
pub use spectral::{signless_spectral_radius, spectral_radius, IterationOptions, SpectralResult};
pub use tensor::{alpha, ImplicitTensor, TensorKind};
