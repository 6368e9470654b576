//! Growth and structure of weighted Leavitt path algebras, computed from
//! their graphs.
//!
//! The algebra of a finite weighted graph has a basis of nod-paths: words in
//! the edge letters that avoid a fixed set of forbidden pairs. From the
//! letter digraph of allowed pairs ([`NodAutomaton`]) this crate decides the
//! growth type and Gelfand–Kirillov dimension ([`gk_dimension`]), and for
//! finite-dimensional algebras computes the matrix decomposition
//! ([`decompose`]).

pub mod brute;
pub mod error;
pub mod fd;
pub mod format;
pub mod gk;
pub mod graph;
pub mod nod;
pub mod quasicycle;

pub use error::{Error, Result};
pub use fd::{
    acyclic_decomposition, decompose, dimension_oracle, is_aquasicyclic, structural_audit,
    unweight_fully, Decomposition,
};
pub use format::{parse_graph, render_graph};
pub use gk::{gk_dimension, gk_dimension_with, unweighted_gk, GkDimension, GkResult, Growth};
pub use graph::{EdgeId, GraphBuilder, Letter, VertexId, WeightedGraph, Word};
pub use nod::{choose_base, BasePointChoice, NodAutomaton};
pub use quasicycle::{QcClass, QuasiCycle};
