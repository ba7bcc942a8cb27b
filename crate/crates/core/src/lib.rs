//! Lovász, Schrijver and Szegedy theta functions of small graphs, exact
//! matrix *-algebra machinery (adjacency algebras, coherent closures) and
//! checkers for the trace inequalities and clique-coclique bounds built on them.

pub mod error;
pub mod exactalg;
pub mod graph;
pub mod graph6;
pub mod matrix;
pub mod numla;
pub mod oracle;
pub mod sdp;
pub mod structure;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{named_graph, parse_generator_spec, Graph};
pub use graph6::{parse_graph6, write_graph6};
pub use matrix::{Matrix, Rational, RationalMatrix, Scalar};
pub use numla::SymMatrix;
pub use tolerance::Tolerances;
