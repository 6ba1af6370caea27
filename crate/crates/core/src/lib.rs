//! Exact computations with Leavitt path algebras over the integers and their
//! Bowen-Franks modules.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: finite directed multigraphs, canonical path order, level sets.
//! * [`bf`]: Bowen-Franks modules as colimits of integer vectors.
//! * [`lpa`] and [`expr`]: symbolic arithmetic in the algebra and its text syntax.
//! * [`maps`]: module maps, validation and the matrix normal form.
//! * [`lift`]: lifting a matrix form to a homomorphism of algebras.
//! * [`hom`]: homomorphisms, relation checks, composition, tidiness.
//! * [`text`]: file formats; [`cli`]: the command-line frontend.

pub mod bf;
pub mod cli;
pub mod expr;
pub mod fixtures;
pub mod graph;
pub mod hom;
pub mod lift;
pub mod lpa;
pub mod maps;
pub mod matrix;
pub mod random;
pub mod text;

pub use bf::{bf_equal, is_positive, order_unit_vector, BfElement, LevelVector, Positivity};
pub use graph::{EdgeId, Graph, Path, VertexId};
pub use lpa::{Element, Monomial, SpecialEdgeChoice};
pub use matrix::IntMatrix;
