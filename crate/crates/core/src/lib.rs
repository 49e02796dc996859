//! Exact-arithmetic representation theory of disconnected reductive groups.
//!
//! The crate classifies simple modules of a group `G` with reductive
//! identity component `G°` and finite component group `A = G/G°` through
//! Clifford theory: twisted group algebras of weight stabilizers, the
//! highest-weight order on labels `[lambda, E]`, and the decomposition map
//! relating characteristic 0 and characteristic p. A finite-group oracle
//! realizes every construction with explicit matrices over exact finite
//! fields so that each formula is verified against brute force rather than
//! trusted.
//!
//! Data-parallel loops (batch verification, per-orbit classification,
//! character tables) run on rayon when the default `rayon` feature is
//! enabled and fall back to sequential iteration otherwise.

// Index loops over paired tables (multiplication tables, cocycle grids)
// read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod clifford;
pub mod decomp;
pub mod error;
pub mod field;
pub mod finite_model;
pub mod fixtures;
pub mod group;
pub mod hw;
pub mod matrix;
pub mod modelfile;
pub mod par;
pub mod poly;
pub mod presets;
pub mod report;
pub mod rootdata;

pub use clifford::{FactorSet, TwistedGroupAlgebra};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use finite_model::FiniteModel;
pub use hw::{LabelPoset, SimpleLabel};
pub use matrix::{solve_linear, ExactMatrix, LinearSolution};
pub use poly::Polynomial;
pub use rootdata::{ComponentAction, RootDatum, Weight};
