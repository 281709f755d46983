//! Exact rational constructions around dual Hahn polynomials: Christoffel
//! transforms of their measure, the higher-order difference operators that
//! make the transformed families bispectral, and the verifications tying
//! them together.

pub mod classical_families;
pub mod cli_reporter;
pub mod d_operator_engine;
pub mod error;
pub mod exact_algebra;
pub mod krall_builder;
pub mod lattice_ops;

pub use error::{Error, Result};
