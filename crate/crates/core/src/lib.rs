//! Exact computation of equivariant Khovanov complexes, their involutions and
//! the operators built from them, and the homology-level invariants they carry.

pub mod cli;
pub mod coeff;
pub mod complex;
pub mod diagram;
mod error;
pub mod frobenius;
pub mod homology;
pub mod lee;

pub use error::{Error, Result};
