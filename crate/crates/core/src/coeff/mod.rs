//! Coefficient rings, polynomials over them, matrices and Smith normal form.

mod matrix;
mod poly;
mod scalar;
mod snf;

pub use matrix::{Matrix, SparseMatrix};
pub use poly::{GroundRing, Homogeneity, Monomial, Poly, Variable};
pub use scalar::{BaseRing, Scalar};
pub use snf::{smith_normal_form, smith_normal_form_graded, Snf};
