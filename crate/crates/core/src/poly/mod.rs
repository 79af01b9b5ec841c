//! Scalar, vector, and matrix polynomial arithmetic.

pub mod hbasis;
pub mod matrix;
pub mod scalar;
pub mod vector;

pub use hbasis::{fold, h_expand, r_operator, unfold, HBasisExpansion};
pub use matrix::{
    adjugate, adjugate_poly, adjugate_poly_derivatives, det_derivatives, det_poly, MatrixPoly,
};
pub use scalar::{HPoly, ScalarPoly};
pub use vector::VectorPoly;
