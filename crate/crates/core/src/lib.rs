//! Bi-orthogonal families of vector and matrix polynomials.
//!
//! This crate constructs and manipulates sequences of vector polynomials
//! `B_m` and matrix polynomials `V_m`, `G_m` that are bi-orthogonal with
//! respect to a vector of linear functionals `U = [u^1 … u^N]^T`, where
//! orthogonality is measured against the powers of a fixed degree-`N`
//! polynomial `h`. The machinery is non-symmetric throughout: the block
//! three-term recurrence coefficients `A_m`, `B_m`, `C_m` need not obey
//! any transpose symmetry.
//!
//! The main pipelines are:
//!
//! * [`poly`] — scalar/vector/matrix polynomial arithmetic, the `{x^j h^i}`
//!   basis split, folding of scalar sequences into matrix polynomials, and
//!   adjugate/determinant machinery for polynomial matrices.
//! * [`functionals`] — moment sequences, block moments `U_j`, block Hankel
//!   matrices `D_m`, quasi-definiteness diagnostics, and the matrix Markov
//!   function `F(z)`.
//! * [`orthogonal`] — construction of the left family `{V_m, Δ_m}` and the
//!   right family `{G_m, Θ_m}` from a pivot-free LU sweep of `D_m`, plus
//!   bi-orthogonality verification.
//! * [`recurrence`] — extraction of block recurrence coefficients, the
//!   Favard direction (rebuild from coefficients), and conversion between
//!   the `(2N+1)`-term scalar recurrence and the block recurrence.
//! * [`spectral`] — block Jacobi matrices, zeros of `V_m`, first-kind
//!   associated polynomials, matrix Gauss-type quadrature, Christoffel–
//!   Darboux residuals, Hermite–Padé order checks, and Markov approximants.
//! * [`cli`] — the batch front-end behind the `mopkit` binary.
//!
//! All values are plain data and immutable after construction; every
//! operation is a pure function, so results can be shared freely across
//! threads.

pub mod cli;
pub mod fixtures;
pub mod functionals;
pub mod io;
pub mod linalg;
pub mod orthogonal;
pub mod poly;
pub mod recurrence;
pub mod spectral;

pub use num_complex::Complex64;

/// Errors produced by the construction and evaluation routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A leading principal minor of the block Hankel matrix is numerically
    /// singular; the functional is not quasi-definite at this depth.
    /// `order` is the scalar order (1-based), `block` the block index `m`.
    #[error("leading principal minor of order {order} (block {block}) is numerically singular")]
    SingularMinor { order: usize, block: usize },

    /// A moment of index beyond the stored truncation was requested.
    #[error("moment truncation exceeded: need scalar moments up to {needed}, have {have}")]
    Truncation { needed: usize, have: usize },

    /// A matrix that must be inverted is singular.
    #[error("singular matrix in {context}")]
    Singular { context: &'static str },

    /// The eigenvalue iteration did not converge within its iteration cap.
    #[error("eigenvalue iteration did not converge")]
    NonConvergence,

    /// An input polynomial does not have the degree the operation requires.
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: isize, got: isize },

    /// Index argument outside its admissible range.
    #[error("index out of range: {what}")]
    IndexOutOfRange { what: String },

    /// Evaluation point coincides with (or is too close to) a singular set:
    /// a zero of the polynomial being inverted, the image of the support
    /// under `h`, or the origin for a Laurent tail.
    #[error("evaluation point too close to a singular set: {what}")]
    NearSingularPoint { what: String },

    /// The leading coefficient of a generated polynomial cancelled below
    /// tolerance, so its degree is defective.
    #[error("degree defect: leading coefficient vanished for p_{n}")]
    DegreeDefect { n: usize },

    /// A scalar recurrence coefficient required by the block assembly is
    /// not present in the coefficient map.
    #[error("missing scalar recurrence coefficient c^{upper}_{lower}")]
    MissingCoefficient { upper: i64, lower: i64 },

    /// The stated multiplicity of a node is inconsistent with the
    /// determinant derivatives at that node.
    #[error("inconsistent multiplicity {mult} at node {node}: |det^({mult})| below tolerance")]
    MultiplicityMismatch { node: usize, mult: usize },

    /// A numerical integral did not evaluate to a finite value.
    #[error("non-finite integral in moment ingestion")]
    NonFiniteIntegral,

    /// Malformed input (file contents, dimensions, argument combinations).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
