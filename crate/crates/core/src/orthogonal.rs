//! Construction of the bi-orthogonal left and right families.
//!
//! Both families come out of one pivot-free Doolittle sweep of the block
//! Hankel matrix `D_M = L·R`. Writing `L^{-1}` and `R^{-1}` blockwise,
//!
//! * the left family has `α_j^m = (L^{-1})[m,j]` and `Δ_m = R[m,m]`, so the
//!   row system `[α_0^m … α_m^m]·D_m = [0 … 0 Δ_m]` holds by construction,
//!   `α_m^m` is unit lower triangular and `Δ_m` upper triangular;
//! * the right family has `β_j^m = (R^{-1})[j,m]` and `Θ_m = L[m,m]`, so the
//!   column system `D_m·[β_0^m; …; β_m^m] = [0; …; Θ_m]` holds, `β_m^m` is
//!   upper triangular and `Θ_m` unit lower triangular.
//!
//! With this normalization the pairing
//! `(G_n^T(h)U)(B_m) = Σ_{j,k} α_j^m U_{j+k} β_k^n = (L^{-1}·D·R^{-1})[m,n]`
//! is the identity blockwise, so the pair is bi-orthonormal with no
//! post-processing: `Δ_m = (β_m^m)^{-1}` and `Θ_m = (α_m^m)^{-1}`.

use nalgebra::DMatrix;

use crate::functionals::{block_moments, hankel, VectorFunctional};
use crate::linalg::{block_of, inv_unit_lower, inv_upper};
use crate::poly::{HPoly, MatrixPoly};
use crate::Result;

/// The left family: matrix polynomials `V_m(z) = Σ_j α_j^m z^j` (so that
/// `B_m = V_m(h)·P_0`) and the upper triangular normalizations `Δ_m`.
#[derive(Debug, Clone)]
pub struct LeftFamily {
    pub v: Vec<MatrixPoly>,
    pub delta: Vec<DMatrix<f64>>,
}

impl LeftFamily {
    /// Number of constructed orders (`m = 0 ..= len() - 1`).
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn n(&self) -> usize {
        self.v.first().map_or(0, |v| v.n())
    }

    /// The coefficient `α_j^m` of `B_m` along `P_j`.
    pub fn alpha(&self, m: usize, j: usize) -> DMatrix<f64> {
        self.v[m].coeff(j)
    }
}

/// The right family: matrix polynomials `G_m(z) = Σ_j β_j^m z^j` and the
/// unit lower triangular normalizations `Θ_m`.
#[derive(Debug, Clone)]
pub struct RightFamily {
    pub g: Vec<MatrixPoly>,
    pub theta: Vec<DMatrix<f64>>,
}

impl RightFamily {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn n(&self) -> usize {
        self.g.first().map_or(0, |g| g.n())
    }

    pub fn beta(&self, m: usize, j: usize) -> DMatrix<f64> {
        self.g[m].coeff(j)
    }
}

fn lu_sweep(u: &VectorFunctional, h: &HPoly, m_max: usize) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let d = hankel(u, h, m_max)?;
    crate::linalg::lu_nopivot(&d.matrix, u.n())
}

/// Builds the left family to order `M` from one LU sweep of `D_M`.
///
/// Errors with [`crate::Error::SingularMinor`] when a pivot collapses,
/// which is precisely a quasi-definiteness failure at that order.
pub fn build_left(u: &VectorFunctional, h: &HPoly, m_max: usize) -> Result<LeftFamily> {
    let n = u.n();
    let (l, r) = lu_sweep(u, h, m_max)?;
    let linv = inv_unit_lower(&l);
    let mut v = Vec::with_capacity(m_max + 1);
    let mut delta = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let coeffs = (0..=m).map(|j| block_of(&linv, m, j, n)).collect();
        v.push(MatrixPoly::new(n, coeffs));
        delta.push(block_of(&r, m, m, n));
    }
    Ok(LeftFamily { v, delta })
}

/// Builds the right family to order `M` from the same LU sweep.
pub fn build_right(u: &VectorFunctional, h: &HPoly, m_max: usize) -> Result<RightFamily> {
    let n = u.n();
    let (l, r) = lu_sweep(u, h, m_max)?;
    let rinv = inv_upper(&r)?;
    let mut g = Vec::with_capacity(m_max + 1);
    let mut theta = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let coeffs = (0..=m).map(|j| block_of(&rinv, j, m, n)).collect();
        g.push(MatrixPoly::new(n, coeffs));
        theta.push(block_of(&l, m, m, n));
    }
    Ok(RightFamily { g, theta })
}

/// Builds both families from a single factorization.
pub fn build_pair(
    u: &VectorFunctional,
    h: &HPoly,
    m_max: usize,
) -> Result<(LeftFamily, RightFamily)> {
    let n = u.n();
    let (l, r) = lu_sweep(u, h, m_max)?;
    let linv = inv_unit_lower(&l);
    let rinv = inv_upper(&r)?;
    let mut v = Vec::with_capacity(m_max + 1);
    let mut delta = Vec::with_capacity(m_max + 1);
    let mut g = Vec::with_capacity(m_max + 1);
    let mut theta = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        v.push(MatrixPoly::new(
            n,
            (0..=m).map(|j| block_of(&linv, m, j, n)).collect(),
        ));
        delta.push(block_of(&r, m, m, n));
        g.push(MatrixPoly::new(
            n,
            (0..=m).map(|j| block_of(&rinv, j, m, n)).collect(),
        ));
        theta.push(block_of(&l, m, m, n));
    }
    Ok((LeftFamily { v, delta }, RightFamily { g, theta }))
}

/// Max deviation of the cross pairing from `I·δ_{n,m}`, computed purely
/// from moments: `(G_n^T(h)U)(B_m) = Σ_{j,k} α_j^m U_{j+k} β_k^n`.
pub fn verify_biorthogonality(
    left: &LeftFamily,
    right: &RightFamily,
    u: &VectorFunctional,
    h: &HPoly,
) -> Result<f64> {
    let n = u.n();
    let m_left = left.len();
    let m_right = right.len();
    if m_left == 0 || m_right == 0 {
        return Ok(0.0);
    }
    let blocks = block_moments(u, h, m_left + m_right - 2)?;
    let mut worst = 0.0_f64;
    for m in 0..m_left {
        for nn in 0..m_right {
            let mut pair = DMatrix::zeros(n, n);
            for j in 0..=m {
                let alpha = left.v[m].coeff(j);
                for k in 0..=nn {
                    pair += &alpha * &blocks[j + k] * right.g[nn].coeff(k);
                }
            }
            if m == nn {
                pair -= DMatrix::identity(n, n);
            }
            worst = worst.max(pair.amax());
        }
    }
    Ok(worst)
}

/// Max deviation of the triangular structure: `α_m^m` must be lower
/// triangular, `Δ_m` upper triangular, `β_m^m` upper triangular and `Θ_m`
/// lower triangular. Returns the largest off-pattern entry relative to the
/// per-matrix scale.
pub fn triangularity_deviation(left: &LeftFamily, right: &RightFamily) -> f64 {
    let mut worst = 0.0_f64;
    let strict_upper = |m: &DMatrix<f64>| {
        let scale = m.amax().max(1e-300);
        let mut w = 0.0_f64;
        for i in 0..m.nrows() {
            for j in i + 1..m.ncols() {
                w = w.max(m[(i, j)].abs() / scale);
            }
        }
        w
    };
    let strict_lower = |m: &DMatrix<f64>| {
        let scale = m.amax().max(1e-300);
        let mut w = 0.0_f64;
        for i in 0..m.nrows() {
            for j in 0..i {
                w = w.max(m[(i, j)].abs() / scale);
            }
        }
        w
    };
    for m in 0..left.len() {
        worst = worst.max(strict_upper(&left.alpha(m, m)));
        worst = worst.max(strict_lower(&left.delta[m]));
    }
    for m in 0..right.len() {
        worst = worst.max(strict_lower(&right.beta(m, m)));
        worst = worst.max(strict_upper(&right.theta[m]));
    }
    worst
}
