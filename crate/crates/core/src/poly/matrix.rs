//! Matrix polynomials and adjugate/determinant machinery.
//!
//! A [`MatrixPoly`] is a polynomial with square real matrix coefficients,
//! `V(z) = Σ_i V_i z^i`. This is the same data as a matrix whose entries
//! are scalar polynomials, and both views are used: coefficient matrices
//! for recurrences and evaluation, entry polynomials for symbolic
//! determinants and adjugates.

use nalgebra::DMatrix;

use super::scalar::{ScalarPoly, PRUNE_REL};
use crate::{Complex64, Error, Result};

/// A square matrix polynomial with real coefficient matrices, ascending by power.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoly {
    n: usize,
    coeffs: Vec<DMatrix<f64>>,
}

impl MatrixPoly {
    pub fn new(n: usize, coeffs: Vec<DMatrix<f64>>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.nrows() == n && c.ncols() == n));
        let mut p = MatrixPoly { n, coeffs };
        p.trim();
        p
    }

    pub fn zero(n: usize) -> Self {
        MatrixPoly {
            n,
            coeffs: Vec::new(),
        }
    }

    /// The constant polynomial `I`.
    pub fn identity(n: usize) -> Self {
        MatrixPoly {
            n,
            coeffs: vec![DMatrix::identity(n, n)],
        }
    }

    pub fn constant(c: DMatrix<f64>) -> Self {
        let n = c.nrows();
        Self::new(n, vec![c])
    }

    /// Builds the matrix polynomial from a grid of entry polynomials.
    pub fn from_entries(entries: &[Vec<ScalarPoly>]) -> Self {
        let n = entries.len();
        let deg = entries
            .iter()
            .flat_map(|row| row.iter().map(|p| p.degree()))
            .max()
            .unwrap_or(-1);
        if deg < 0 {
            return Self::zero(n);
        }
        let coeffs = (0..=deg as usize)
            .map(|k| DMatrix::from_fn(n, n, |i, j| entries[i][j].coeff(k)))
            .collect();
        Self::new(n, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient matrix of `z^k` (zero matrix beyond the degree).
    pub fn coeff(&self, k: usize) -> DMatrix<f64> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.n, self.n))
    }

    pub fn coeffs(&self) -> &[DMatrix<f64>] {
        &self.coeffs
    }

    pub fn leading(&self) -> DMatrix<f64> {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.n, self.n))
    }

    /// The entry `(i, j)` viewed as a scalar polynomial.
    pub fn entry_poly(&self, i: usize, j: usize) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|c| c[(i, j)]).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, c| a.max(c.amax()))
    }

    fn trim(&mut self) {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            self.coeffs.clear();
            return;
        }
        let tol = PRUNE_REL * scale;
        while matches!(self.coeffs.last(), Some(c) if c.amax() <= tol) {
            self.coeffs.pop();
        }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        let mut acc = DMatrix::from_element(self.n, self.n, Complex64::new(0.0, 0.0));
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c.map(|x| Complex64::new(x, 0.0));
        }
        acc
    }

    pub fn eval_real(&self, x: f64) -> DMatrix<f64> {
        let mut acc = DMatrix::zeros(self.n, self.n);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(self.n, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::new(self.n, coeffs)
    }

    /// Multiplies by `z` (shifts all coefficients up one power).
    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![DMatrix::zeros(self.n, self.n)];
        coeffs.extend(self.coeffs.iter().cloned());
        MatrixPoly { n: self.n, coeffs }
    }

    /// `T · V(z)` for a constant matrix `T`.
    pub fn left_mul(&self, t: &DMatrix<f64>) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|c| t * c).collect())
    }

    /// `V(z) · T` for a constant matrix `T`.
    pub fn right_mul(&self, t: &DMatrix<f64>) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|c| c * t).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.n);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Self::new(self.n, coeffs)
    }

    /// Coefficientwise max-norm of `self - other`.
    pub fn coeff_distance(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).fold(0.0, |a, k| a.max((self.coeff(k) - other.coeff(k)).amax()))
    }
}

/// Adjugate of a complex square matrix.
///
/// Cofactor expansion for `n <= 3`; the Faddeev–LeVerrier recursion for
/// larger sizes. Singular input is fine: `M·Adj(M) = det(M)·I` holds
/// (with zero right-hand side) either way. The `1×1` adjugate is `[1]`.
pub fn adjugate(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "adjugate needs a square matrix");
    match n {
        0 => DMatrix::zeros(0, 0),
        1 => DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
        2 => DMatrix::from_row_slice(2, 2, &[m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]]),
        3 => {
            let mut adj = DMatrix::from_element(3, 3, Complex64::new(0.0, 0.0));
            for i in 0..3 {
                for j in 0..3 {
                    // cofactor C_ji goes to entry (i, j)
                    let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                    let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                    adj[(i, j)] = m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)];
                }
            }
            adj
        }
        _ => {
            // Faddeev–LeVerrier: M_1 = I, c_k = -tr(A·M_k)/k, M_{k+1} = A·M_k + c_k·I.
            // Adj(A) = (-1)^{n-1} M_n.
            let mut mk = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0, 0.0));
            for k in 1..n {
                let am = m * &mk;
                let ck = -am.trace() / Complex64::new(k as f64, 0.0);
                mk = am;
                for i in 0..n {
                    mk[(i, i)] += ck;
                }
            }
            if n.is_multiple_of(2) {
                -mk
            } else {
                mk
            }
        }
    }
}

/// Symbolic determinant of a matrix polynomial as a scalar polynomial.
///
/// Leibniz expansion for `n <= 4`, fraction-free Gaussian elimination
/// (Bareiss) over the polynomial ring for larger sizes.
pub fn det_poly(v: &MatrixPoly) -> ScalarPoly {
    let n = v.n();
    match n {
        0 => ScalarPoly::one(),
        1 => v.entry_poly(0, 0),
        2..=4 => det_leibniz(v),
        _ => det_bareiss(v),
    }
}

fn det_leibniz(v: &MatrixPoly) -> ScalarPoly {
    let n = v.n();
    let entries: Vec<Vec<ScalarPoly>> = (0..n)
        .map(|i| (0..n).map(|j| v.entry_poly(i, j)).collect())
        .collect();
    let mut det = ScalarPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm; the parity flips with each swap.
    let mut c = vec![0usize; n];
    let mut sign = 1.0;
    let add_term = |perm: &[usize], sign: f64, det: &mut ScalarPoly| {
        let mut term = ScalarPoly::one();
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&entries[i][j]);
        }
        *det = det.add(&term.scale(sign));
    };
    add_term(&perm, sign, &mut det);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            add_term(&perm, sign, &mut det);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    det
}

fn det_bareiss(v: &MatrixPoly) -> ScalarPoly {
    let n = v.n();
    let mut a: Vec<Vec<ScalarPoly>> = (0..n)
        .map(|i| (0..n).map(|j| v.entry_poly(i, j)).collect())
        .collect();
    let mut prev = ScalarPoly::one();
    let mut sign = 1.0;
    for k in 0..n - 1 {
        // Fraction-free elimination needs a nonzero (polynomial) pivot;
        // swap in a row from below when the pivot is identically zero.
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return ScalarPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                // division by the previous pivot is exact in the Bareiss scheme
                let (q, _r) = num
                    .div_rem(&prev)
                    .expect("Bareiss pivot is nonzero by construction");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
        for row in a.iter_mut().take(n).skip(k + 1) {
            row[k] = ScalarPoly::zero();
        }
    }
    a[n - 1][n - 1].scale(sign)
}

/// Derivatives of the scalar polynomial `det V(t)` at `t = a`, orders `0..=up_to`.
pub fn det_derivatives(v: &MatrixPoly, a: Complex64, up_to: usize) -> Vec<Complex64> {
    let d = det_poly(v);
    let mut out = Vec::with_capacity(up_to + 1);
    let mut p = d;
    for _ in 0..=up_to {
        out.push(p.eval(a));
        p = p.derivative();
    }
    out
}

/// Symbolic adjugate of a matrix polynomial (a matrix polynomial itself).
///
/// Entry `(i, j)` is the cofactor `(-1)^{i+j}` times the minor obtained by
/// deleting row `j` and column `i`.
pub fn adjugate_poly(v: &MatrixPoly) -> MatrixPoly {
    let n = v.n();
    if n == 1 {
        return MatrixPoly::identity(1);
    }
    let entries: Vec<Vec<ScalarPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor = submatrix_poly(v, j, i);
                    let m = det_poly(&minor);
                    if (i + j) % 2 == 0 {
                        m
                    } else {
                        m.scale(-1.0)
                    }
                })
                .collect()
        })
        .collect();
    MatrixPoly::from_entries(&entries)
}

fn submatrix_poly(v: &MatrixPoly, drop_row: usize, drop_col: usize) -> MatrixPoly {
    let n = v.n();
    let rows: Vec<usize> = (0..n).filter(|&r| r != drop_row).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != drop_col).collect();
    let entries: Vec<Vec<ScalarPoly>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| v.entry_poly(r, c)).collect())
        .collect();
    MatrixPoly::from_entries(&entries)
}

/// Entrywise derivatives of the symbolic adjugate at `t = a`, orders `0..=up_to`.
pub fn adjugate_poly_derivatives(
    v: &MatrixPoly,
    a: Complex64,
    up_to: usize,
) -> Vec<DMatrix<Complex64>> {
    let adj = adjugate_poly(v);
    let mut out = Vec::with_capacity(up_to + 1);
    let mut p = adj;
    for _ in 0..=up_to {
        out.push(p.eval(a));
        p = p.derivative();
    }
    out
}

/// Checks that a matrix polynomial has exact block-degree structure:
/// degree equals `expected` and the leading coefficient is nonsingular
/// enough to define that degree.
pub fn check_degree(v: &MatrixPoly, expected: isize) -> Result<()> {
    if v.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            got: v.degree(),
        });
    }
    Ok(())
}
