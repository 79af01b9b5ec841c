//! The `{x^j h^i(x)}` basis split and the fold/unfold maps.
//!
//! For a fixed polynomial `h` of degree `N`, every scalar polynomial has a
//! unique expansion `p(x) = Σ_{i,j} a_{i,j} x^j h^i(x)` with `0 <= j < N`.
//! Extracting the slice with a fixed `j` and substituting `h -> z` gives
//! the operator `R_{h,N,j}`; stacking the slices of `N` consecutive
//! polynomials row by row packs them into one `N×N` matrix polynomial.

use super::matrix::MatrixPoly;
use super::scalar::{HPoly, ScalarPoly};
use super::vector::VectorPoly;
use crate::{Error, Result};

/// Expansion coefficients `a_{i,j}` of a polynomial in the basis `{x^j h^i}`.
///
/// Row `i` holds the coefficients of `h^i`, i.e. `rows[i][j] = a_{i,j}`
/// with `0 <= j < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HBasisExpansion {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl HBasisExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored `h`-powers (rows may be fewer than `deg p / N + 1`
    /// when high rows vanish).
    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.rows.get(i).map_or(0.0, |r| r[j])
    }

    /// The polynomial `Σ_i a_{i,j} z^i` for a fixed `j` (the `R_{h,N,j}` image).
    pub fn slice(&self, j: usize) -> ScalarPoly {
        ScalarPoly::new(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Reassembles `Σ_{i,j} a_{i,j} x^j h^i(x)` by direct expansion.
    ///
    /// This inverts [`h_expand`] exactly (up to rounding) and is the
    /// reference oracle for it.
    pub fn reconstruct(&self, h: &HPoly) -> ScalarPoly {
        let mut acc = ScalarPoly::zero();
        let mut hpow = ScalarPoly::one();
        for row in &self.rows {
            for (j, &a) in row.iter().enumerate() {
                if a != 0.0 {
                    acc = acc.add(&hpow.mul(&ScalarPoly::monomial(j, a)));
                }
            }
            hpow = hpow.mul(h.poly());
        }
        acc
    }
}

/// Expands `p` in the basis `{x^j h^i}` by repeated Euclidean division by `h`.
///
/// Each division step peels the remainder `r_i` (degree `< N`) off
/// `p = r_0 + h·(r_1 + h·(r_2 + …))`, so `a_{i,j}` is the coefficient of
/// `x^j` in `r_i`.
pub fn h_expand(p: &ScalarPoly, h: &HPoly) -> HBasisExpansion {
    let n = h.n();
    let mut rows = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (q, r) = cur
            .div_rem(h.poly())
            .expect("h has positive degree by construction");
        let mut row = vec![0.0; n];
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = r.coeff(j);
        }
        rows.push(row);
        cur = q;
    }
    HBasisExpansion { n, rows }
}

/// The operator `R_{h,N,j}`: keeps the terms `a_{i,j} x^j h^i` of `p`,
/// removes the common factor `x^j` and substitutes `h(x) -> z`.
pub fn r_operator(p: &ScalarPoly, h: &HPoly, j: usize) -> Result<ScalarPoly> {
    if j >= h.n() {
        return Err(Error::IndexOutOfRange {
            what: format!("r_operator slice j={} with N={}", j, h.n()),
        });
    }
    Ok(h_expand(p, h).slice(j))
}

/// Packs `N` consecutive scalar polynomials of degrees `mN..mN+N-1` into the
/// `N×N` matrix polynomial whose row `k`, column `j` entry is
/// `R_{h,N,j}(p_{mN+k})`.
pub fn fold(p_block: &[ScalarPoly], h: &HPoly) -> Result<MatrixPoly> {
    let n = h.n();
    if p_block.len() != n {
        return Err(Error::InvalidInput(format!(
            "fold needs exactly N={} polynomials, got {}",
            n,
            p_block.len()
        )));
    }
    let d0 = p_block[0].degree();
    if d0 < 0 || d0 % n as isize != 0 {
        return Err(Error::DegreeMismatch {
            expected: -1,
            got: d0,
        });
    }
    let m = (d0 / n as isize) as usize;
    for (k, p) in p_block.iter().enumerate() {
        let expected = (m * n + k) as isize;
        if p.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected,
                got: p.degree(),
            });
        }
    }
    let entries: Vec<Vec<ScalarPoly>> = p_block
        .iter()
        .map(|p| {
            let e = h_expand(p, h);
            (0..n).map(|j| e.slice(j)).collect()
        })
        .collect();
    Ok(MatrixPoly::from_entries(&entries))
}

/// Unpacks a matrix polynomial into the vector polynomial
/// `B(x) = V(h(x)) · P_0(x)`, entry `k` being `Σ_j V_{k,j}(h(x)) x^j`.
pub fn unfold(v: &MatrixPoly, h: &HPoly) -> VectorPoly {
    let n = v.n();
    let mut hpow = ScalarPoly::one();
    let mut entries = vec![ScalarPoly::zero(); n];
    for i in 0..=v.degree().max(0) as usize {
        if v.is_zero() {
            break;
        }
        let ci = v.coeff(i);
        for (k, entry) in entries.iter_mut().enumerate() {
            for j in 0..n {
                let a = ci[(k, j)];
                if a != 0.0 {
                    *entry = entry.add(&hpow.mul(&ScalarPoly::monomial(j, a)));
                }
            }
        }
        hpow = hpow.mul(h.poly());
    }
    VectorPoly::new(entries).expect("N >= 1 by HPoly invariant")
}

/// Stacks the rows of `V_m`'s leading coefficient check: the fold of a
/// degree-graded block has a lower triangular leading coefficient with
/// nonzero diagonal.
pub fn leading_is_lower_triangular(v: &MatrixPoly, tol: f64) -> bool {
    let lead = v.leading();
    let n = v.n();
    let scale = lead.amax().max(1e-300);
    for i in 0..n {
        if lead[(i, i)].abs() <= tol * scale {
            return false;
        }
        for j in i + 1..n {
            if lead[(i, j)].abs() > tol * scale {
                return false;
            }
        }
    }
    true
}
