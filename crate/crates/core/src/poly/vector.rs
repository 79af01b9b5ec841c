//! Column vectors of scalar polynomials.

use nalgebra::DMatrix;

use super::scalar::ScalarPoly;
use crate::{Complex64, Error, Result};

/// A column vector of `N` scalar polynomials, e.g. `B_m = [p_mN … p_(m+1)N-1]^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPoly {
    entries: Vec<ScalarPoly>,
}

impl VectorPoly {
    pub fn new(entries: Vec<ScalarPoly>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput(
                "vector polynomial needs N >= 1 entries".into(),
            ));
        }
        Ok(VectorPoly { entries })
    }

    /// `P_0 = [1, x, …, x^{N-1}]^T`.
    pub fn p0(n: usize) -> Self {
        VectorPoly {
            entries: (0..n).map(|k| ScalarPoly::monomial(k, 1.0)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        VectorPoly {
            entries: vec![ScalarPoly::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize) -> &ScalarPoly {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[ScalarPoly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ScalarPoly> {
        self.entries
    }

    /// Entrywise multiplication by a scalar polynomial.
    pub fn mul_scalar_poly(&self, s: &ScalarPoly) -> Self {
        VectorPoly {
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    /// Left multiplication by a constant matrix: `(T·B)_r = Σ_s T[r,s] B_s`.
    pub fn left_mul(&self, t: &DMatrix<f64>) -> Self {
        let n = self.n();
        assert_eq!(t.ncols(), n, "matrix/vector size mismatch");
        let entries = (0..t.nrows())
            .map(|r| {
                let mut acc = ScalarPoly::zero();
                for s in 0..n {
                    acc = acc.add(&self.entries[s].scale(t[(r, s)]));
                }
                acc
            })
            .collect();
        VectorPoly { entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorPoly {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VectorPoly {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.eval(z)).collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0, |a, e| a.max(e.max_abs_coeff()))
    }
}
