//! JSON file formats consumed and produced by the CLI and the test harness.
//!
//! Four artifact kinds exist:
//!
//! * moment files: `{"N", "h", "K_max", "moments", "radius_hint"?}`
//! * family exports: `{"N", "h", "V", "G", "Delta", "Theta",
//!   "biorthogonality_deviation"}`
//! * scalar recurrence files: `{"N", "h", "c": [{"upper","lower","value"}],
//!   "initial"}`
//! * quadrature rule exports: `{"nodes": [{"re","im","mult"}], "weights"}`
//!
//! Matrices are nested row-major arrays; matrix polynomials are arrays of
//! coefficient matrices ascending by power; complex numbers are
//! `{"re", "im"}` objects. Serialization goes through `serde_json`, whose
//! shortest round-trip float formatting keeps byte-identical reports for
//! identical inputs.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::orthogonal::{LeftFamily, RightFamily};
use crate::poly::{HPoly, MatrixPoly, ScalarPoly};
use crate::recurrence::{RecurrenceCoeffs, ScalarRecurrence};
use crate::spectral::QuadratureRule;
use crate::{Complex64, Error, Result};

pub type MatrixJson = Vec<Vec<f64>>;
pub type MatPolyJson = Vec<MatrixJson>;

pub fn matrix_to_json(m: &DMatrix<f64>) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<DMatrix<f64>> {
    let rows = j.len();
    if rows == 0 || j.iter().any(|r| r.len() != j[0].len()) {
        return Err(Error::InvalidInput("ragged or empty matrix in JSON".into()));
    }
    let cols = j[0].len();
    Ok(DMatrix::from_fn(rows, cols, |i, jj| j[i][jj]))
}

pub fn matpoly_to_json(p: &MatrixPoly) -> MatPolyJson {
    p.coeffs().iter().map(matrix_to_json).collect()
}

pub fn matpoly_from_json(j: &MatPolyJson, n: usize) -> Result<MatrixPoly> {
    let coeffs = j
        .iter()
        .map(|m| {
            let m = matrix_from_json(m)?;
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::InvalidInput(format!(
                    "coefficient matrix is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixPoly::new(n, coeffs))
}

/// Moment file: the serialized form of a [`crate::functionals::VectorFunctional`]
/// together with the basis polynomial `h`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentFile {
    #[serde(rename = "N")]
    pub n: usize,
    /// Coefficients of `h`, ascending by power; must have degree exactly `N`.
    pub h: Vec<f64>,
    #[serde(rename = "K_max")]
    pub k_max: usize,
    /// `moments[c][k] = u^{c+1}(x^k)`, each row of length `K_max + 1`.
    pub moments: Vec<Vec<f64>>,
    /// Optional bound for `sup |h|` over the support, used by the Markov
    /// diagnostics; never inferred from the moments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_hint: Option<f64>,
}

impl MomentFile {
    pub fn to_functional(&self) -> Result<(crate::functionals::VectorFunctional, HPoly)> {
        let h = HPoly::new(ScalarPoly::new(self.h.clone()))?;
        if h.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "deg h = {} but N = {}",
                h.n(),
                self.n
            )));
        }
        if self.moments.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "{} moment sequences for N = {}",
                self.moments.len(),
                self.n
            )));
        }
        if self.moments.iter().any(|m| m.len() != self.k_max + 1) {
            return Err(Error::InvalidInput(
                "every moment sequence must have K_max + 1 entries".into(),
            ));
        }
        let u = crate::functionals::VectorFunctional::new(self.moments.clone())?;
        Ok((u, h))
    }
}

/// Family export: both families plus the recomputed bi-orthogonality deviation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: Vec<f64>,
    #[serde(rename = "V")]
    pub v: Vec<MatPolyJson>,
    #[serde(rename = "G")]
    pub g: Vec<MatPolyJson>,
    #[serde(rename = "Delta")]
    pub delta: Vec<MatrixJson>,
    #[serde(rename = "Theta")]
    pub theta: Vec<MatrixJson>,
    pub biorthogonality_deviation: f64,
}

impl FamilyFile {
    pub fn from_families(
        n: usize,
        h: &HPoly,
        left: &LeftFamily,
        right: &RightFamily,
        deviation: f64,
    ) -> Self {
        FamilyFile {
            n,
            h: h.poly().coeffs().to_vec(),
            v: left.v.iter().map(matpoly_to_json).collect(),
            g: right.g.iter().map(matpoly_to_json).collect(),
            delta: left.delta.iter().map(matrix_to_json).collect(),
            theta: right.theta.iter().map(matrix_to_json).collect(),
            biorthogonality_deviation: deviation,
        }
    }

    pub fn to_families(&self) -> Result<(LeftFamily, RightFamily)> {
        let v = self
            .v
            .iter()
            .map(|p| matpoly_from_json(p, self.n))
            .collect::<Result<Vec<_>>>()?;
        let delta = self
            .delta
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        let g = self
            .g
            .iter()
            .map(|p| matpoly_from_json(p, self.n))
            .collect::<Result<Vec<_>>>()?;
        let theta = self
            .theta
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok((LeftFamily { v, delta }, RightFamily { g, theta }))
    }
}

/// One scalar recurrence coefficient `c^{upper}_{lower} = value`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarCoeffJson {
    pub upper: i64,
    pub lower: i64,
    pub value: f64,
}

/// Scalar recurrence file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarRecurrenceFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub h: Vec<f64>,
    pub c: Vec<ScalarCoeffJson>,
    /// Initial polynomials `p_0 .. p_{N-1}` as ascending coefficient lists.
    pub initial: Vec<Vec<f64>>,
}

impl ScalarRecurrenceFile {
    pub fn from_recurrence(sr: &ScalarRecurrence) -> Self {
        ScalarRecurrenceFile {
            n: sr.n,
            h: sr.h.poly().coeffs().to_vec(),
            c: sr
                .c
                .iter()
                .map(|(&(upper, lower), &value)| ScalarCoeffJson {
                    upper,
                    lower,
                    value,
                })
                .collect(),
            initial: sr.initial.iter().map(|p| p.coeffs().to_vec()).collect(),
        }
    }

    pub fn to_recurrence(&self) -> Result<ScalarRecurrence> {
        let h = HPoly::new(ScalarPoly::new(self.h.clone()))?;
        if h.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "deg h = {} but N = {}",
                h.n(),
                self.n
            )));
        }
        let mut c = BTreeMap::new();
        for e in &self.c {
            c.insert((e.upper, e.lower), e.value);
        }
        let initial = self
            .initial
            .iter()
            .map(|coeffs| ScalarPoly::new(coeffs.clone()))
            .collect();
        ScalarRecurrence::new(h, c, initial)
    }
}

/// Block recurrence coefficients export.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecurrenceFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<MatrixJson>,
    #[serde(rename = "B")]
    pub b: Vec<MatrixJson>,
    /// `C_1, C_2, …` (no `C_0` exists).
    #[serde(rename = "C")]
    pub c: Vec<MatrixJson>,
    #[serde(rename = "Delta")]
    pub delta: Vec<MatrixJson>,
    /// Coefficientwise residual of the block recurrence on the family it
    /// was extracted from.
    pub residual: f64,
}

impl RecurrenceFile {
    pub fn from_coeffs(rc: &RecurrenceCoeffs, delta: &[DMatrix<f64>], residual: f64) -> Self {
        RecurrenceFile {
            n: rc.n(),
            a: rc.a.iter().map(matrix_to_json).collect(),
            b: rc.b.iter().map(matrix_to_json).collect(),
            c: rc.c.iter().map(matrix_to_json).collect(),
            delta: delta.iter().map(matrix_to_json).collect(),
            residual,
        }
    }

    pub fn to_coeffs(&self) -> Result<RecurrenceCoeffs> {
        Ok(RecurrenceCoeffs {
            a: self
                .a
                .iter()
                .map(matrix_from_json)
                .collect::<Result<Vec<_>>>()?,
            b: self
                .b
                .iter()
                .map(matrix_from_json)
                .collect::<Result<Vec<_>>>()?,
            c: self
                .c
                .iter()
                .map(matrix_from_json)
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<&ComplexJson> for Complex64 {
    fn from(z: &ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeJson {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

/// Quadrature rule export, with an exactness table appended by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub nodes: Vec<NodeJson>,
    /// One `N×N` complex matrix per node.
    pub weights: Vec<Vec<Vec<ComplexJson>>>,
    /// Max deviation from the moment functional per probed degree.
    pub exactness: Vec<ExactnessRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactnessRow {
    pub degree: usize,
    pub deviation: f64,
}

impl RuleFile {
    pub fn from_rule(
        n: usize,
        m: usize,
        rule: &QuadratureRule,
        exactness: Vec<ExactnessRow>,
    ) -> Self {
        RuleFile {
            n,
            m,
            nodes: rule
                .zeros
                .nodes
                .iter()
                .zip(&rule.zeros.mults)
                .map(|(z, &mult)| NodeJson {
                    re: z.re,
                    im: z.im,
                    mult,
                })
                .collect(),
            weights: rule
                .weights
                .iter()
                .map(|w| {
                    (0..w.nrows())
                        .map(|i| (0..w.ncols()).map(|j| w[(i, j)].into()).collect())
                        .collect()
                })
                .collect(),
            exactness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_file_round_trip() {
        let mf = MomentFile {
            n: 2,
            h: vec![0.0, 0.0, 1.0],
            k_max: 5,
            moments: vec![vec![1.0; 6], vec![0.5; 6]],
            radius_hint: Some(1.0),
        };
        let s = serde_json::to_string(&mf).unwrap();
        let back: MomentFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back.n, 2);
        assert_eq!(back.moments[1][3], 0.5);
        let (u, h) = back.to_functional().unwrap();
        assert_eq!(u.n(), 2);
        assert_eq!(h.n(), 2);
    }

    #[test]
    fn moment_file_rejects_mismatched_h() {
        let mf = MomentFile {
            n: 2,
            h: vec![0.0, 1.0],
            k_max: 3,
            moments: vec![vec![1.0; 4], vec![0.0; 4]],
            radius_hint: None,
        };
        assert!(mf.to_functional().is_err());
    }

    #[test]
    fn scalar_recurrence_file_round_trip() {
        let sr = crate::recurrence::legendre_five_term(6);
        let file = ScalarRecurrenceFile::from_recurrence(&sr);
        let s = serde_json::to_string(&file).unwrap();
        let back: ScalarRecurrenceFile = serde_json::from_str(&s).unwrap();
        let sr2 = back.to_recurrence().unwrap();
        assert_eq!(sr.c, sr2.c);
        assert_eq!(sr.initial, sr2.initial);
    }

    #[test]
    fn deterministic_serialization() {
        let mf = MomentFile {
            n: 1,
            h: vec![0.0, 1.0],
            k_max: 2,
            moments: vec![vec![2.0, 0.0, 2.0 / 3.0]],
            radius_hint: None,
        };
        let a = serde_json::to_string_pretty(&mf).unwrap();
        let b = serde_json::to_string_pretty(&mf).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("0.6666666666666666"));
    }
}
