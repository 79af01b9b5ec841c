//! Dense scalar polynomials with real coefficients.
//!
//! Coefficients are stored ascending by power. The zero polynomial is the
//! empty coefficient list and reports degree `-1`. After every arithmetic
//! operation trailing coefficients with magnitude below
//! `PRUNE_REL * max|coeff|` are flushed so that rounding noise cannot
//! inflate the degree.

use crate::{Complex64, Error, Result};

/// Relative threshold under which trailing coefficients are treated as zero.
pub const PRUNE_REL: f64 = 1e-13;

/// A scalar polynomial `p(x) = c_0 + c_1 x + … + c_d x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPoly {
    coeffs: Vec<f64>,
}

impl ScalarPoly {
    /// Builds a polynomial from ascending coefficients, pruning the tail.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = ScalarPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        ScalarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ScalarPoly { coeffs: vec![1.0] }
    }

    /// `c · x^k`.
    pub fn monomial(k: usize, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        ScalarPoly { coeffs }
    }

    /// Degree of the polynomial; `-1` encodes the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, c| a.max(c.abs()))
    }

    fn trim(&mut self) {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            self.coeffs.clear();
            return;
        }
        let tol = PRUNE_REL * scale;
        while matches!(self.coeffs.last(), Some(&c) if c.abs() <= tol) {
            self.coeffs.pop();
        }
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        ScalarPoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q·div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::InvalidInput(
                "division by the zero polynomial".into(),
            ));
        }
        let dd = div.degree();
        let lead = div.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0.0; (self.degree() - dd + 1).max(0) as usize];
        let mut k = self.degree();
        while k >= dd {
            let c = rem[k as usize] / lead;
            let shift = (k - dd) as usize;
            if c != 0.0 {
                quo[shift] = c;
                for (j, dc) in div.coeffs.iter().enumerate() {
                    rem[shift + j] -= c * dc;
                }
            }
            rem[k as usize] = 0.0;
            k -= 1;
        }
        rem.truncate(dd.max(0) as usize);
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Self::new(coeffs)
    }

    /// The `l`-th derivative evaluated at a complex point.
    pub fn derivative_at(&self, l: usize, a: Complex64) -> Complex64 {
        let mut p = self.clone();
        for _ in 0..l {
            p = p.derivative();
        }
        p.eval(a)
    }
}

/// The fixed degree-`N` polynomial `h` that grades the basis `{x^j h^i}`.
///
/// `N = deg h ≥ 1` and the leading coefficient is nonzero by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoly {
    base: ScalarPoly,
}

impl HPoly {
    pub fn new(base: ScalarPoly) -> Result<Self> {
        if base.degree() < 1 {
            return Err(Error::InvalidInput(format!(
                "h must have degree >= 1, got degree {}",
                base.degree()
            )));
        }
        Ok(HPoly { base })
    }

    /// `h(x) = x^n + …` convenience constructor for a monic `h`.
    pub fn monic_power(n: usize) -> Self {
        HPoly {
            base: ScalarPoly::monomial(n, 1.0),
        }
    }

    /// The block size `N = deg h`.
    pub fn n(&self) -> usize {
        self.base.degree() as usize
    }

    pub fn poly(&self) -> &ScalarPoly {
        &self.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_polynomial_has_degree_minus_one() {
        assert_eq!(ScalarPoly::zero().degree(), -1);
        assert_eq!(ScalarPoly::new(vec![0.0, 0.0]).degree(), -1);
        assert_eq!(ScalarPoly::zero().eval_real(3.0), 0.0);
    }

    #[test]
    fn eval_at_origin_returns_constant_term() {
        let p = ScalarPoly::new(vec![7.0, 1.0, 2.0]);
        assert_eq!(p.eval_real(0.0), 7.0);
    }

    #[test]
    fn trailing_noise_is_pruned() {
        let p = ScalarPoly::new(vec![1.0, 2.0, 1e-16]);
        assert_eq!(p.degree(), 1);
        // a genuinely small leading coefficient survives when it dominates
        let q = ScalarPoly::new(vec![0.0, 1e-20]);
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = ScalarPoly::new(vec![1.0, -2.0, 0.5, 3.0, 1.0]);
        let d = ScalarPoly::new(vec![1.0, 0.0, 2.0]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert!(r.degree() < d.degree());
        let back = q.mul(&d).add(&r);
        for k in 0..=4 {
            assert!((back.coeff(k) - p.coeff(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let p = ScalarPoly::one();
        assert!(p.div_rem(&ScalarPoly::zero()).is_err());
    }

    #[test]
    fn derivative_and_complex_eval() {
        // p = x^2 - 1/3 at 1/sqrt(3): p = 0, p' = 2/sqrt(3)
        let p = ScalarPoly::new(vec![-1.0 / 3.0, 0.0, 1.0]);
        let a = Complex64::new(1.0 / 3.0_f64.sqrt(), 0.0);
        assert!(p.eval(a).norm() < 1e-15);
        let d1 = p.derivative_at(1, a);
        assert!((d1 - Complex64::new(2.0 / 3.0_f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn h_poly_rejects_constants() {
        assert!(HPoly::new(ScalarPoly::one()).is_err());
        assert!(HPoly::new(ScalarPoly::zero()).is_err());
        let h = HPoly::new(ScalarPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert_eq!(h.n(), 2);
    }
}
