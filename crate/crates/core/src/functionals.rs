//! Vectors of linear functionals, block moments, and the Markov matrix function.
//!
//! A vector functional `U = [u^1 … u^N]^T` is represented purely by the `N`
//! scalar moment sequences `μ^c_k = u^c(x^k)`. Measures enter only through
//! the ingestion path ([`WeightedMeasure`]); keeping the moment sequences
//! first-class makes quasi-definite but non-positive functionals ordinary
//! citizens.
//!
//! Applied to a vector polynomial `P = [p_1 … p_N]^T`, the functional
//! produces the `N×N` matrix with entry `(r, c) = u^c(p_r)`. The block
//! moments are `U_j = U(P_j)` with `P_j = h^j·[1, x, …, x^{N-1}]^T`, and the
//! block Hankel matrices stack them as `D_m[i][j] = U_{i+j}`.

use nalgebra::DMatrix;

use crate::linalg::cond_2;
use crate::poly::{HPoly, MatrixPoly, ScalarPoly, VectorPoly};
use crate::{Complex64, Error, Result};

/// A vector of `N` linear functionals given by truncated moment sequences.
///
/// All sequences share the truncation order `K_max`; `moments[c][k]` is
/// `u^{c+1}(x^k)` for `0 <= k <= K_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunctional {
    n: usize,
    k_max: usize,
    moments: Vec<Vec<f64>>,
}

impl VectorFunctional {
    pub fn new(moments: Vec<Vec<f64>>) -> Result<Self> {
        let n = moments.len();
        if n == 0 {
            return Err(Error::InvalidInput(
                "need at least one moment sequence".into(),
            ));
        }
        let len = moments[0].len();
        if len == 0 || moments.iter().any(|m| m.len() != len) {
            return Err(Error::InvalidInput(
                "all moment sequences must share one nonzero length".into(),
            ));
        }
        Ok(VectorFunctional {
            n,
            k_max: len - 1,
            moments,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn moments(&self) -> &[Vec<f64>] {
        &self.moments
    }

    /// The scalar moment `u^{c+1}(x^k)`.
    pub fn moment(&self, c: usize, k: usize) -> Result<f64> {
        self.moments[c].get(k).copied().ok_or(Error::Truncation {
            needed: k,
            have: self.k_max,
        })
    }

    /// Applies the scalar functional `u^{c+1}` to a polynomial.
    pub fn apply_poly(&self, p: &ScalarPoly, c: usize) -> Result<f64> {
        let d = p.degree();
        if d as usize > self.k_max && d >= 0 {
            return Err(Error::Truncation {
                needed: d as usize,
                have: self.k_max,
            });
        }
        let mut s = 0.0;
        for (k, &coeff) in p.coeffs().iter().enumerate() {
            s += coeff * self.moments[c][k];
        }
        Ok(s)
    }

    /// Applies the vector functional to a vector polynomial:
    /// entry `(r, c)` of the result is `u^{c+1}(B_r)`.
    pub fn apply_vector(&self, b: &VectorPoly) -> Result<DMatrix<f64>> {
        if b.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "vector polynomial has {} entries, functional expects {}",
                b.n(),
                self.n
            )));
        }
        let mut out = DMatrix::zeros(self.n, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out[(r, c)] = self.apply_poly(b.entry(r), c)?;
            }
        }
        Ok(out)
    }
}

/// The `j`-th block moment `U_j = U(P_j)`, entry `(r, c) = u^{c+1}(x^r h^j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMoment {
    pub j: usize,
    pub matrix: DMatrix<f64>,
}

/// Computes the block moment `U_j` through the monomial expansion of `x^r h^j`.
pub fn block_moment(u: &VectorFunctional, h: &HPoly, j: usize) -> Result<BlockMoment> {
    let mut ms = block_moments(u, h, j)?;
    Ok(BlockMoment {
        j,
        matrix: ms.pop().expect("j <= j"),
    })
}

/// Computes `U_0 … U_{j_max}` in one pass, sharing the `h^j` powers.
pub fn block_moments(u: &VectorFunctional, h: &HPoly, j_max: usize) -> Result<Vec<DMatrix<f64>>> {
    let n = u.n();
    if h.n() != n {
        return Err(Error::InvalidInput(format!(
            "deg h = {} does not match the functional size N = {}",
            h.n(),
            n
        )));
    }
    let needed = n - 1 + j_max * n;
    if needed > u.k_max() {
        return Err(Error::Truncation {
            needed,
            have: u.k_max(),
        });
    }
    let mut out = Vec::with_capacity(j_max + 1);
    let mut hj = ScalarPoly::one();
    for _ in 0..=j_max {
        let mut m = DMatrix::zeros(n, n);
        for r in 0..n {
            let p = hj.mul_xpow(r);
            for c in 0..n {
                m[(r, c)] = u.apply_poly(&p, c)?;
            }
        }
        out.push(m);
        hj = hj.mul(h.poly());
    }
    Ok(out)
}

/// The block Hankel matrix `D_m` with block `(i, j) = U_{i+j}`,
/// stored dense at scalar level: size `(m+1)N × (m+1)N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockHankel {
    pub m: usize,
    pub n: usize,
    pub matrix: DMatrix<f64>,
}

impl BlockHankel {
    pub fn block(&self, i: usize, j: usize) -> DMatrix<f64> {
        self.matrix
            .view((i * self.n, j * self.n), (self.n, self.n))
            .into()
    }
}

/// Assembles `D_m` from the block moments `U_0 … U_{2m}`.
pub fn hankel(u: &VectorFunctional, h: &HPoly, m: usize) -> Result<BlockHankel> {
    let n = u.n();
    let blocks = block_moments(u, h, 2 * m)?;
    let size = (m + 1) * n;
    let mut d = DMatrix::zeros(size, size);
    for i in 0..=m {
        for j in 0..=m {
            d.view_mut((i * n, j * n), (n, n)).copy_from(&blocks[i + j]);
        }
    }
    Ok(BlockHankel { m, n, matrix: d })
}

/// Per-order condition diagnostics of the leading principal submatrices of `D_m`.
#[derive(Debug, Clone)]
pub struct QuasiDefiniteReport {
    /// `true` when every leading principal submatrix has condition below tolerance.
    pub ok: bool,
    /// 2-norm condition estimate of the order-`k` leading principal
    /// submatrix, at index `k-1`.
    pub cond: Vec<f64>,
    /// First scalar order whose condition exceeds the tolerance.
    pub first_failure: Option<usize>,
}

/// Checks quasi-definiteness numerically: every leading principal submatrix
/// of `D_{m_max}` (scalar orders `1 ..= (m_max+1)N`) must have a condition
/// estimate below `cond_tol`.
///
/// Failure is a reported state rather than an error; operations that must
/// invert the minors surface [`Error::SingularMinor`] themselves.
pub fn quasi_definite_check(
    u: &VectorFunctional,
    h: &HPoly,
    m_max: usize,
    cond_tol: f64,
) -> Result<QuasiDefiniteReport> {
    let d = hankel(u, h, m_max)?;
    let size = d.matrix.nrows();
    let mut cond = Vec::with_capacity(size);
    let mut first_failure = None;
    for k in 1..=size {
        let sub: DMatrix<f64> = d.matrix.view((0, 0), (k, k)).into();
        let c = cond_2(&sub);
        let below = c < cond_tol; // NaN condition estimates count as failures
        if !below && first_failure.is_none() {
            first_failure = Some(k);
        }
        cond.push(c);
    }
    Ok(QuasiDefiniteReport {
        ok: first_failure.is_none(),
        cond,
        first_failure,
    })
}

/// Default condition tolerance used when the caller does not supply one.
pub const DEFAULT_COND_TOL: f64 = 1e12;

/// The moment functional applied to a matrix polynomial: `Σ_i P_i U_i`.
///
/// This is the exact value the Gauss-type quadrature rules approximate;
/// the moments of the underlying matrix measure are identified with the
/// block moments `U_i` of the functional.
pub fn moment_functional(u: &VectorFunctional, h: &HPoly, p: &MatrixPoly) -> Result<DMatrix<f64>> {
    let n = u.n();
    if p.is_zero() {
        return Ok(DMatrix::zeros(n, n));
    }
    let deg = p.degree() as usize;
    let blocks = block_moments(u, h, deg)?;
    let mut acc = DMatrix::zeros(n, n);
    for (i, b) in blocks.iter().enumerate() {
        acc += p.coeff(i) * b;
    }
    Ok(acc)
}

/// Truncated expansion of the Markov matrix function
/// `F(z) = Σ_n U_n z^{-(n+1)}`.
#[derive(Debug, Clone)]
pub struct MarkovSeries {
    pub coeffs: Vec<DMatrix<f64>>,
    /// User-supplied bound for `sup |h|` over the support; the partial sums
    /// converge for `|z| > radius_hint`. Diagnostic only, never inferred.
    pub radius_hint: f64,
}

impl MarkovSeries {
    /// Builds the series from block moments `U_0 … U_k`.
    pub fn from_functional(
        u: &VectorFunctional,
        h: &HPoly,
        k: usize,
        radius_hint: f64,
    ) -> Result<Self> {
        Ok(MarkovSeries {
            coeffs: block_moments(u, h, k)?,
            radius_hint,
        })
    }

    /// Default truncation depth for a construction of depth `m_max`.
    pub fn default_depth(m_max: usize, n: usize) -> usize {
        2 * m_max * n + 16
    }
}

/// Evaluates the truncated Markov series `Σ_{n<=K} U_n z^{-(n+1)}`.
///
/// Logs a warning when `|z|` is not beyond the radius hint or when the last
/// retained term is not negligible against the partial sum.
pub fn markov_eval_series(ms: &MarkovSeries, z: Complex64) -> Result<DMatrix<Complex64>> {
    if z.norm() == 0.0 {
        return Err(Error::NearSingularPoint {
            what: "Markov series evaluated at z = 0".into(),
        });
    }
    if z.norm() <= ms.radius_hint {
        log::warn!(
            "Markov series evaluated at |z| = {:.3e} inside the radius hint {:.3e}",
            z.norm(),
            ms.radius_hint
        );
    }
    let n = ms.coeffs.first().map_or(0, |c| c.nrows());
    let zinv = Complex64::new(1.0, 0.0) / z;
    let mut acc = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    let mut w = zinv;
    let mut last_term = 0.0;
    for c in &ms.coeffs {
        let term = c.map(|x| Complex64::new(x, 0.0) * w);
        last_term = term.iter().fold(0.0_f64, |a, e| a.max(e.norm()));
        acc += term;
        w *= zinv;
    }
    let scale = acc.iter().fold(0.0, |a: f64, e| a.max(e.norm()));
    if scale > 0.0 && last_term > 1e-12 * scale {
        log::warn!(
            "Markov series tail ratio {:.3e} above 1e-12; increase the truncation depth",
            last_term / scale
        );
    }
    Ok(acc)
}

/// A vector of weight functions on a common interval, the ingestion path
/// that turns measures into moment sequences.
pub struct WeightedMeasure {
    weights: Vec<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
    a: f64,
    b: f64,
}

impl WeightedMeasure {
    pub fn new(
        weights: Vec<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
        a: f64,
        b: f64,
    ) -> Result<Self> {
        if weights.is_empty() || a >= b || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(
                "need at least one weight and a finite interval a < b".into(),
            ));
        }
        Ok(WeightedMeasure { weights, a, b })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Computes the moment sequences `μ^c_k = ∫ x^k w_c(x) dx`, `k <= k_max`,
    /// by adaptive Gauss–Kronrod panels with relative target `1e-12`.
    pub fn ingest(&self, k_max: usize) -> Result<VectorFunctional> {
        let mut moments = Vec::with_capacity(self.weights.len());
        for w in &self.weights {
            let mut seq = Vec::with_capacity(k_max + 1);
            for k in 0..=k_max {
                let v = integrate_adaptive(&|x: f64| x.powi(k as i32) * w(x), self.a, self.b)?;
                seq.push(v);
            }
            moments.push(seq);
        }
        VectorFunctional::new(moments)
    }

    /// Direct quadrature evaluation of the Markov matrix function:
    /// entry `(r, c) = ∫ x^r w_c(x) / (z - h(x)) dx`.
    ///
    /// `z` must stay away from the image of the interval under `h`; the
    /// image is sampled densely and a distance below `1e-8` is rejected.
    pub fn markov_eval(&self, h: &HPoly, z: Complex64) -> Result<DMatrix<Complex64>> {
        let n = self.n();
        if h.n() != n {
            return Err(Error::InvalidInput(format!(
                "deg h = {} does not match the measure size N = {}",
                h.n(),
                n
            )));
        }
        let samples = 1024;
        for i in 0..=samples {
            let x = self.a + (self.b - self.a) * i as f64 / samples as f64;
            let hx = h.poly().eval_real(x);
            if (z - Complex64::new(hx, 0.0)).norm() < 1e-8 {
                return Err(Error::NearSingularPoint {
                    what: format!("z = {z} within 1e-8 of h({x})"),
                });
            }
        }
        let mut out = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for r in 0..n {
            for (c, w) in self.weights.iter().enumerate() {
                let re = integrate_adaptive(
                    &|x: f64| {
                        let d = z - Complex64::new(h.poly().eval_real(x), 0.0);
                        (x.powi(r as i32) * w(x) * (1.0 / d)).re
                    },
                    self.a,
                    self.b,
                )?;
                let im = integrate_adaptive(
                    &|x: f64| {
                        let d = z - Complex64::new(h.poly().eval_real(x), 0.0);
                        (x.powi(r as i32) * w(x) * (1.0 / d)).im
                    },
                    self.a,
                    self.b,
                )?;
                out[(r, c)] = Complex64::new(re, im);
            }
        }
        Ok(out)
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule (positive half).
const GK_XK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut k = 0.0;
    let mut g = 0.0;
    // odd Kronrod indices (and the center, i = 7) are the embedded Gauss nodes
    for (i, (&x, &wk)) in GK_XK.iter().zip(GK_WK.iter()).enumerate() {
        let dx = hw * x;
        let pair = if x == 0.0 {
            f(c)
        } else {
            f(c - dx) + f(c + dx)
        };
        k += wk * pair;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * pair;
        }
    }
    (k * hw, (k - g).abs() * hw)
}

/// Adaptive panel integration with the embedded 7/15 Gauss–Kronrod pair.
pub fn integrate_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    const ABS_TOL: f64 = 1e-14;
    const REL_TOL: f64 = 1e-12;
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: (f64, f64),
        depth: usize,
        scale: f64,
    ) -> Result<f64> {
        let (value, err) = whole;
        if !value.is_finite() {
            return Err(Error::NonFiniteIntegral);
        }
        if err <= ABS_TOL + REL_TOL * scale.max(value.abs()) || depth >= 48 {
            return Ok(value);
        }
        let m = 0.5 * (a + b);
        let left = gk15(f, a, m);
        let right = gk15(f, m, b);
        let scale = scale.max(left.0.abs() + right.0.abs());
        Ok(recurse(f, a, m, left, depth + 1, scale)? + recurse(f, m, b, right, depth + 1, scale)?)
    }
    let whole = gk15(f, a, b);
    let v = recurse(f, a, b, whole, 0, whole.0.abs())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegral)
    }
}
