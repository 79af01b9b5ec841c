//! Spectral machinery: block Jacobi matrices, zeros, first-kind associated
//! polynomials, matrix Gauss-type quadrature, Christoffel–Darboux residuals,
//! Hermite–Padé order checks, and Markov approximants.
//!
//! The zeros of `V_m` (the roots of the scalar polynomial `det V_m`) are the
//! eigenvalues of the leading `mN×mN` principal submatrix of the `N`-block
//! Jacobi matrix, multiplicities included. Since the measure need not be
//! positive definite the nodes may leave the real line, so everything here
//! runs over complex arithmetic.

use nalgebra::DMatrix;

use crate::functionals::{block_moments, moment_functional, VectorFunctional};
use crate::linalg::{eigenvalues, inverse_c, max_abs_c, to_complex};
use crate::orthogonal::{LeftFamily, RightFamily};
use crate::poly::matrix::{adjugate, adjugate_poly_derivatives, det_poly};
use crate::poly::{HPoly, MatrixPoly};
use crate::recurrence::RecurrenceCoeffs;
use crate::{Complex64, Error, Result};

/// Default relative gap under which two eigenvalues merge into one node.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// The leading `mN×mN` principal submatrix of the `N`-block Jacobi matrix
/// (diagonal `B_0..B_{m-1}`, superdiagonal `A_0..A_{m-2}`, subdiagonal
/// `C_1..C_{m-1}`).
#[derive(Debug, Clone)]
pub struct BlockJacobi {
    pub m: usize,
    pub n: usize,
    pub matrix: DMatrix<f64>,
}

/// Assembles `J_{mN}` from recurrence coefficients.
pub fn block_jacobi(rc: &RecurrenceCoeffs, m: usize) -> Result<BlockJacobi> {
    let n = rc.n();
    if m == 0 {
        return Err(Error::InvalidInput("block Jacobi needs m >= 1".into()));
    }
    if rc.b.len() < m || rc.a.len() + 1 < m || rc.c.len() + 1 < m {
        return Err(Error::InvalidInput(format!(
            "block Jacobi of order {m} needs B_0..B_{}, A_0..A_{}, C_1..C_{}",
            m - 1,
            m.saturating_sub(2),
            m - 1
        )));
    }
    let mut j = DMatrix::zeros(m * n, m * n);
    for i in 0..m {
        j.view_mut((i * n, i * n), (n, n)).copy_from(&rc.b[i]);
        if i + 1 < m {
            j.view_mut((i * n, (i + 1) * n), (n, n)).copy_from(&rc.a[i]);
            j.view_mut(((i + 1) * n, i * n), (n, n))
                .copy_from(rc.c_at(i + 1));
        }
    }
    Ok(BlockJacobi { m, n, matrix: j })
}

/// Distinct zeros with multiplicities, sorted by real part then imaginary part.
///
/// The total multiplicity equals the degree of `det V_m`, i.e. `mN`; for
/// real coefficient data the set is closed under conjugation.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub nodes: Vec<Complex64>,
    pub mults: Vec<usize>,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.mults.iter().sum()
    }

    /// The multiset of zeros with each node repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.nodes
            .iter()
            .zip(&self.mults)
            .flat_map(|(&z, &l)| std::iter::repeat_n(z, l))
            .collect()
    }

    /// Clusters raw eigenvalues into nodes: connected components of the
    /// graph that links values within `tol·(1 + |λ|)`, each represented by
    /// its mean.
    #[allow(clippy::needless_range_loop)]
    pub fn from_raw(mut raw: Vec<Complex64>, tol: f64) -> Self {
        raw.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        let k = raw.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for i in 0..k {
            for j in i + 1..k {
                let gap = (raw[i] - raw[j]).norm();
                if gap <= tol * (1.0 + raw[i].norm().max(raw[j].norm())) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
        for i in 0..k {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(raw[i]);
        }
        let mut pairs: Vec<(Complex64, usize)> = groups
            .values()
            .map(|g| {
                let sum: Complex64 = g.iter().sum();
                (sum / g.len() as f64, g.len())
            })
            .collect();
        pairs.sort_by(|a, b| {
            a.0.re
                .partial_cmp(&b.0.re)
                .unwrap()
                .then(a.0.im.partial_cmp(&b.0.im).unwrap())
        });
        ZeroSet {
            nodes: pairs.iter().map(|p| p.0).collect(),
            mults: pairs.iter().map(|p| p.1).collect(),
        }
    }
}

/// Zeros of `V_m` as the eigenvalues of `J_{mN}`, clustered into
/// multiplicities with the given tolerance (default
/// [`DEFAULT_CLUSTER_TOL`]).
pub fn zeros_via_jacobi(
    rc: &RecurrenceCoeffs,
    m: usize,
    cluster_tol: Option<f64>,
) -> Result<ZeroSet> {
    let j = block_jacobi(rc, m)?;
    let raw = eigenvalues(&j.matrix)?;
    Ok(ZeroSet::from_raw(
        raw,
        cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL),
    ))
}

/// Zeros of `V_m` as the roots of the symbolic determinant, found through
/// the companion matrix of `det V_m`. The independent cross-check for
/// [`zeros_via_jacobi`].
pub fn zeros_via_det(v_m: &MatrixPoly, cluster_tol: Option<f64>) -> Result<ZeroSet> {
    let d = det_poly(v_m);
    let expected = v_m.n() as isize * v_m.degree().max(0);
    if d.degree() != expected {
        return Err(Error::DegreeDefect {
            n: expected.max(0) as usize,
        });
    }
    let deg = d.degree() as usize;
    if deg == 0 {
        return Ok(ZeroSet {
            nodes: vec![],
            mults: vec![],
        });
    }
    let lead = d.leading();
    let mut comp = DMatrix::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -d.coeff(i) / lead;
    }
    let raw = eigenvalues(&comp)?;
    Ok(ZeroSet::from_raw(
        raw,
        cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL),
    ))
}

/// First-kind associated polynomial on the left:
/// `B^{(1)}_m(z) = U_x((V_{m+1}(z) - V_{m+1}(h(x)))/(z - h(x)) · P_0(x))
///              = Σ_i Σ_{l<i} V_{m+1,i} z^{i-1-l} U_l`.
pub fn assoc_first_left(
    v_next: &MatrixPoly,
    u: &VectorFunctional,
    h: &HPoly,
) -> Result<MatrixPoly> {
    let n = v_next.n();
    let deg = v_next.degree();
    if deg <= 0 {
        return Ok(MatrixPoly::zero(n));
    }
    let blocks = block_moments(u, h, deg as usize - 1)?;
    let mut coeffs = vec![DMatrix::zeros(n, n); deg as usize];
    for i in 1..=deg as usize {
        let vi = v_next.coeff(i);
        for l in 0..i {
            coeffs[i - 1 - l] += &vi * &blocks[l];
        }
    }
    Ok(MatrixPoly::new(n, coeffs))
}

/// First-kind associated polynomial on the right:
/// `G^{(1)}_m(z) = [((G^T_{m+1}(z) - G^T_{m+1}(h(x)))/(z - h(x))) U_x](P_0)
///              = Σ_i Σ_{l<i} z^{i-1-l} U_l β_i^{m+1}`.
pub fn assoc_first_right(
    g_next: &MatrixPoly,
    u: &VectorFunctional,
    h: &HPoly,
) -> Result<MatrixPoly> {
    let n = g_next.n();
    let deg = g_next.degree();
    if deg <= 0 {
        return Ok(MatrixPoly::zero(n));
    }
    let blocks = block_moments(u, h, deg as usize - 1)?;
    let mut coeffs = vec![DMatrix::zeros(n, n); deg as usize];
    for i in 1..=deg as usize {
        let gi = g_next.coeff(i);
        for l in 0..i {
            coeffs[i - 1 - l] += &blocks[l] * &gi;
        }
    }
    Ok(MatrixPoly::new(n, coeffs))
}

/// Both sequences of first-kind associated polynomials,
/// `B^{(1)}_m` from `V_{m+1}` and `G^{(1)}_m` from `G_{m+1}`.
#[derive(Debug, Clone)]
pub struct FirstKindFamily {
    pub bq: Vec<MatrixPoly>,
    pub gq: Vec<MatrixPoly>,
}

pub fn first_kind_family(
    left: &LeftFamily,
    right: &RightFamily,
    u: &VectorFunctional,
    h: &HPoly,
) -> Result<FirstKindFamily> {
    let mut bq = Vec::new();
    let mut gq = Vec::new();
    for m in 1..left.len() {
        bq.push(assoc_first_left(&left.v[m], u, h)?);
    }
    for m in 1..right.len() {
        gq.push(assoc_first_right(&right.g[m], u, h)?);
    }
    Ok(FirstKindFamily { bq, gq })
}

/// A matrix Gauss-type quadrature rule: distinct nodes `x_{m,k}` with
/// multiplicities `l_k` and `N×N` weight matrices `Γ_{m,k}`.
///
/// The rule reproduces the moment functional `Σ_i P_i U_i` exactly for
/// matrix polynomials `P` of degree `<= 2m-1`; `Σ_k Γ_{m,k} = U_0`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub zeros: ZeroSet,
    pub weights: Vec<DMatrix<Complex64>>,
}

impl QuadratureRule {
    pub fn n(&self) -> usize {
        self.weights.first().map_or(0, |w| w.nrows())
    }
}

/// Builds the order-`m` rule from a left family of length `>= m`:
/// nodes are the zeros of `V_m`, weights
/// `Γ_{m,k} = l_k / (det V_m)^{(l_k)}(x_k) · (Adj V_m)^{(l_k-1)}(x_k) · B^{(1)}_{m-1}(x_k)`.
///
/// Simple zeros take the numeric-adjugate path; multiple zeros fall back to
/// symbolic adjugate derivatives.
pub fn quadrature_rule(
    left: &LeftFamily,
    u: &VectorFunctional,
    h: &HPoly,
    m: usize,
    cluster_tol: Option<f64>,
) -> Result<QuadratureRule> {
    if m == 0 || m > left.len() {
        return Err(Error::InvalidInput(format!(
            "quadrature order m={m} needs 1 <= m <= family length {}",
            left.len().saturating_sub(1).max(1)
        )));
    }
    let v_m = &left.v[m];
    let zeros = zeros_via_det(v_m, cluster_tol)?;
    let bq_prev = assoc_first_left(v_m, u, h)?;
    quadrature_rule_from_zeros(v_m, &bq_prev, &zeros)
}

/// The weight assembly once nodes and `B^{(1)}_{m-1}` are known.
pub fn quadrature_rule_from_zeros(
    v_m: &MatrixPoly,
    bq_prev: &MatrixPoly,
    zeros: &ZeroSet,
) -> Result<QuadratureRule> {
    let det = det_poly(v_m);
    let det_scale = det.max_abs_coeff().max(1e-300);
    let mut weights = Vec::with_capacity(zeros.len());
    for (k, (&x, &lk)) in zeros.nodes.iter().zip(&zeros.mults).enumerate() {
        let dl = det.derivative_at(lk, x);
        if dl.norm() <= 1e-10 * det_scale {
            return Err(Error::MultiplicityMismatch { node: k, mult: lk });
        }
        let adj_part = if lk == 1 {
            adjugate(&v_m.eval(x))
        } else {
            adjugate_poly_derivatives(v_m, x, lk - 1)
                .pop()
                .expect("orders 0..=lk-1 are returned")
        };
        let scale = Complex64::new(lk as f64, 0.0) / dl;
        let w = (&adj_part * &bq_prev.eval(x)) * scale;
        weights.push(w);
    }
    Ok(QuadratureRule {
        zeros: zeros.clone(),
        weights,
    })
}

/// Applies the rule to a matrix polynomial: `Σ_k P(x_{m,k}) Γ_{m,k}`.
pub fn quadrature_apply(rule: &QuadratureRule, p: &MatrixPoly) -> DMatrix<Complex64> {
    let n = rule.n();
    let mut acc = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (x, w) in rule.zeros.nodes.iter().zip(&rule.weights) {
        acc += p.eval(*x) * w;
    }
    acc
}

/// Partial-fraction coefficients of `P(t)·V_m(t)^{-1}` for `deg P <= m-1`:
/// `C_{m,k} = l_k / (det V_m)^{(l_k)}(x_k) · P(x_k) · (Adj V_m)^{(l_k-1)}(x_k)`.
pub fn partial_fraction_coeffs(
    v_m: &MatrixPoly,
    p: &MatrixPoly,
    zeros: &ZeroSet,
) -> Result<Vec<DMatrix<Complex64>>> {
    let det = det_poly(v_m);
    let det_scale = det.max_abs_coeff().max(1e-300);
    let mut out = Vec::with_capacity(zeros.len());
    for (k, (&x, &lk)) in zeros.nodes.iter().zip(&zeros.mults).enumerate() {
        let dl = det.derivative_at(lk, x);
        if dl.norm() <= 1e-10 * det_scale {
            return Err(Error::MultiplicityMismatch { node: k, mult: lk });
        }
        let adj_part = if lk == 1 {
            adjugate(&v_m.eval(x))
        } else {
            adjugate_poly_derivatives(v_m, x, lk - 1)
                .pop()
                .expect("orders 0..=lk-1 are returned")
        };
        let scale = Complex64::new(lk as f64, 0.0) / dl;
        out.push((p.eval(x) * adj_part) * scale);
    }
    Ok(out)
}

/// Residual of the Christoffel–Darboux formula at one `(x, z)` pair:
/// `‖(x-z)·Σ_{k<=m} G_k(z)V_k(x) - [G_m(z)A_m V_{m+1}(x) - G_{m+1}(z)C_{m+1}V_m(x)]‖`
/// relative to the magnitude of the terms involved.
pub fn cd_residual(
    left: &LeftFamily,
    right: &RightFamily,
    rc: &RecurrenceCoeffs,
    m: usize,
    x: Complex64,
    z: Complex64,
) -> Result<f64> {
    if m + 1 >= left.len() || m + 1 >= right.len() || m >= rc.a.len() || m + 1 > rc.c.len() {
        return Err(Error::InvalidInput(format!(
            "Christoffel-Darboux at order {m} needs families of length >= {} and coefficients A_m, C_{}",
            m + 2,
            m + 1
        )));
    }
    let n = left.n();
    let mut sum = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for k in 0..=m {
        sum += right.g[k].eval(z) * left.v[k].eval(x);
    }
    let lhs = sum * (x - z);
    let t1 = right.g[m].eval(z) * to_complex(&rc.a[m]) * left.v[m + 1].eval(x);
    let t2 = right.g[m + 1].eval(z) * to_complex(rc.c_at(m + 1)) * left.v[m].eval(x);
    let rhs = &t1 - &t2;
    let scale = max_abs_c(&lhs)
        .max(max_abs_c(&t1))
        .max(max_abs_c(&t2))
        .max(1.0);
    Ok(max_abs_c(&(lhs - rhs)) / scale)
}

/// Residuals of the three confluent Christoffel–Darboux identities at `x`:
///
/// * `G_m A_m V_{m+1} - G_{m+1} C_{m+1} V_m = 0`
/// * `Σ_{k<=m} G_k V_k = G_m A_m V'_{m+1} - G_{m+1} C_{m+1} V'_m`
/// * `Σ_{k<=m} G_k V_k = G'_{m+1} C_{m+1} V_m - G'_m A_m V_{m+1}`
///
/// using symbolic derivatives of the matrix polynomials.
pub fn cd_confluent_residuals(
    left: &LeftFamily,
    right: &RightFamily,
    rc: &RecurrenceCoeffs,
    m: usize,
    x: Complex64,
) -> Result<[f64; 3]> {
    if m + 1 >= left.len() || m + 1 >= right.len() || m >= rc.a.len() || m + 1 > rc.c.len() {
        return Err(Error::InvalidInput(format!(
            "confluent Christoffel-Darboux needs order {} families",
            m + 2
        )));
    }
    let n = left.n();
    let a_m = to_complex(&rc.a[m]);
    let c_m1 = to_complex(rc.c_at(m + 1));
    let gm = right.g[m].eval(x);
    let gm1 = right.g[m + 1].eval(x);
    let vm = left.v[m].eval(x);
    let vm1 = left.v[m + 1].eval(x);
    let dgm = right.g[m].derivative().eval(x);
    let dgm1 = right.g[m + 1].derivative().eval(x);
    let dvm = left.v[m].derivative().eval(x);
    let dvm1 = left.v[m + 1].derivative().eval(x);
    let mut kernel = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for k in 0..=m {
        kernel += right.g[k].eval(x) * left.v[k].eval(x);
    }
    let r0_lhs = &gm * &a_m * &vm1;
    let r0_rhs = &gm1 * &c_m1 * &vm;
    let s0 = max_abs_c(&r0_lhs).max(max_abs_c(&r0_rhs)).max(1.0);
    let r0 = max_abs_c(&(&r0_lhs - &r0_rhs)) / s0;

    let r1_rhs = &gm * &a_m * &dvm1 - &gm1 * &c_m1 * &dvm;
    let s1 = max_abs_c(&kernel).max(max_abs_c(&r1_rhs)).max(1.0);
    let r1 = max_abs_c(&(&kernel - &r1_rhs)) / s1;

    let r2_rhs = &dgm1 * &c_m1 * &vm - &dgm * &a_m * &vm1;
    let s2 = max_abs_c(&kernel).max(max_abs_c(&r2_rhs)).max(1.0);
    let r2 = max_abs_c(&(&kernel - &r2_rhs)) / s2;
    Ok([r0, r1, r2])
}

/// Formal Laurent tail of a Hermite–Padé remainder.
#[derive(Debug, Clone)]
pub struct HermitePadeReport {
    /// Largest nonnegative-power coefficient of the remainder; the
    /// polynomial part must cancel identically.
    pub nonneg_residual: f64,
    /// Coefficients of `z^{-1}, z^{-2}, …, z^{-K}`.
    pub tail: Vec<DMatrix<f64>>,
}

/// Laurent coefficients of `V_{m+1}(z)·F(z) - B^{(1)}_m(z)` down to `z^{-K}`.
///
/// The coefficient of `z^{-q}` is `Σ_i V_{m+1,i} U_{i+q-1}`; orthogonality
/// makes the first `m+1` of them vanish and puts `Δ_{m+1}` at `z^{-(m+2)}`.
pub fn hermite_pade_left(
    v_next: &MatrixPoly,
    bq_m: &MatrixPoly,
    u: &VectorFunctional,
    h: &HPoly,
    k_tail: usize,
) -> Result<HermitePadeReport> {
    let n = v_next.n();
    let deg = v_next.degree().max(0) as usize;
    let blocks = block_moments(u, h, deg + k_tail - 1)?;
    // nonnegative powers z^t, 0 <= t <= deg-1: Σ_{i>=t+1} V_i U_{i-t-1} - Bq_t
    let mut nonneg = 0.0_f64;
    let mut scale = 0.0_f64;
    for t in 0..deg {
        let mut c = DMatrix::zeros(n, n);
        for i in t + 1..=deg {
            c += v_next.coeff(i) * &blocks[i - t - 1];
        }
        scale = scale.max(c.amax());
        c -= bq_m.coeff(t);
        nonneg = nonneg.max(c.amax());
    }
    let mut tail = Vec::with_capacity(k_tail);
    for q in 1..=k_tail {
        let mut c = DMatrix::zeros(n, n);
        for i in 0..=deg {
            c += v_next.coeff(i) * &blocks[i + q - 1];
        }
        tail.push(c);
    }
    Ok(HermitePadeReport {
        nonneg_residual: nonneg / scale.max(1.0),
        tail,
    })
}

/// Laurent coefficients of `F(z)·G_{m+1}(z) - G^{(1)}_m(z)` down to `z^{-K}`;
/// the coefficient of `z^{-q}` is `Σ_i U_{i+q-1} β_i^{m+1}` and the first
/// nonvanishing one is `Θ_{m+1}` at `z^{-(m+2)}`.
pub fn hermite_pade_right(
    g_next: &MatrixPoly,
    gq_m: &MatrixPoly,
    u: &VectorFunctional,
    h: &HPoly,
    k_tail: usize,
) -> Result<HermitePadeReport> {
    let n = g_next.n();
    let deg = g_next.degree().max(0) as usize;
    let blocks = block_moments(u, h, deg + k_tail - 1)?;
    let mut nonneg = 0.0_f64;
    let mut scale = 0.0_f64;
    for t in 0..deg {
        let mut c = DMatrix::zeros(n, n);
        for i in t + 1..=deg {
            c += &blocks[i - t - 1] * g_next.coeff(i);
        }
        scale = scale.max(c.amax());
        c -= gq_m.coeff(t);
        nonneg = nonneg.max(c.amax());
    }
    let mut tail = Vec::with_capacity(k_tail);
    for q in 1..=k_tail {
        let mut c = DMatrix::zeros(n, n);
        for i in 0..=deg {
            c += &blocks[i + q - 1] * g_next.coeff(i);
        }
        tail.push(c);
    }
    Ok(HermitePadeReport {
        nonneg_residual: nonneg / scale.max(1.0),
        tail,
    })
}

/// The left Markov approximant `V_m(z)^{-1}·B^{(1)}_{m-1}(z)`.
///
/// `z` must stay away from the zeros of `V_m`; the distance is checked
/// against the det-based zero set.
pub fn markov_approximant(
    left: &LeftFamily,
    fk: &FirstKindFamily,
    m: usize,
    z: Complex64,
) -> Result<DMatrix<Complex64>> {
    if m == 0 || m >= left.len() || m > fk.bq.len() {
        return Err(Error::InvalidInput(format!(
            "Markov approximant needs 1 <= m < family length, got m={m}"
        )));
    }
    let v_m = &left.v[m];
    let zeros = zeros_via_det(v_m, None)?;
    for x in &zeros.nodes {
        if (z - x).norm() <= 1e-10 * (1.0 + z.norm()) {
            return Err(Error::NearSingularPoint {
                what: format!("z = {z} is a zero of V_{m}"),
            });
        }
    }
    let v_inv = inverse_c(&v_m.eval(z), "V_m(z) inverse in markov_approximant")?;
    Ok(v_inv * fk.bq[m - 1].eval(z))
}

/// The right Markov approximant `G^{(1)}_{m-1}(z)·G_m(z)^{-1}`.
pub fn markov_approximant_right(
    right: &RightFamily,
    fk: &FirstKindFamily,
    m: usize,
    z: Complex64,
) -> Result<DMatrix<Complex64>> {
    if m == 0 || m >= right.len() || m > fk.gq.len() {
        return Err(Error::InvalidInput(format!(
            "Markov approximant needs 1 <= m < family length, got m={m}"
        )));
    }
    let g_m = &right.g[m];
    let zeros = zeros_via_det(g_m, None)?;
    for x in &zeros.nodes {
        if (z - x).norm() <= 1e-10 * (1.0 + z.norm()) {
            return Err(Error::NearSingularPoint {
                what: format!("z = {z} is a zero of G_{m}"),
            });
        }
    }
    let g_inv = inverse_c(&g_m.eval(z), "G_m(z) inverse in markov_approximant_right")?;
    Ok(fk.gq[m - 1].eval(z) * g_inv)
}

/// Greedy closest-pair matching distance between two equal-size multisets of
/// complex numbers; `f64::INFINITY` when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut remaining: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0_f64;
    for &x in a {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, &y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .expect("multisets are nonempty");
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    worst
}

/// The moment-side value a rule is compared against: `Σ_i P_i U_i`,
/// promoted to complex for uniform comparisons.
pub fn exact_functional_c(
    u: &VectorFunctional,
    h: &HPoly,
    p: &MatrixPoly,
) -> Result<DMatrix<Complex64>> {
    Ok(to_complex(&moment_functional(u, h, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonal::build_pair;
    use crate::recurrence::{extract_coeffs, legendre_gamma};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn lebesgue_n1(k_max: usize) -> VectorFunctional {
        let m = (0..=k_max)
            .map(|k| {
                if k % 2 == 0 {
                    2.0 / (k as f64 + 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        VectorFunctional::new(vec![m]).unwrap()
    }

    fn legendre_type_n2(k_max: usize) -> VectorFunctional {
        let m1 = (0..=k_max)
            .map(|k| {
                if k % 2 == 0 {
                    2.0 / (k as f64 + 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        let m2 = (0..=k_max)
            .map(|k| {
                if k % 2 == 1 {
                    2.0 / (k as f64 + 2.0)
                } else {
                    0.0
                }
            })
            .collect();
        VectorFunctional::new(vec![m1, m2]).unwrap()
    }

    fn legendre_setup(
        m_max: usize,
    ) -> (
        VectorFunctional,
        HPoly,
        LeftFamily,
        RightFamily,
        RecurrenceCoeffs,
        FirstKindFamily,
    ) {
        let u = lebesgue_n1(2 * m_max + 2);
        let h = HPoly::monic_power(1);
        let (left, right) = build_pair(&u, &h, m_max).unwrap();
        let rc = extract_coeffs(&left, &u, &h).unwrap();
        let fk = first_kind_family(&left, &right, &u, &h).unwrap();
        (u, h, left, right, rc, fk)
    }

    #[test]
    fn block_jacobi_legendre_m2() {
        let (_, _, _, _, rc, _) = legendre_setup(3);
        let j = block_jacobi(&rc, 2).unwrap();
        assert!((j.matrix[(0, 1)] - 1.0).abs() < 1e-12);
        assert!((j.matrix[(1, 0)] - 1.0 / 3.0).abs() < 1e-12);
        assert!(j.matrix[(0, 0)].abs() < 1e-13);
        assert!(j.matrix[(1, 1)].abs() < 1e-13);
        // m=1 is just B_0
        let j1 = block_jacobi(&rc, 1).unwrap();
        assert_eq!(j1.matrix.nrows(), 1);
        assert!(j1.matrix[(0, 0)].abs() < 1e-13);
        // all-zero coefficients give the zero matrix
        let rc0 = RecurrenceCoeffs {
            a: vec![DMatrix::zeros(1, 1); 2],
            b: vec![DMatrix::zeros(1, 1); 2],
            c: vec![DMatrix::zeros(1, 1); 1],
        };
        assert_eq!(block_jacobi(&rc0, 2).unwrap().matrix.amax(), 0.0);
    }

    #[test]
    fn jacobi_zeros_match_gauss_legendre_nodes() {
        let (_, _, _, _, rc, _) = legendre_setup(4);
        let z2 = zeros_via_jacobi(&rc, 2, None).unwrap();
        let s = 1.0 / 3.0_f64.sqrt();
        assert_eq!(z2.total_multiplicity(), 2);
        assert!((z2.nodes[0] - c(-s)).norm() < 1e-10);
        assert!((z2.nodes[1] - c(s)).norm() < 1e-10);
        let z3 = zeros_via_jacobi(&rc, 3, None).unwrap();
        let t = (3.0 / 5.0_f64).sqrt();
        assert_eq!(z3.total_multiplicity(), 3);
        assert!((z3.nodes[0] - c(-t)).norm() < 1e-9);
        assert!(z3.nodes[1].norm() < 1e-9);
        assert!((z3.nodes[2] - c(t)).norm() < 1e-9);
    }

    #[test]
    fn jacobi_m1_diagonal_b0() {
        let rc = RecurrenceCoeffs {
            a: vec![DMatrix::identity(2, 2)],
            b: vec![DMatrix::from_row_slice(2, 2, &[1.5, 0.0, 0.0, -2.0])],
            c: vec![],
        };
        let z = zeros_via_jacobi(&rc, 1, None).unwrap();
        assert!((z.nodes[0] - c(-2.0)).norm() < 1e-12);
        assert!((z.nodes[1] - c(1.5)).norm() < 1e-12);
    }

    #[test]
    fn det_zeros_of_explicit_polynomials() {
        // V_2 = z^2 - 1/3
        let v = MatrixPoly::new(
            1,
            vec![
                DMatrix::from_element(1, 1, -1.0 / 3.0),
                DMatrix::zeros(1, 1),
                DMatrix::from_element(1, 1, 1.0),
            ],
        );
        let z = zeros_via_det(&v, None).unwrap();
        let s = 1.0 / 3.0_f64.sqrt();
        assert!((z.nodes[0] - c(-s)).norm() < 1e-10);
        assert!((z.nodes[1] - c(s)).norm() < 1e-10);
        // diagonal V reads off its zeros
        let vd = MatrixPoly::new(
            2,
            vec![
                DMatrix::from_row_slice(2, 2, &[-1.0 / 3.0, 0.0, 0.0, -0.6]),
                DMatrix::identity(2, 2),
            ],
        );
        let zd = zeros_via_det(&vd, None).unwrap();
        assert!((zd.nodes[0] - c(1.0 / 3.0)).norm() < 1e-10);
        assert!((zd.nodes[1] - c(0.6)).norm() < 1e-10);
        // z·I has one node of multiplicity 2
        let vz = MatrixPoly::new(2, vec![DMatrix::zeros(2, 2), DMatrix::identity(2, 2)]);
        let zz = zeros_via_det(&vz, None).unwrap();
        assert_eq!(zz.len(), 1);
        assert_eq!(zz.mults[0], 2);
        assert!(zz.nodes[0].norm() < 1e-10);
    }

    #[test]
    fn jacobi_and_det_zeros_cross_validate() {
        let u = legendre_type_n2(29);
        let h = HPoly::monic_power(2);
        let (left, _) = build_pair(&u, &h, 3).unwrap();
        let rc = extract_coeffs(&left, &u, &h).unwrap();
        for m in 1..=3usize {
            let zj = zeros_via_jacobi(&rc, m, None).unwrap();
            let zd = zeros_via_det(&left.v[m], None).unwrap();
            assert_eq!(zj.total_multiplicity(), 2 * m);
            assert_eq!(zd.total_multiplicity(), 2 * m);
            let d = multiset_distance(&zj.expanded(), &zd.expanded());
            assert!(d <= 1e-7, "m={m}: {d}");
        }
    }

    #[test]
    fn first_kind_legendre_values() {
        let (u, h, left, right, _, _) = legendre_setup(3);
        // B^{(1)}_0 = U_0 = 2 from V_1 = z
        let b1 = assoc_first_left(&left.v[1], &u, &h).unwrap();
        assert_eq!(b1.degree(), 0);
        assert!((b1.coeff(0)[(0, 0)] - 2.0).abs() < 1e-13);
        // B^{(1)}_1 = 2z from V_2 = z^2 - 1/3
        let b2 = assoc_first_left(&left.v[2], &u, &h).unwrap();
        assert_eq!(b2.degree(), 1);
        assert!((b2.coeff(1)[(0, 0)] - 2.0).abs() < 1e-12);
        assert!(b2.coeff(0)[(0, 0)].abs() < 1e-13);
        // G^{(1)}_0 = U_0 · 3/2 = 3 from G_1 = (3/2)z
        let g1 = assoc_first_right(&right.g[1], &u, &h).unwrap();
        assert!((g1.coeff(0)[(0, 0)] - 3.0).abs() < 1e-12);
        // constant input gives the zero polynomial
        let z = assoc_first_left(&left.v[0], &u, &h).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn quadrature_rule_matches_two_point_gauss() {
        let (u, h, left, _, _, _) = legendre_setup(3);
        let rule = quadrature_rule(&left, &u, &h, 2, None).unwrap();
        assert_eq!(rule.zeros.len(), 2);
        for w in &rule.weights {
            assert!((w[(0, 0)] - c(1.0)).norm() < 1e-10, "weight {}", w[(0, 0)]);
        }
        // degree-0 exactness: Σ Γ = U_0
        let total: Complex64 = rule.weights.iter().map(|w| w[(0, 0)]).sum();
        assert!((total - c(2.0)).norm() < 1e-10);
    }

    #[test]
    fn quadrature_rule_matches_three_point_gauss() {
        let (u, h, left, _, _, _) = legendre_setup(4);
        let rule = quadrature_rule(&left, &u, &h, 3, None).unwrap();
        assert_eq!(rule.zeros.len(), 3);
        // nodes sorted: -sqrt(3/5), 0, sqrt(3/5); weights 5/9, 8/9, 5/9
        assert!((rule.weights[0][(0, 0)] - c(5.0 / 9.0)).norm() < 1e-10);
        assert!((rule.weights[1][(0, 0)] - c(8.0 / 9.0)).norm() < 1e-10);
        assert!((rule.weights[2][(0, 0)] - c(5.0 / 9.0)).norm() < 1e-10);
    }

    #[test]
    fn quadrature_exactness_boundary() {
        let (u, h, left, _, _, _) = legendre_setup(3);
        let rule = quadrature_rule(&left, &u, &h, 2, None).unwrap();
        // P = z^3 integrates to 0 (odd moment), exact at degree 3 = 2m-1
        let p3 = MatrixPoly::new(
            1,
            vec![
                DMatrix::zeros(1, 1),
                DMatrix::zeros(1, 1),
                DMatrix::zeros(1, 1),
                DMatrix::from_element(1, 1, 1.0),
            ],
        );
        let got = quadrature_apply(&rule, &p3);
        assert!(got[(0, 0)].norm() < 1e-12);
        // P = z^4: rule gives 2/9, the functional gives U_4 = 2/5
        let p4 = MatrixPoly::new(
            1,
            vec![
                DMatrix::zeros(1, 1),
                DMatrix::zeros(1, 1),
                DMatrix::zeros(1, 1),
                DMatrix::zeros(1, 1),
                DMatrix::from_element(1, 1, 1.0),
            ],
        );
        let got4 = quadrature_apply(&rule, &p4);
        assert!((got4[(0, 0)] - c(2.0 / 9.0)).norm() < 1e-12);
        let exact4 = exact_functional_c(&u, &h, &p4).unwrap();
        assert!((exact4[(0, 0)] - c(0.4)).norm() < 1e-14);
        assert!((got4[(0, 0)] - exact4[(0, 0)]).norm() > 1e-2);
        // P = I reproduces U_0
        let id = MatrixPoly::identity(1);
        let got0 = quadrature_apply(&rule, &id);
        assert!((got0[(0, 0)] - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn partial_fraction_identity_simple_zeros() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x50f7);
        let u = legendre_type_n2(29);
        let h = HPoly::monic_power(2);
        let (left, _) = build_pair(&u, &h, 3).unwrap();
        let m = 3;
        let v_m = &left.v[m];
        let zeros = zeros_via_det(v_m, None).unwrap();
        // random P of degree m-1, checked at 10 random t away from the nodes
        let p = MatrixPoly::new(
            2,
            (0..m)
                .map(|_| DMatrix::from_fn(2, 2, |_, _| rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        let cs = partial_fraction_coeffs(v_m, &p, &zeros).unwrap();
        let mut tested = 0;
        while tested < 10 {
            let t = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
            if zeros.nodes.iter().any(|x| (t - x).norm() < 0.1) {
                continue;
            }
            tested += 1;
            let direct = p.eval(t) * inverse_c(&v_m.eval(t), "test").unwrap();
            let mut sum = DMatrix::from_element(2, 2, c(0.0));
            for (ck, xk) in cs.iter().zip(&zeros.nodes) {
                sum += ck / (t - xk);
            }
            let err = max_abs_c(&(&direct - &sum)) / max_abs_c(&direct).max(1.0);
            assert!(err <= 1e-7, "t={t}: {err}");
        }
    }

    #[test]
    fn cd_identity_holds_and_detects_perturbation() {
        let (_, _, left, right, rc, _) = legendre_setup(4);
        let x = Complex64::new(0.37, 0.21);
        let z = Complex64::new(-1.3, 0.5);
        let r = cd_residual(&left, &right, &rc, 2, x, z).unwrap();
        assert!(r <= 1e-10, "residual {r}");
        let conf = cd_confluent_residuals(&left, &right, &rc, 2, x).unwrap();
        assert!(conf.iter().all(|&e| e <= 1e-10), "{conf:?}");
        // perturbing C_{m+1} must break the identity
        let mut rc_bad = rc.clone();
        rc_bad.c[2] = &rc_bad.c[2] + DMatrix::from_element(1, 1, 1e-3);
        let r_bad = cd_residual(&left, &right, &rc_bad, 2, x, z).unwrap();
        assert!(r_bad > 1e-6, "residual {r_bad}");
    }

    #[test]
    fn hermite_pade_orders_scalar_legendre() {
        let (u, h, left, right, _, fk) = legendre_setup(3);
        // m = 0: z·F(z) - B^{(1)}_0 = (2/3) z^{-2} + ...
        let rep = hermite_pade_left(&left.v[1], &fk.bq[0], &u, &h, 3).unwrap();
        assert!(rep.nonneg_residual <= 1e-14);
        assert!(rep.tail[0].amax() <= 1e-13); // z^{-1}
        assert!((rep.tail[1][(0, 0)] - 2.0 / 3.0).abs() < 1e-13); // z^{-2} = Delta_1
        let rep_r = hermite_pade_right(&right.g[1], &fk.gq[0], &u, &h, 3).unwrap();
        assert!(rep_r.nonneg_residual <= 1e-14);
        assert!(rep_r.tail[0].amax() <= 1e-13);
        assert!((rep_r.tail[1][(0, 0)] - 1.0).abs() < 1e-12); // Theta_1 = 1
    }

    #[test]
    fn hermite_pade_orders_n2() {
        let u = legendre_type_n2(29);
        let h = HPoly::monic_power(2);
        let (left, right) = build_pair(&u, &h, 3).unwrap();
        let fk = first_kind_family(&left, &right, &u, &h).unwrap();
        for m in 0..=1usize {
            let rep = hermite_pade_left(&left.v[m + 1], &fk.bq[m], &u, &h, m + 3).unwrap();
            assert!(rep.nonneg_residual <= 1e-12);
            for q in 1..=m + 1 {
                assert!(
                    rep.tail[q - 1].amax() <= 1e-10 * left.delta[m + 1].amax(),
                    "m={m} q={q}"
                );
            }
            let err = (&rep.tail[m + 1] - &left.delta[m + 1]).amax() / left.delta[m + 1].amax();
            assert!(err <= 1e-10, "m={m}: {err}");
            let rep_r = hermite_pade_right(&right.g[m + 1], &fk.gq[m], &u, &h, m + 3).unwrap();
            let err_r =
                (&rep_r.tail[m + 1] - &right.theta[m + 1]).amax() / right.theta[m + 1].amax();
            assert!(err_r <= 1e-10, "m={m}: {err_r}");
        }
    }

    #[test]
    fn markov_approximant_legendre_values() {
        let (_, _, left, right, _, fk) = legendre_setup(3);
        let z = c(2.0);
        let a1 = markov_approximant(&left, &fk, 1, z).unwrap();
        assert!((a1[(0, 0)] - c(1.0)).norm() < 1e-13);
        assert!((a1[(0, 0)].re - 3.0_f64.ln()).abs() < 0.1);
        let a2 = markov_approximant(&left, &fk, 2, z).unwrap();
        assert!((a2[(0, 0)] - c(12.0 / 11.0)).norm() < 1e-12);
        // scalar case: right and left approximants coincide
        let r2 = markov_approximant_right(&right, &fk, 2, z).unwrap();
        assert!((a2[(0, 0)] - r2[(0, 0)]).norm() < 1e-12);
    }

    #[test]
    fn markov_approximant_rejects_z_at_zero_of_v() {
        let (_, _, left, _, _, fk) = legendre_setup(3);
        let s = 1.0 / 3.0_f64.sqrt();
        assert!(matches!(
            markov_approximant(&left, &fk, 2, c(s)),
            Err(Error::NearSingularPoint { .. })
        ));
    }

    #[test]
    fn double_zero_fixture_quadrature() {
        // N=2 functional with U_j = I/(j+1): V_m = q_m·I with q_m the monic
        // Legendre-type polynomial on [0,1]; every zero is double with full
        // 2-dimensional kernels
        let k_max = 21;
        let m1 = (0..=k_max)
            .map(|k| {
                if k % 2 == 0 {
                    2.0 / (k as f64 + 2.0)
                } else {
                    0.0
                }
            })
            .collect();
        let m2 = (0..=k_max)
            .map(|k| {
                if k % 2 == 1 {
                    2.0 / (k as f64 + 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        let u = VectorFunctional::new(vec![m1, m2]).unwrap();
        let h = HPoly::monic_power(2);
        let (left, _) = build_pair(&u, &h, 3).unwrap();
        let m = 2;
        // relaxed clustering merges the numerically split double roots
        let zeros = zeros_via_det(&left.v[m], Some(1e-5)).unwrap();
        assert_eq!(zeros.len(), 2);
        assert!(zeros.mults.iter().all(|&l| l == 2));
        let bq = assoc_first_left(&left.v[m], &u, &h).unwrap();
        let rule = quadrature_rule_from_zeros(&left.v[m], &bq, &zeros).unwrap();
        // Gauss-Legendre on [0,1]: nodes 1/2 ± 1/(2√3), weights 1/2·I
        for w in &rule.weights {
            assert!((w[(0, 0)] - c(0.5)).norm() < 1e-8, "{}", w[(0, 0)]);
            assert!((w[(1, 1)] - c(0.5)).norm() < 1e-8);
            assert!(w[(0, 1)].norm() < 1e-8);
        }
        // exactness at degree <= 2m-1 = 3
        for d in 0..=3usize {
            let p = MatrixPoly::new(
                2,
                (0..=d)
                    .map(|k| {
                        DMatrix::from_row_slice(
                            2,
                            2,
                            &[0.3 + k as f64, -0.7, 0.1 * k as f64, 1.2 - 0.5 * k as f64],
                        )
                    })
                    .collect(),
            );
            let got = quadrature_apply(&rule, &p);
            let exact = exact_functional_c(&u, &h, &p).unwrap();
            let scale = max_abs_c(&exact).max(1.0);
            assert!(
                max_abs_c(&(&got - &exact)) <= 1e-6 * scale,
                "degree {d}: {} vs {}",
                got[(0, 0)],
                exact[(0, 0)]
            );
        }
    }

    #[test]
    fn markov_error_decreases_with_order() {
        let m_top = 6;
        let (_, _, left, _, _, fk) = legendre_setup(m_top);
        let z = c(2.0);
        let truth = 3.0_f64.ln();
        let mut last = f64::INFINITY;
        for m in 1..=m_top {
            let a = markov_approximant(&left, &fk, m, z).unwrap();
            let err = (a[(0, 0)].re - truth).abs();
            assert!(err < last, "m={m}: {err} !< {last}");
            last = err;
        }
        // consistency with the classical ratio at m=2 given above
        assert!((legendre_gamma(1) - 1.0 / 3.0).abs() < 1e-15);
    }
}
