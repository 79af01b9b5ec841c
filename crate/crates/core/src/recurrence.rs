//! Block three-term recurrences and the `(2N+1)`-term scalar recurrence.
//!
//! The left family satisfies `h·B_m = A_m B_{m+1} + B_m B_m + C_m B_{m-1}`,
//! equivalently `z·V_m(z) = A_m V_{m+1}(z) + B_m V_m(z) + C_m V_{m-1}(z)`;
//! the right family satisfies the mirrored relation
//! `z·G_n(z) = G_{n-1}(z)A_{n-1} + G_n(z)B_n + G_{n+1}(z)C_{n+1}` with the
//! same coefficient matrices. Stacking the blocks tridiagonally gives the
//! `N`-block Jacobi matrix (see [`crate::spectral`]); unstacking a block
//! relation row by row gives the `(2N+1)`-term scalar recurrence
//! `h(x)·p_n = c^{n+N-1}_{n+N} p_{n+N} + Σ_k c^{n+N-1}_{n+N-1-k} p_{n+N-1-k}`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::functionals::{block_moments, VectorFunctional};
use crate::linalg::inverse;
use crate::orthogonal::LeftFamily;
use crate::poly::{HPoly, MatrixPoly, ScalarPoly, VectorPoly};
use crate::{Error, Result};

/// Coefficients of the block three-term recurrence.
///
/// `a[m]`, `b[m]` hold `A_m`, `B_m` for `m = 0..len`; `c[m-1]` holds `C_m`
/// for `m = 1..len` (there is no `C_0`: it multiplies `B_{-1} = 0`).
/// Under the Doolittle normalization `A_m` is unit lower triangular and
/// `C_m` upper triangular; these patterns are reported by
/// [`triangularity_report`], not forced.
#[derive(Debug, Clone)]
pub struct RecurrenceCoeffs {
    pub a: Vec<DMatrix<f64>>,
    pub b: Vec<DMatrix<f64>>,
    pub c: Vec<DMatrix<f64>>,
}

impl RecurrenceCoeffs {
    pub fn n(&self) -> usize {
        self.b.first().map_or(0, |b| b.nrows())
    }

    /// `C_m` for `m >= 1`.
    pub fn c_at(&self, m: usize) -> &DMatrix<f64> {
        &self.c[m - 1]
    }
}

/// Extracts `A_m`, `B_m` (for `m < M`) and `C_m` (for `1 <= m < M`) from a
/// left family of length `M+1`, using the moment formulas
///
/// ```text
/// C_m = Δ_m Δ_{m-1}^{-1}
/// B_m = [(h^{m+1}U)(B_m) - C_m (h^m U)(B_{m-1})] Δ_m^{-1}
/// A_m = [(h^{m+2}U)(B_m) - C_m (h^{m+1}U)(B_{m-1}) - B_m (h^{m+1}U)(B_m)] Δ_{m+1}^{-1}
/// ```
///
/// with `(h^k U)(B_m) = Σ_j α_j^m U_{j+k}`.
pub fn extract_coeffs(
    left: &LeftFamily,
    u: &VectorFunctional,
    h: &HPoly,
) -> Result<RecurrenceCoeffs> {
    let n = u.n();
    let m_top = left.len().saturating_sub(1);
    if left.len() < 2 {
        return Err(Error::InvalidInput(
            "recurrence extraction needs a family of length >= 2".into(),
        ));
    }
    let blocks = block_moments(u, h, 2 * m_top)?;
    // (h^k U)(B_m) via the alpha pairing
    let pair = |m: usize, k: usize| -> DMatrix<f64> {
        let mut acc = DMatrix::zeros(n, n);
        for j in 0..=m {
            acc += left.v[m].coeff(j) * &blocks[j + k];
        }
        acc
    };
    let mut a = Vec::with_capacity(m_top);
    let mut b = Vec::with_capacity(m_top);
    let mut c = Vec::with_capacity(m_top.saturating_sub(1));
    let mut delta_inv = Vec::with_capacity(m_top + 1);
    for m in 0..=m_top {
        delta_inv.push(inverse(&left.delta[m], "Delta inverse in extract_coeffs")?);
    }
    for m in 0..m_top {
        let cm = if m >= 1 {
            let cm = &left.delta[m] * &delta_inv[m - 1];
            c.push(cm.clone());
            Some(cm)
        } else {
            None
        };
        let mut bm = pair(m, m + 1);
        if let Some(cm) = &cm {
            bm -= cm * pair(m - 1, m);
        }
        let bm = bm * &delta_inv[m];
        let mut am = pair(m, m + 2) - &bm * pair(m, m + 1);
        if let Some(cm) = &cm {
            am -= cm * pair(m - 1, m + 1);
        }
        let am = am * &delta_inv[m + 1];
        a.push(am);
        b.push(bm);
    }
    Ok(RecurrenceCoeffs { a, b, c })
}

/// Coefficientwise residual of `z·V_m = A_m V_{m+1} + B_m V_m + C_m V_{m-1}`
/// over all orders supported by `rc`, normalized by the largest coefficient
/// magnitude among the `z·V_m`.
pub fn block_residual(v: &[MatrixPoly], rc: &RecurrenceCoeffs) -> f64 {
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for m in 0..rc.a.len().min(v.len().saturating_sub(1)) {
        let lhs = v[m].mul_z();
        let mut rhs = v[m + 1].left_mul(&rc.a[m]).add(&v[m].left_mul(&rc.b[m]));
        if m >= 1 {
            rhs = rhs.add(&v[m - 1].left_mul(rc.c_at(m)));
        }
        worst = worst.max(lhs.coeff_distance(&rhs));
        scale = scale.max(lhs.max_abs_coeff());
    }
    worst / scale.max(1e-300)
}

/// Rebuilds the left matrix polynomials from recurrence coefficients:
/// `V_{m+1} = A_m^{-1}((z·I - B_m)V_m - C_m V_{m-1})`.
///
/// `v0` defaults to the identity; pass the constructed `V_0` when
/// round-tripping against [`crate::orthogonal::build_left`].
pub fn rebuild_left(
    rc: &RecurrenceCoeffs,
    m_max: usize,
    v0: Option<&MatrixPoly>,
) -> Result<Vec<MatrixPoly>> {
    let n = rc.n();
    if m_max > rc.a.len() {
        return Err(Error::InvalidInput(format!(
            "rebuild to order {m_max} needs A_0..A_{}, have {}",
            m_max.saturating_sub(1),
            rc.a.len()
        )));
    }
    let mut v = Vec::with_capacity(m_max + 1);
    v.push(v0.cloned().unwrap_or_else(|| MatrixPoly::identity(n)));
    for m in 0..m_max {
        let a_inv = inverse(&rc.a[m], "A_m inverse in rebuild_left")?;
        let mut next = v[m].mul_z().sub(&v[m].left_mul(&rc.b[m]));
        if m >= 1 {
            next = next.sub(&v[m - 1].left_mul(rc.c_at(m)));
        }
        v.push(next.left_mul(&a_inv));
    }
    Ok(v)
}

/// Rebuilds the right matrix polynomials:
/// `G_{n+1} = (z·G_n - G_{n-1}A_{n-1} - G_n B_n)·C_{n+1}^{-1}`.
///
/// `g0` defaults to `U_0^{-1}` when a functional is at hand (see
/// [`crate::orthogonal::build_right`] for the constructed value); here it
/// must be supplied explicitly. Rebuilding to order `m_max` uses
/// `C_1..C_{m_max}`.
pub fn rebuild_right(
    rc: &RecurrenceCoeffs,
    m_max: usize,
    g0: &MatrixPoly,
) -> Result<Vec<MatrixPoly>> {
    if m_max > rc.c.len() {
        return Err(Error::InvalidInput(format!(
            "rebuild to order {m_max} needs C_1..C_{m_max}, have {}",
            rc.c.len()
        )));
    }
    let mut g = Vec::with_capacity(m_max + 1);
    g.push(g0.clone());
    for m in 0..m_max {
        let c_inv = inverse(rc.c_at(m + 1), "C_{m+1} inverse in rebuild_right")?;
        let mut next = g[m].mul_z().sub(&g[m].right_mul(&rc.b[m]));
        if m >= 1 {
            next = next.sub(&g[m - 1].right_mul(&rc.a[m - 1]));
        }
        g.push(next.right_mul(&c_inv));
    }
    Ok(g)
}

/// Reports how far `A_m` and `C_m` sit from their triangular patterns
/// (lower for `A_m`, upper for `C_m`), relative to each matrix's scale.
pub fn triangularity_report(rc: &RecurrenceCoeffs) -> f64 {
    let mut worst = 0.0_f64;
    for am in &rc.a {
        let scale = am.amax().max(1e-300);
        for i in 0..am.nrows() {
            for j in i + 1..am.ncols() {
                worst = worst.max(am[(i, j)].abs() / scale);
            }
        }
    }
    for cm in &rc.c {
        let scale = cm.amax().max(1e-300);
        for i in 0..cm.nrows() {
            for j in 0..i {
                worst = worst.max(cm[(i, j)].abs() / scale);
            }
        }
    }
    worst
}

/// A `(2N+1)`-term scalar recurrence
/// `h·p_n = c^{n+N-1}_{n+N} p_{n+N} + Σ_{k=0}^{2N-1} c^{n+N-1}_{n+N-1-k} p_{n+N-1-k}`
/// together with the initial polynomials `p_0 .. p_{N-1}`.
///
/// Coefficients are keyed by `(upper, lower)`; entries whose lower index is
/// negative never appear (those terms do not exist for small `n`).
#[derive(Debug, Clone)]
pub struct ScalarRecurrence {
    pub n: usize,
    pub h: HPoly,
    pub c: BTreeMap<(i64, i64), f64>,
    pub initial: Vec<ScalarPoly>,
}

impl ScalarRecurrence {
    pub fn new(h: HPoly, c: BTreeMap<(i64, i64), f64>, initial: Vec<ScalarPoly>) -> Result<Self> {
        let n = h.n();
        if initial.len() != n {
            return Err(Error::InvalidInput(format!(
                "need N={n} initial polynomials, got {}",
                initial.len()
            )));
        }
        for (i, p) in initial.iter().enumerate() {
            if p.degree() != i as isize {
                return Err(Error::DegreeMismatch {
                    expected: i as isize,
                    got: p.degree(),
                });
            }
        }
        Ok(ScalarRecurrence { n, h, c, initial })
    }

    fn coeff(&self, upper: i64, lower: i64) -> Result<f64> {
        self.c
            .get(&(upper, lower))
            .copied()
            .ok_or(Error::MissingCoefficient { upper, lower })
    }
}

/// Assembles the block coefficients for `m = 0..m_max` from the scalar map:
///
/// ```text
/// A_m[r][s] = c^{(m+1)N-1+r}_{(m+1)N+s}   (s <= r, zero above the diagonal)
/// B_m[r][s] = c^{(m+1)N-1+r}_{mN+s}
/// C_m[r][s] = c^{(m+1)N-1+r}_{(m-1)N+s}   (s >= r, zero below the diagonal)
/// ```
///
/// Every in-pattern entry must be present in the map.
pub fn scalar_to_block(sr: &ScalarRecurrence, m_max: usize) -> Result<RecurrenceCoeffs> {
    let n = sr.n as i64;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for m in 0..m_max as i64 {
        let mut am = DMatrix::zeros(sr.n, sr.n);
        let mut bm = DMatrix::zeros(sr.n, sr.n);
        for r in 0..n {
            let upper = (m + 1) * n - 1 + r;
            for s in 0..n {
                if s <= r {
                    am[(r as usize, s as usize)] = sr.coeff(upper, (m + 1) * n + s)?;
                }
                bm[(r as usize, s as usize)] = sr.coeff(upper, m * n + s)?;
            }
        }
        a.push(am);
        b.push(bm);
        if m >= 1 {
            let mut cm = DMatrix::zeros(sr.n, sr.n);
            for r in 0..n {
                let upper = (m + 1) * n - 1 + r;
                for s in r..n {
                    cm[(r as usize, s as usize)] = sr.coeff(upper, (m - 1) * n + s)?;
                }
            }
            c.push(cm);
        }
    }
    Ok(RecurrenceCoeffs { a, b, c })
}

/// Runs the block recurrence forward on vector polynomials and unstacks the
/// scalar sequence `p_0 .. p_{m_max·N + N - 1}`.
///
/// `b0` is the initial vector polynomial (entries `p_0 .. p_{N-1}`). Each
/// generated `p_n` must come out with degree exactly `n`; a collapsed
/// leading coefficient is reported as a degree defect.
pub fn block_to_scalar(
    rc: &RecurrenceCoeffs,
    h: &HPoly,
    b0: &VectorPoly,
    m_max: usize,
) -> Result<Vec<ScalarPoly>> {
    let n = h.n();
    if b0.n() != n {
        return Err(Error::InvalidInput(format!(
            "initial vector has {} entries, h expects {}",
            b0.n(),
            n
        )));
    }
    let mut blocks: Vec<VectorPoly> = vec![b0.clone()];
    for m in 0..m_max {
        let a_inv = inverse(&rc.a[m], "A_m inverse in block_to_scalar")?;
        let mut next = blocks[m]
            .mul_scalar_poly(h.poly())
            .sub(&blocks[m].left_mul(&rc.b[m]));
        if m >= 1 {
            next = next.sub(&blocks[m - 1].left_mul(rc.c_at(m)));
        }
        blocks.push(next.left_mul(&a_inv));
    }
    let mut out = Vec::with_capacity((m_max + 1) * n);
    for (m, block) in blocks.iter().enumerate() {
        for k in 0..n {
            let p = block.entry(k).clone();
            let expected = (m * n + k) as isize;
            if p.degree() != expected {
                return Err(Error::DegreeDefect { n: m * n + k });
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// Max coefficientwise residual of the scalar recurrence over all `n` with
/// a complete index window inside `p`, normalized by the largest
/// coefficient magnitude of the `h·p_n` terms.
pub fn scalar_residual(sr: &ScalarRecurrence, p: &[ScalarPoly]) -> f64 {
    let n = sr.n as i64;
    let len = p.len() as i64;
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for nn in 0..len {
        if nn + n >= len {
            break;
        }
        let upper = nn + n - 1;
        let lhs = p[nn as usize].mul(sr.h.poly());
        scale = scale.max(lhs.max_abs_coeff());
        let mut rhs = ScalarPoly::zero();
        let mut missing = false;
        for lower in (nn - n).max(0)..=(nn + n) {
            match sr.c.get(&(upper, lower)) {
                Some(&v) => rhs = rhs.add(&p[lower as usize].scale(v)),
                None => {
                    missing = true;
                    break;
                }
            }
        }
        if missing {
            continue;
        }
        worst = worst.max(lhs.sub(&rhs).max_abs_coeff());
    }
    if scale == 0.0 {
        return worst;
    }
    worst / scale
}

/// Monic Legendre recurrence ratio `γ_n = n² / (4n² - 1)`.
pub fn legendre_gamma(n: usize) -> f64 {
    let nf = n as f64;
    nf * nf / (4.0 * nf * nf - 1.0)
}

/// Monic Legendre polynomials `p_0 .. p_{count-1}` on `[-1, 1]` via
/// `p_{n+1} = x·p_n - γ_n p_{n-1}`.
pub fn monic_legendre(count: usize) -> Vec<ScalarPoly> {
    let mut out: Vec<ScalarPoly> = Vec::with_capacity(count);
    for n in 0..count {
        let p = match n {
            0 => ScalarPoly::one(),
            1 => ScalarPoly::monomial(1, 1.0),
            _ => {
                let x_pn = out[n - 1].mul_xpow(1);
                x_pn.sub(&out[n - 2].scale(legendre_gamma(n - 1)))
            }
        };
        out.push(p);
    }
    out
}

/// The 5-term scalar recurrence satisfied by monic Legendre polynomials
/// against `h = x²`:
/// `x² p_n = p_{n+2} + (γ_{n+1}+γ_n) p_n + γ_n γ_{n-1} p_{n-2}`,
/// with explicit zeros on the odd-offset coefficients. Coefficients are
/// provided for `n = 0 .. n_max`.
pub fn legendre_five_term(n_max: usize) -> ScalarRecurrence {
    let mut c = BTreeMap::new();
    for nn in 0..=n_max as i64 {
        let upper = nn + 1;
        let g = |k: i64| -> f64 {
            if k <= 0 {
                0.0
            } else {
                legendre_gamma(k as usize)
            }
        };
        c.insert((upper, nn + 2), 1.0);
        c.insert((upper, nn + 1), 0.0);
        c.insert((upper, nn), g(nn + 1) + g(nn));
        if nn >= 1 {
            c.insert((upper, nn - 1), 0.0);
        }
        if nn >= 2 {
            c.insert((upper, nn - 2), g(nn) * g(nn - 1));
        }
    }
    ScalarRecurrence::new(
        HPoly::monic_power(2),
        c,
        vec![ScalarPoly::one(), ScalarPoly::monomial(1, 1.0)],
    )
    .expect("fixture is well-formed")
}
