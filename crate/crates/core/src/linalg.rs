//! Dense linear-algebra helpers shared by the construction pipelines.
//!
//! The pivot-free Doolittle sweep is the backbone of the orthogonalization:
//! quasi-definiteness of the moment functional is exactly the condition
//! that no pivoting is ever needed, and pivoting would destroy the
//! triangular normalization the theory prescribes. Everything else
//! (inverses with pivoting, SVD condition numbers, eigenvalues) delegates
//! to `nalgebra`.

use nalgebra::DMatrix;

use crate::{Complex64, Error, Result};

/// Relative pivot tolerance for the pivot-free LU sweep, scaled per block
/// by the max-norm of the current Schur complement.
pub const PIVOT_REL_TOL: f64 = 1e-12;

/// Pivot-free Doolittle factorization `A = L·R` with `L` unit lower
/// triangular and `R` upper triangular, blocked in `block`-sized panels
/// for the pivot scale.
///
/// After eliminating the first `m·block` rows, the trailing diagonal
/// `block×block` panel of the work matrix is the `m`-th block Schur
/// complement `S_m`; its max-norm sets the tolerance for the pivots inside
/// that panel. A pivot below tolerance means a leading principal minor is
/// numerically singular and the sweep aborts with [`Error::SingularMinor`].
pub fn lu_nopivot(a: &DMatrix<f64>, block: usize) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "LU needs a square matrix");
    assert!(
        block >= 1 && n.is_multiple_of(block),
        "matrix size must be a multiple of the block size"
    );
    let mut work = a.clone();
    let mut l = DMatrix::identity(n, n);
    let mut panel_tol = 0.0;
    for k in 0..n {
        if k % block == 0 {
            let m = k / block;
            let s = work.view((k, k), (block, block));
            panel_tol = PIVOT_REL_TOL * s.amax().max(1e-300);
            let _ = m;
        }
        let pivot = work[(k, k)];
        if pivot.abs() < panel_tol {
            return Err(Error::SingularMinor {
                order: k + 1,
                block: k / block,
            });
        }
        for i in k + 1..n {
            let f = work[(i, k)] / pivot;
            l[(i, k)] = f;
            if f != 0.0 {
                for j in k..n {
                    work[(i, j)] -= f * work[(k, j)];
                }
            }
            work[(i, k)] = 0.0;
        }
    }
    // work now holds R
    Ok((l, work))
}

/// Inverse of a unit lower triangular matrix by forward substitution.
pub fn inv_unit_lower(l: &DMatrix<f64>) -> DMatrix<f64> {
    let n = l.nrows();
    let mut inv = DMatrix::identity(n, n);
    for col in 0..n {
        for i in 0..n {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in 0..i {
                s -= l[(i, k)] * inv[(k, col)];
            }
            inv[(i, col)] = s;
        }
    }
    inv
}

/// Inverse of an upper triangular matrix by back substitution.
pub fn inv_upper(r: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = r.nrows();
    let mut inv = DMatrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in i + 1..n {
                s -= r[(i, k)] * inv[(k, col)];
            }
            if r[(i, i)] == 0.0 {
                return Err(Error::Singular {
                    context: "upper triangular inverse",
                });
            }
            inv[(i, col)] = s / r[(i, i)];
        }
    }
    Ok(inv)
}

/// General inverse through `nalgebra`'s pivoted LU.
pub fn inverse(m: &DMatrix<f64>, context: &'static str) -> Result<DMatrix<f64>> {
    m.clone().try_inverse().ok_or(Error::Singular { context })
}

/// Complex inverse through `nalgebra`'s pivoted LU.
pub fn inverse_c(m: &DMatrix<Complex64>, context: &'static str) -> Result<DMatrix<Complex64>> {
    m.clone().try_inverse().ok_or(Error::Singular { context })
}

/// 2-norm condition number from the singular values; `f64::INFINITY` when
/// the smallest singular value underflows to zero.
pub fn cond_2(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let smin = sv.min();
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Eigenvalues of a real square matrix: balancing, Hessenberg reduction by
/// stabilized elementary transforms, then the Francis double-shift QR
/// iteration with exceptional shifts every ten stalled sweeps.
///
/// Fails with [`Error::NonConvergence`] when an eigenvalue does not deflate
/// within 30 sweeps.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigenvalues need a square matrix");
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = m.clone();
    balance(&mut a);
    hessenberg(&mut a);
    hqr_eigenvalues(&mut a)
}

// Iterative exact-scaling balance (radix 2), reducing the norm spread
// between each row and the matching column.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c2 = c;
                while c2 < g {
                    f *= RADIX;
                    c2 *= SQRDX;
                }
                g = r * RADIX;
                while c2 > g {
                    f /= RADIX;
                    c2 /= SQRDX;
                }
                if (c2 + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

// Reduction to upper Hessenberg form by pivoted elementary similarity
// transforms; entries below the subdiagonal are cleared afterwards.
fn hessenberg(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for m in 1..n.saturating_sub(1) {
        let mut x = 0.0_f64;
        let mut piv = m;
        for j in m..n {
            if a[(j, m - 1)].abs() > x.abs() {
                x = a[(j, m - 1)];
                piv = j;
            }
        }
        if piv != m {
            for j in m - 1..n {
                a.swap((piv, j), (m, j));
            }
            for j in 0..n {
                a.swap((j, piv), (j, m));
            }
        }
        if x != 0.0 {
            for i in m + 1..n {
                let mut y = a[(i, m - 1)];
                if y != 0.0 {
                    y /= x;
                    a[(i, m - 1)] = 0.0;
                    for j in m..n {
                        let t = y * a[(m, j)];
                        a[(i, j)] -= t;
                    }
                    for j in 0..n {
                        let t = y * a[(j, i)];
                        a[(j, m)] += t;
                    }
                }
            }
        }
    }
    for i in 2..n {
        for j in 0..i - 1 {
            a[(i, j)] = 0.0;
        }
    }
}

// Francis double-shift QR sweep on an upper Hessenberg matrix, eigenvalues
// only. Exceptional ad-hoc shifts kick in after 10 and 20 stalled sweeps.
fn hqr_eigenvalues(a: &mut DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let eps = f64::EPSILON;
    let mut wr = vec![0.0_f64; n];
    let mut wi = vec![0.0_f64; n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    'outer: while nn >= 0 {
        let mut its = 0;
        loop {
            // find a negligible subdiagonal entry
            let mut l = nn;
            while l >= 1 {
                let s = {
                    let s = a[((l - 1) as usize, (l - 1) as usize)].abs()
                        + a[(l as usize, l as usize)].abs();
                    if s == 0.0 {
                        anorm
                    } else {
                        s
                    }
                };
                if a[(l as usize, (l - 1) as usize)].abs() <= eps * s {
                    a[(l as usize, (l - 1) as usize)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nn as usize, nn as usize)];
            if l == nn {
                // one real eigenvalue deflated
                wr[nn as usize] = x + t;
                wi[nn as usize] = 0.0;
                nn -= 1;
                continue 'outer;
            }
            let y = a[((nn - 1) as usize, (nn - 1) as usize)];
            let w = a[(nn as usize, (nn - 1) as usize)] * a[((nn - 1) as usize, nn as usize)];
            if l == nn - 1 {
                // a 2x2 block deflated: real pair or conjugate pair
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    wr[(nn - 1) as usize] = x + z;
                    wr[nn as usize] = if z != 0.0 { x - w / z } else { x + z };
                    wi[(nn - 1) as usize] = 0.0;
                    wi[nn as usize] = 0.0;
                } else {
                    wr[(nn - 1) as usize] = x + p;
                    wr[nn as usize] = x + p;
                    wi[(nn - 1) as usize] = -z;
                    wi[nn as usize] = z;
                }
                nn -= 2;
                continue 'outer;
            }
            if its == 30 {
                return Err(Error::NonConvergence);
            }
            let mut y = y;
            let mut w = w;
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for i in 0..=nn as usize {
                    a[(i, i)] -= x;
                }
                let s = a[(nn as usize, (nn - 1) as usize)].abs()
                    + a[((nn - 1) as usize, (nn - 2) as usize)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // locate the start of the implicit double shift
            let mut m = nn - 2;
            let mut p = 0.0;
            let mut q = 0.0;
            let mut r = 0.0;
            while m >= l {
                let z = a[(m as usize, m as usize)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[((m + 1) as usize, m as usize)]
                    + a[(m as usize, (m + 1) as usize)];
                q = a[((m + 1) as usize, (m + 1) as usize)] - z - rr - ss;
                r = a[((m + 2) as usize, (m + 1) as usize)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m as usize, (m - 1) as usize)].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a[((m - 1) as usize, (m - 1) as usize)].abs()
                        + z.abs()
                        + a[((m + 1) as usize, (m + 1) as usize)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[(i as usize, (i - 2) as usize)] = 0.0;
                if i != m + 2 {
                    a[(i as usize, (i - 3) as usize)] = 0.0;
                }
            }
            // the double QR sweep itself
            for k in m..nn {
                if k != m {
                    p = a[(k as usize, (k - 1) as usize)];
                    q = a[((k + 1) as usize, (k - 1) as usize)];
                    r = if k != nn - 1 {
                        a[((k + 2) as usize, (k - 1) as usize)]
                    } else {
                        0.0
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[(k as usize, (k - 1) as usize)] = -a[(k as usize, (k - 1) as usize)];
                        }
                    } else {
                        a[(k as usize, (k - 1) as usize)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    let yy = q / s;
                    let zz = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp =
                            a[(k as usize, j as usize)] + q * a[((k + 1) as usize, j as usize)];
                        if k != nn - 1 {
                            pp += r * a[((k + 2) as usize, j as usize)];
                            a[((k + 2) as usize, j as usize)] -= pp * zz;
                        }
                        a[((k + 1) as usize, j as usize)] -= pp * yy;
                        a[(k as usize, j as usize)] -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a[(i as usize, k as usize)]
                            + yy * a[(i as usize, (k + 1) as usize)];
                        if k != nn - 1 {
                            pp += zz * a[(i as usize, (k + 2) as usize)];
                            a[(i as usize, (k + 2) as usize)] -= pp * r;
                        }
                        a[(i as usize, (k + 1) as usize)] -= pp * q;
                        a[(i as usize, k as usize)] -= pp;
                    }
                }
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// Max absolute entry of a complex matrix.
pub fn max_abs_c(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, e| a.max(e.norm()))
}

/// Max absolute entry of a real matrix, zero-safe.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.amax()
}

/// Reads the `N×N` block `(i, j)` out of a block matrix.
pub fn block_of(d: &DMatrix<f64>, i: usize, j: usize, n: usize) -> DMatrix<f64> {
    d.view((i * n, j * n), (n, n)).into()
}

/// Promotes a real matrix to a complex one.
pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_reconstructs_and_is_triangular() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, -1.0, 2.0, 5.0, 0.5, -1.0, 2.0, 6.0]);
        let (l, r) = lu_nopivot(&a, 1).unwrap();
        let back = &l * &r;
        assert!((&back - &a).amax() < 1e-12);
        for i in 0..3 {
            assert_eq!(l[(i, i)], 1.0);
            for j in i + 1..3 {
                assert_eq!(l[(i, j)], 0.0);
                assert_eq!(r[(j, i)], 0.0);
            }
        }
    }

    #[test]
    fn lu_detects_singular_leading_minor() {
        // leading 1x1 minor is zero
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        match lu_nopivot(&a, 1) {
            Err(Error::SingularMinor { order, block }) => {
                assert_eq!(order, 1);
                assert_eq!(block, 0);
            }
            other => panic!("expected SingularMinor, got {other:?}"),
        }
    }

    #[test]
    fn triangular_inverses() {
        let l = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 2.0, 1.0, 0.0, -1.0, 0.5, 1.0]);
        let li = inv_unit_lower(&l);
        assert!(((&l * &li) - DMatrix::identity(3, 3)).amax() < 1e-14);
        let r = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, -1.0, 0.0, 0.5, 3.0, 0.0, 0.0, 4.0]);
        let ri = inv_upper(&r).unwrap();
        assert!(((&r * &ri) - DMatrix::identity(3, 3)).amax() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_legendre_jacobi_m2() {
        let j = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0 / 3.0, 0.0]);
        let mut ev = eigenvalues(&j).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let s = 1.0 / 3.0_f64.sqrt();
        assert!((ev[0] - Complex64::new(-s, 0.0)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cond_of_identity_is_one() {
        let m = DMatrix::identity(4, 4);
        assert!((cond_2(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_match_trace_and_determinant() {
        // deterministic pseudo-random matrices of several sizes
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for n in 2..=9 {
            let m = DMatrix::from_fn(n, n, |_, _| next());
            let ev = eigenvalues(&m).unwrap();
            let sum: Complex64 = ev.iter().sum();
            assert!((sum.re - m.trace()).abs() < 1e-9, "n={n}");
            assert!(sum.im.abs() < 1e-9);
            let prod = ev.iter().fold(Complex64::new(1.0, 0.0), |a, &e| a * e);
            let det = m.determinant();
            assert!((prod.re - det).abs() < 1e-8 * det.abs().max(1.0), "n={n}");
            // conjugate closure
            for e in &ev {
                if e.im != 0.0 {
                    assert!(ev.iter().any(|f| (f - e.conj()).norm() < 1e-8));
                }
            }
        }
    }

    #[test]
    fn eigenvalues_agree_with_nalgebra_schur() {
        let mut state = 0x853c49e6748fea9b_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for n in [3usize, 5, 8] {
            let m = DMatrix::from_fn(n, n, |_, _| next());
            let ours = eigenvalues(&m).unwrap();
            if let Some(schur) = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 10000) {
                let theirs: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
                let mut remaining = theirs.clone();
                for e in &ours {
                    let (idx, d) = remaining
                        .iter()
                        .enumerate()
                        .map(|(i, f)| (i, (e - f).norm()))
                        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                        .unwrap();
                    assert!(d < 1e-7, "n={n}: {e} vs {}", remaining[idx]);
                    remaining.swap_remove(idx);
                }
            }
        }
    }

    #[test]
    fn eigenvalues_of_even_legendre_companions_converge() {
        // companion matrices with ±λ spectra that stall naive QR sweeps
        let mut polys: Vec<Vec<f64>> = vec![vec![1.0], vec![0.0, 1.0]];
        for n in 1..10usize {
            let g = (n * n) as f64 / (4.0 * (n * n) as f64 - 1.0);
            let mut next = vec![0.0; n + 2];
            for (k, c) in polys[n].iter().enumerate() {
                next[k + 1] += c;
            }
            for (k, c) in polys[n - 1].iter().enumerate() {
                next[k] -= g * c;
            }
            polys.push(next);
        }
        for d in [4usize, 6, 8, 10] {
            let p = &polys[d];
            let mut comp = DMatrix::zeros(d, d);
            for i in 1..d {
                comp[(i, i - 1)] = 1.0;
            }
            for i in 0..d {
                comp[(i, d - 1)] = -p[i] / p[d];
            }
            let ev = eigenvalues(&comp).unwrap();
            assert_eq!(ev.len(), d);
            for e in &ev {
                assert!(e.im.abs() < 1e-9);
                // each eigenvalue is a root of the polynomial
                let val = p
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * e + c);
                assert!(val.norm() < 1e-9, "degree {d}: p({e}) = {val}");
            }
        }
    }
}
