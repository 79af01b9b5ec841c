//! Built-in reference functionals with closed-form moments, used by the
//! verification command and the test suites.

use crate::functionals::VectorFunctional;
use crate::poly::HPoly;

/// Lebesgue measure on `[-1, 1]`, `N = 1`, `h = x`:
/// `μ_k = 2/(k+1)` for even `k`, zero for odd `k`.
pub fn lebesgue_n1(k_max: usize) -> (VectorFunctional, HPoly) {
    let m = (0..=k_max)
        .map(|k| {
            if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            }
        })
        .collect();
    (
        VectorFunctional::new(vec![m]).expect("nonempty moments"),
        HPoly::monic_power(1),
    )
}

/// The pair of weights `w_1 = 1`, `w_2 = x` on `[-1, 1]` with `h = x²`:
/// the block moments are `diag(2/(2j+1), 2/(2j+3))`, so the construction
/// decouples into two scalar Legendre-type problems.
pub fn legendre_type_n2(k_max: usize) -> (VectorFunctional, HPoly) {
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
    (
        VectorFunctional::new(vec![m1, m2]).expect("nonempty moments"),
        HPoly::monic_power(2),
    )
}

/// The pair of weights `w_1 = |x|`, `w_2 = sign(x)` on `[-1, 1]` with
/// `h = x²`: every block moment is the scalar `1/(j+1)` times the identity,
/// so `V_m = q_m·I` with `q_m` monic Legendre-type on `[0, 1]` and every
/// zero of `det V_m = q_m²` is double with full two-dimensional kernels.
/// The fixture that exercises the multiple-zero quadrature branch.
pub fn double_zero_n2(k_max: usize) -> (VectorFunctional, HPoly) {
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
    (
        VectorFunctional::new(vec![m1, m2]).expect("nonempty moments"),
        HPoly::monic_power(2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::block_moment;

    #[test]
    fn double_zero_fixture_has_scalar_identity_moments() {
        let (u, h) = double_zero_n2(13);
        for j in 0..=3usize {
            let b = block_moment(&u, &h, j).unwrap().matrix;
            let s = 1.0 / (j as f64 + 1.0);
            assert!((b[(0, 0)] - s).abs() < 1e-15);
            assert!((b[(1, 1)] - s).abs() < 1e-15);
            assert!(b[(0, 1)].abs() < 1e-15);
            assert!(b[(1, 0)].abs() < 1e-15);
        }
    }
}
