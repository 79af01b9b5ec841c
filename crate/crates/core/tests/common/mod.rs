//! Shared fixtures for the integration suites: the random quasi-definite
//! corpus and an independent Golub–Welsch oracle for Gauss–Legendre rules.

use mopkit::functionals::{quasi_definite_check, VectorFunctional};
use mopkit::poly::{HPoly, MatrixPoly, ScalarPoly};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Construction depth shared by the corpus-based criteria.
pub const CORPUS_DEPTH: usize = 6;
/// Condition cap for the rejection filter; far below the 1e12 default so
/// the 1e-8/1e-9 acceptance tolerances hold with slack.
pub const CORPUS_COND_LIMIT: f64 = 3e5;

pub struct Instance {
    pub n: usize,
    pub h: HPoly,
    pub u: VectorFunctional,
}

pub fn corpus_seed() -> u64 {
    std::env::var("MOPKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x4d4f_504b_4954_0001)
}

/// Samples `count` quasi-definite moment sets with `N` cycling through
/// {1, 2, 3}: moment entries uniform in [-1, 1], `h` monic with uniform
/// lower coefficients in [-0.25, 0.25], rejection-filtered by the
/// quasi-definiteness condition check.
pub fn sample_corpus(count: usize, depth: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tried = 0usize;
    while out.len() < count {
        tried += 1;
        assert!(tried < 100_000, "corpus rejection rate unexpectedly high");
        let n = 1 + (tried % 3);
        let mut hc = vec![0.0; n + 1];
        hc[n] = 1.0;
        for c in hc.iter_mut().take(n) {
            *c = rng.gen_range(-0.25..0.25);
        }
        let h = HPoly::new(ScalarPoly::new(hc)).expect("monic h");
        let k_max = 2 * depth * n + n - 1;
        let moments: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..=k_max).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let u = VectorFunctional::new(moments).expect("nonempty moments");
        let report =
            quasi_definite_check(&u, &h, depth, CORPUS_COND_LIMIT).expect("depth is in range");
        if report.ok {
            out.push(Instance { n, h, u });
        }
    }
    out
}

pub fn random_matrix_poly(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> MatrixPoly {
    MatrixPoly::new(
        n,
        (0..=degree)
            .map(|_| DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

/// Prints the per-criterion verdict line and asserts the outcome.
pub fn report(criterion: &str, ok: bool, detail: &str) {
    println!("{} {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{criterion}: {detail}");
}

/// Gauss–Legendre nodes and weights on [-1, 1] by the Golub–Welsch
/// algorithm: eigenvalues and first eigenvector components of the symmetric
/// tridiagonal Jacobi matrix with zero diagonal and off-diagonal
/// `b_k = k/sqrt(4k² - 1)`. The tridiagonal eigensolver below is the
/// implicit-shift QL iteration, self-contained so the oracle shares no code
/// with the construction it checks.
pub fn golub_welsch_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0_f64; m];
    let mut e = vec![0.0_f64; m];
    for k in 1..m {
        let kf = k as f64;
        e[k - 1] = kf / (4.0 * kf * kf - 1.0).sqrt();
    }
    let mut z = vec![vec![0.0_f64; m]; m];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    tql_implicit(&mut d, &mut e, &mut z);
    let mut pairs: Vec<(f64, f64)> = (0..m).map(|i| (d[i], 2.0 * z[0][i] * z[0][i])).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    (
        pairs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.1).collect(),
    )
}

/// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating the
/// eigenvectors in `z` (columns).
fn tql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) {
    let n = d.len();
    if n == 0 {
        return;
    }
    let mut e = {
        let mut shifted = vec![0.0; n];
        shifted[..n - 1].copy_from_slice(&e[..n - 1]);
        shifted
    };
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "QL iteration stalled");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m as isize - 1;
            while i >= l as isize {
                let iu = i as usize;
                let mut f = s * e[iu];
                let b = c * e[iu];
                r = f.hypot(g);
                e[iu + 1] = r;
                if r == 0.0 {
                    d[iu + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[iu + 1] - p;
                r = (d[iu] - g) * s + 2.0 * c * b;
                p = s * r;
                d[iu + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    f = row[iu + 1];
                    row[iu + 1] = s * row[iu] + c * f;
                    row[iu] = c * row[iu] - s * f;
                }
                i -= 1;
            }
            if r == 0.0 && i >= l as isize {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
