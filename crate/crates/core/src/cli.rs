//! Batch front-end: ingest moment or recurrence files, run constructions
//! and verification suites, emit JSON/CSV reports.
//!
//! One command per pillar so a CI run can bisect a failure to the piece of
//! theory it violates. Exit codes: `0` success, `1` invariant violation,
//! `2` input or usage error. Reports are deterministic: fixed ordering,
//! shortest round-trip float formatting, and randomized probes seeded from
//! `MOPKIT_SEED` (default fixed).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functionals::{
    markov_eval_series, quasi_definite_check, MarkovSeries, VectorFunctional, DEFAULT_COND_TOL,
};
use crate::io::{
    ExactnessRow, FamilyFile, MomentFile, RecurrenceFile, RuleFile, ScalarRecurrenceFile,
};
use crate::linalg::max_abs_c;
use crate::orthogonal::{
    build_pair, triangularity_deviation, verify_biorthogonality, LeftFamily, RightFamily,
};
use crate::poly::{HPoly, MatrixPoly, VectorPoly};
use crate::recurrence::{
    block_residual, block_to_scalar, extract_coeffs, rebuild_left, rebuild_right, scalar_residual,
    scalar_to_block,
};
use crate::spectral::{
    assoc_first_left, cd_confluent_residuals, cd_residual, exact_functional_c, first_kind_family,
    hermite_pade_left, hermite_pade_right, markov_approximant, multiset_distance, quadrature_apply,
    quadrature_rule, quadrature_rule_from_zeros, zeros_via_det, zeros_via_jacobi,
};
use crate::{Complex64, Error};

/// Default tolerance for the pass/fail checks that have no tighter bound
/// pinned by the invariant being tested.
const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build both families and export them with the bi-orthogonality deviation.
    Orthogonalize,
    /// Extract the block recurrence coefficients from a moment file.
    Recurrence,
    /// Convert a scalar recurrence file to block form and round-trip it.
    Convert,
    /// Build a Gauss-type rule and probe its exactness degree by degree.
    Quadrature,
    /// Tabulate Markov approximant errors over orders and evaluation points.
    Markov,
    /// Run the invariant suite on a moment file, a family export, or the
    /// built-in fixtures.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Unit lower triangular `L`: `α_m^m = L^{-1}`, `Δ_m = R`, `Θ_m = L`,
    /// `β_m^m = R^{-1}` — the pair is bi-orthonormal with no rescaling.
    Doolittle,
}

#[derive(Debug, Parser)]
#[command(
    name = "mopkit",
    about = "Bi-orthogonal vector/matrix polynomial constructions and diagnostics",
    version
)]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Input file (moment, scalar-recurrence, or family JSON depending on the command).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file (JSON or CSV depending on the command).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Construction depth: families are built for orders 0..=M.
    #[arg(long = "M")]
    pub depth: Option<usize>,
    /// Quadrature order (the rule uses the zeros of `V_m`).
    #[arg(long = "m")]
    pub order: Option<usize>,
    /// Evaluation points "re,im" (repeatable).
    #[arg(long = "z")]
    pub z: Vec<String>,
    /// Pass/fail tolerance override.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Normalization::Doolittle)]
    pub normalization: Normalization,
}

enum Failure {
    /// An invariant the report checks did not hold (exit 1).
    Invariant(String),
    /// Bad input: missing file, malformed JSON, unusable arguments (exit 2).
    Input(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invariant(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Entry point used by the `mopkit` binary; returns the process exit code.
pub fn run() -> i32 {
    let config = RunConfig::parse();
    match dispatch(&config) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

fn dispatch(config: &RunConfig) -> CliResult<()> {
    if let Some(tol) = config.tol {
        // NaN is rejected along with nonpositive values
        if tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Failure::Input(format!("--tol must be positive, got {tol}")));
        }
    }
    match config.command {
        Command::Orthogonalize => cmd_orthogonalize(config),
        Command::Recurrence => cmd_recurrence(config),
        Command::Convert => cmd_convert(config),
        Command::Quadrature => cmd_quadrature(config),
        Command::Markov => cmd_markov(config),
        Command::Verify => cmd_verify(config),
    }
}

fn seed_from_env() -> u64 {
    std::env::var("MOPKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x4d4f_504b_4954_0001)
}

fn required_input(config: &RunConfig) -> CliResult<&Path> {
    config
        .input
        .as_deref()
        .ok_or_else(|| Failure::Input("--input is required for this command".into()))
}

fn required_output(config: &RunConfig) -> CliResult<&Path> {
    config
        .output
        .as_deref()
        .ok_or_else(|| Failure::Input("--output is required for this command".into()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Input(format!("serialization failed: {e}")))?;
    text.push('\n');
    write_text(path, &text)
}

fn load_moments(path: &Path) -> CliResult<(VectorFunctional, HPoly, Option<f64>)> {
    let mf: MomentFile = read_json(path)?;
    let radius = mf.radius_hint;
    let (u, h) = mf.to_functional()?;
    Ok((u, h, radius))
}

fn parse_z_list(config: &RunConfig) -> CliResult<Vec<Complex64>> {
    if config.z.is_empty() {
        return Err(Failure::Input("at least one --z point is required".into()));
    }
    config
        .z
        .iter()
        .map(|s| {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 2 {
                return Err(Failure::Input(format!("--z expects \"re,im\", got {s:?}")));
            }
            let re: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|e| Failure::Input(format!("bad real part in {s:?}: {e}")))?;
            let im: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|e| Failure::Input(format!("bad imaginary part in {s:?}: {e}")))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

fn cmd_orthogonalize(config: &RunConfig) -> CliResult<()> {
    let input = required_input(config)?;
    let output = required_output(config)?;
    let depth = config.depth.unwrap_or(4);
    let tol = config.tol.unwrap_or(DEFAULT_TOL);
    let (u, h, _) = load_moments(input)?;
    let (left, right) = build_pair(&u, &h, depth)?;
    let deviation = verify_biorthogonality(&left, &right, &u, &h)?;
    let file = FamilyFile::from_families(u.n(), &h, &left, &right, deviation);
    write_json(output, &file)?;
    println!("orthogonalize: M={depth} bi-orthogonality deviation {deviation:e}");
    if deviation > tol {
        return Err(Failure::Invariant(format!(
            "bi-orthogonality deviation {deviation:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(())
}

fn cmd_recurrence(config: &RunConfig) -> CliResult<()> {
    let input = required_input(config)?;
    let output = required_output(config)?;
    let depth = config.depth.unwrap_or(4);
    if depth == 0 {
        return Err(Failure::Input(
            "recurrence extraction needs --M >= 1".into(),
        ));
    }
    let (u, h, _) = load_moments(input)?;
    let left = crate::orthogonal::build_left(&u, &h, depth)?;
    let rc = extract_coeffs(&left, &u, &h)?;
    let residual = block_residual(&left.v, &rc);
    let file = RecurrenceFile::from_coeffs(&rc, &left.delta, residual);
    write_json(output, &file)?;
    println!("recurrence: M={depth} block residual {residual:e}");
    let tol = config.tol.unwrap_or(1e-9);
    if residual > tol {
        return Err(Failure::Invariant(format!(
            "block recurrence residual {residual:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct ConvertReport {
    #[serde(flatten)]
    blocks: RecurrenceFile,
    roundtrip_residual: f64,
    scalar_recurrence_residual: f64,
    /// The regenerated scalar polynomials, ascending coefficients.
    p: Vec<Vec<f64>>,
}

fn cmd_convert(config: &RunConfig) -> CliResult<()> {
    let input = required_input(config)?;
    let output = required_output(config)?;
    let file: ScalarRecurrenceFile = read_json(input)?;
    if file.c.is_empty() {
        return Err(Failure::Input(
            "scalar recurrence file has an empty coefficient list".into(),
        ));
    }
    let sr = file.to_recurrence()?;
    let depth = config.depth.unwrap_or(4);
    let rc = scalar_to_block(&sr, depth)?;
    let b0 = VectorPoly::new(sr.initial.clone()).map_err(Failure::from)?;
    let p = block_to_scalar(&rc, &sr.h, &b0, depth)?;
    let res = scalar_residual(&sr, &p);
    let report = ConvertReport {
        blocks: RecurrenceFile::from_coeffs(&rc, &[], 0.0),
        roundtrip_residual: res,
        scalar_recurrence_residual: res,
        p: p.iter().map(|q| q.coeffs().to_vec()).collect(),
    };
    write_json(output, &report)?;
    println!("convert: M={depth} round-trip residual {res:e}");
    let tol = config.tol.unwrap_or(1e-10);
    if res > tol {
        return Err(Failure::Invariant(format!(
            "scalar recurrence round-trip residual {res:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(())
}

fn random_matrix_poly(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> MatrixPoly {
    let coeffs = (0..=degree)
        .map(|_| DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)))
        .collect();
    MatrixPoly::new(n, coeffs)
}

fn cmd_quadrature(config: &RunConfig) -> CliResult<()> {
    let input = required_input(config)?;
    let output = required_output(config)?;
    let m = config
        .order
        .ok_or_else(|| Failure::Input("--m (quadrature order) is required".into()))?;
    if m == 0 {
        return Err(Failure::Input(
            "no quadrature rule of order 0 exists".into(),
        ));
    }
    let (u, h, _) = load_moments(input)?;
    let left = crate::orthogonal::build_left(&u, &h, m)?;
    let rule = quadrature_rule(&left, &u, &h, m, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env());
    let mut exactness = Vec::new();
    for degree in 0..=2 * m {
        let mut worst = 0.0_f64;
        for _ in 0..3 {
            let p = random_matrix_poly(&mut rng, u.n(), degree);
            let got = quadrature_apply(&rule, &p);
            let exact = exact_functional_c(&u, &h, &p)?;
            let scale = max_abs_c(&exact).max(1.0);
            worst = worst.max(max_abs_c(&(&got - &exact)) / scale);
        }
        exactness.push(ExactnessRow {
            degree,
            deviation: worst,
        });
    }
    let file = RuleFile::from_rule(u.n(), m, &rule, exactness);
    write_json(output, &file)?;
    println!(
        "quadrature: m={m}, {} nodes, total multiplicity {}",
        rule.zeros.len(),
        rule.zeros.total_multiplicity()
    );
    Ok(())
}

fn cmd_markov(config: &RunConfig) -> CliResult<()> {
    let input = required_input(config)?;
    let output = required_output(config)?;
    let depth = config.depth.unwrap_or(6);
    if depth == 0 {
        return Err(Failure::Input("markov needs --M >= 1".into()));
    }
    let zs = parse_z_list(config)?;
    let (u, h, radius) = load_moments(input)?;
    let radius = radius.unwrap_or(0.0);
    let (left, right) = build_pair(&u, &h, depth)?;
    let fk = first_kind_family(&left, &right, &u, &h)?;
    let available = (u.k_max() - (u.n() - 1)) / u.n();
    let series_depth = MarkovSeries::default_depth(depth, u.n()).min(available);
    let ms = MarkovSeries::from_functional(&u, &h, series_depth, radius)?;
    let mut csv = String::from("m,z_re,z_im,error,status\n");
    for m in 1..=depth {
        for &z in &zs {
            let mut status = "ok";
            let mut err_str = String::new();
            if z.norm() <= radius {
                status = "invalid";
            } else {
                match (
                    markov_approximant(&left, &fk, m, z),
                    markov_eval_series(&ms, z),
                ) {
                    (Ok(approx), Ok(f)) => {
                        let e = max_abs_c(&(&approx - &f));
                        write!(err_str, "{e}").unwrap();
                    }
                    _ => status = "invalid",
                }
            }
            writeln!(csv, "{m},{},{},{err_str},{status}", z.re, z.im).unwrap();
        }
    }
    write_text(output, &csv)?;
    println!("markov: M={depth}, {} evaluation points", zs.len());
    Ok(())
}

struct Suite {
    lines: Vec<(bool, String)>,
}

impl Suite {
    fn new() -> Self {
        Suite { lines: Vec::new() }
    }

    fn check(&mut self, name: &str, value: f64, tol: f64) {
        let ok = value <= tol;
        self.lines
            .push((ok, format!("{name} ({value:.3e} vs {tol:.1e})")));
    }

    fn finish(self) -> CliResult<()> {
        let mut failed = Vec::new();
        for (ok, line) in &self.lines {
            println!("{} {}", if *ok { "PASS" } else { "FAIL" }, line);
            if !ok {
                failed.push(line.clone());
            }
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Failure::Invariant(format!(
                "{} invariant(s) violated: {}",
                failed.len(),
                failed.join("; ")
            )))
        }
    }
}

fn verify_moment_suite(
    suite: &mut Suite,
    label: &str,
    u: &VectorFunctional,
    h: &HPoly,
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> CliResult<()> {
    let qd = quasi_definite_check(u, h, depth, DEFAULT_COND_TOL)?;
    suite.check(
        &format!("{label}/quasi-definiteness"),
        if qd.ok { 0.0 } else { 1.0 },
        0.0,
    );
    let (left, right) = build_pair(u, h, depth)?;
    let deviation = verify_biorthogonality(&left, &right, u, h)?;
    suite.check(&format!("{label}/bi-orthogonality"), deviation, DEFAULT_TOL);
    suite.check(
        &format!("{label}/triangular-normalization"),
        triangularity_deviation(&left, &right),
        1e-12,
    );
    let rc = extract_coeffs(&left, u, h)?;
    suite.check(
        &format!("{label}/block-recurrence-residual"),
        block_residual(&left.v, &rc),
        1e-9,
    );
    // Favard round trips
    let rebuilt_v = rebuild_left(&rc, depth, Some(&left.v[0]))?;
    let mut worst = 0.0_f64;
    for (rebuilt, built) in rebuilt_v.iter().zip(&left.v) {
        worst = worst.max(rebuilt.coeff_distance(built) / built.max_abs_coeff().max(1.0));
    }
    suite.check(
        &format!("{label}/favard-round-trip-left"),
        worst,
        DEFAULT_TOL,
    );
    let rebuilt_g = rebuild_right(&rc, depth - 1, &right.g[0])?;
    let mut worst = 0.0_f64;
    for (rebuilt, built) in rebuilt_g.iter().zip(&right.g) {
        worst = worst.max(rebuilt.coeff_distance(built) / built.max_abs_coeff().max(1.0));
    }
    suite.check(
        &format!("{label}/favard-round-trip-right"),
        worst,
        DEFAULT_TOL,
    );
    // Delta product identity
    let mut prod = left.delta[0].clone();
    let mut worst = 0.0_f64;
    for m in 1..depth {
        prod = rc.c_at(m) * prod;
        worst = worst.max((&prod - &left.delta[m]).amax() / left.delta[m].amax());
    }
    suite.check(&format!("{label}/delta-product"), worst, DEFAULT_TOL);
    // spectral cross-validation
    let mut worst = 0.0_f64;
    for m in 1..=depth.min(4) {
        let zj = zeros_via_jacobi(&rc, m, None)?;
        let zd = zeros_via_det(&left.v[m], None)?;
        worst = worst.max(multiset_distance(&zj.expanded(), &zd.expanded()));
    }
    suite.check(&format!("{label}/zeros-cross-validation"), worst, 1e-6);
    // Christoffel-Darboux at random points
    let mut worst_cd = 0.0_f64;
    let mut worst_conf = 0.0_f64;
    let m_cd = depth - 2;
    for _ in 0..5 {
        let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
        worst_cd = worst_cd.max(cd_residual(&left, &right, &rc, m_cd, x, z)?);
        let conf = cd_confluent_residuals(&left, &right, &rc, m_cd, x)?;
        worst_conf = worst_conf.max(conf[0]).max(conf[1]).max(conf[2]);
    }
    suite.check(&format!("{label}/christoffel-darboux"), worst_cd, 1e-9);
    suite.check(
        &format!("{label}/christoffel-darboux-confluent"),
        worst_conf,
        DEFAULT_TOL,
    );
    // Hermite-Pade orders
    let fk = first_kind_family(&left, &right, u, h)?;
    let m_hp = depth - 1;
    let rep = hermite_pade_left(&left.v[m_hp + 1], &fk.bq[m_hp], u, h, m_hp + 2)?;
    let mut worst = rep.nonneg_residual;
    for q in 1..=m_hp + 1 {
        worst = worst.max(rep.tail[q - 1].amax() / left.delta[m_hp + 1].amax());
    }
    worst = worst
        .max((&rep.tail[m_hp + 1] - &left.delta[m_hp + 1]).amax() / left.delta[m_hp + 1].amax());
    let rep_r = hermite_pade_right(&right.g[m_hp + 1], &fk.gq[m_hp], u, h, m_hp + 2)?;
    worst = worst.max(
        (&rep_r.tail[m_hp + 1] - &right.theta[m_hp + 1]).amax() / right.theta[m_hp + 1].amax(),
    );
    suite.check(&format!("{label}/hermite-pade-order"), worst, DEFAULT_TOL);
    // quadrature exactness at a mid order, simple-zero path
    let m_q = depth.min(3);
    let zeros = zeros_via_det(&left.v[m_q], None)?;
    if zeros.mults.iter().all(|&l| l == 1) {
        let rule = quadrature_rule(&left, u, h, m_q, None)?;
        let mut worst = 0.0_f64;
        for degree in 0..=2 * m_q - 1 {
            let p = random_matrix_poly(rng, u.n(), degree);
            let got = quadrature_apply(&rule, &p);
            let exact = exact_functional_c(u, h, &p)?;
            worst = worst.max(max_abs_c(&(&got - &exact)) / max_abs_c(&exact).max(1.0));
        }
        suite.check(&format!("{label}/quadrature-exactness"), worst, DEFAULT_TOL);
    }
    Ok(())
}

fn verify_family_suite(suite: &mut Suite, left: &LeftFamily, right: &RightFamily) {
    suite.check(
        "family/triangular-normalization",
        triangularity_deviation(left, right),
        1e-10,
    );
    // Doolittle duality: Δ_m β_m^m = I and α_m^m Θ_m = I
    let mut worst_db = 0.0_f64;
    let mut worst_at = 0.0_f64;
    let n = left.n();
    for m in 0..left.len().min(right.len()) {
        let db = &left.delta[m] * right.beta(m, m) - DMatrix::identity(n, n);
        worst_db = worst_db.max(db.amax());
        let at = left.alpha(m, m) * &right.theta[m] - DMatrix::identity(n, n);
        worst_at = worst_at.max(at.amax());
    }
    suite.check("family/delta-beta-inverse", worst_db, DEFAULT_TOL);
    suite.check("family/theta-alpha-inverse", worst_at, DEFAULT_TOL);
    let mut degree_bad = 0.0_f64;
    for (m, v) in left.v.iter().enumerate() {
        if v.degree() != m as isize {
            degree_bad = 1.0;
        }
    }
    for (m, g) in right.g.iter().enumerate() {
        if g.degree() != m as isize {
            degree_bad = 1.0;
        }
    }
    suite.check("family/degree-structure", degree_bad, 0.0);
}

fn cmd_verify(config: &RunConfig) -> CliResult<()> {
    let mut suite = Suite::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env());
    match &config.input {
        Some(path) => {
            let value: serde_json::Value = read_json(path)?;
            if value.get("V").is_some() {
                let file: FamilyFile =
                    serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
                let (left, right) = file.to_families()?;
                verify_family_suite(&mut suite, &left, &right);
            } else if value.get("moments").is_some() {
                let file: MomentFile =
                    serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
                let (u, h) = file.to_functional()?;
                let depth = config.depth.unwrap_or(4).max(3);
                verify_moment_suite(&mut suite, "input", &u, &h, depth, &mut rng)?;
            } else {
                return Err(Failure::Input(format!(
                    "{} is neither a moment file nor a family export",
                    path.display()
                )));
            }
        }
        None => {
            // built-in fixtures
            let depth = config.depth.unwrap_or(5);
            let (u1, h1) = crate::fixtures::lebesgue_n1(2 * depth + 2);
            verify_moment_suite(&mut suite, "legendre-n1", &u1, &h1, depth, &mut rng)?;
            let (u2, h2) = crate::fixtures::legendre_type_n2(2 * 2 * depth + 3);
            verify_moment_suite(&mut suite, "legendre-n2", &u2, &h2, depth, &mut rng)?;
            // the multiple-zero branch on the equal-weight fixture
            let (u3, h3) = crate::fixtures::double_zero_n2(21);
            let (left3, _) = build_pair(&u3, &h3, 3)?;
            let m = 2;
            let zeros = zeros_via_det(&left3.v[m], Some(1e-5))?;
            let all_double = zeros.mults.iter().all(|&l| l == 2);
            suite.check(
                "double-zero/multiplicity-detection",
                if all_double { 0.0 } else { 1.0 },
                0.0,
            );
            let bq = assoc_first_left(&left3.v[m], &u3, &h3)?;
            let rule = quadrature_rule_from_zeros(&left3.v[m], &bq, &zeros)?;
            let mut worst = 0.0_f64;
            for degree in 0..=2 * m - 1 {
                let p = random_matrix_poly(&mut rng, 2, degree);
                let got = quadrature_apply(&rule, &p);
                let exact = exact_functional_c(&u3, &h3, &p)?;
                worst = worst.max(max_abs_c(&(&got - &exact)) / max_abs_c(&exact).max(1.0));
            }
            suite.check("double-zero/quadrature-exactness", worst, 1e-6);
        }
    }
    suite.finish()
}
