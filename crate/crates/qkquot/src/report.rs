//! Matrix parsing and the structured reports behind the command line tool.
//!
//! Every report is one JSON object with a `schema` field. Exact values are
//! strings holding reduced fractions or integers, floats are strings with 17
//! significant digits. Field order is fixed by the struct definitions, so
//! identical inputs give byte-identical output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;
use thiserror::Error;

use crate::exact::gcd_list;
use crate::quatmoment::Weights;
use crate::strata::{
    self, catalog_omega, catalog_theta, det_m_alpha, det_m_alpha_factored, j_symmetry_violations, vanishing_rho,
    Case, ExactData, SingularLocusCatalog, StratumDecision,
};
use crate::weights::{
    boxes, boxes_via_minors, freeness_obstruction, is_free_omega, is_locally_free_omega, is_locally_free_theta,
    minors_omega, minors_theta, minors_via_boxes, omega_free_from_minors, theorem_a_admissible, OmegaMatrix,
    ThetaMatrix, MINOR_TRIPLES, OMEGA_PAIRS,
};
use crate::zeroset::{find_point, find_point_omega, report_of, SolverConfig};

pub const SCHEMA: &str = "qkquot-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrix {
    Theta(ThetaMatrix),
    Omega(OmegaMatrix),
}

impl Matrix {
    pub fn weights(&self) -> Weights<'_> {
        match self {
            Matrix::Theta(t) => Weights::Theta(t),
            Matrix::Omega(o) => Weights::Omega(o),
        }
    }

    /// `rows` joined by `; `, the canonical text form.
    pub fn canonical(&self) -> String {
        match self {
            Matrix::Theta(t) => t.to_string(),
            Matrix::Omega(o) => o.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row}: `{token}` is not an integer")]
    Parse { row: usize, token: String },
    #[error("expected 3 rows of 4 or 2 rows of 3 integers, got row lengths {0:?}")]
    Shape(Vec<usize>),
}

fn parse_int(token: &str) -> Option<BigInt> {
    let digits = token.strip_prefix('-').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

/// Rows separated by `;` or newlines, entries by whitespace.
///
/// ```
/// use qkquot::report::{parse_matrix, Matrix};
/// assert!(matches!(parse_matrix("1 0 1 1; 0 1 1 1; 1 1 0 1"), Ok(Matrix::Theta(_))));
/// assert!(matches!(parse_matrix("1 0 1\n0 1 1\n"), Ok(Matrix::Omega(_))));
/// assert!(parse_matrix("1 2\n3 4").is_err());
/// ```
pub fn parse_matrix(text: &str) -> Result<Matrix, MatrixError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for line in text.split(['\n', ';']) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let row = tokens
            .iter()
            .map(|t| parse_int(t).ok_or_else(|| MatrixError::Parse { row: rows.len() + 1, token: t.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
    match shape.as_slice() {
        [4, 4, 4] => {
            let r: [[BigInt; 4]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone()));
            Ok(Matrix::Theta(ThetaMatrix::new(r)))
        }
        [3, 3] => {
            let r: [[BigInt; 3]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone()));
            Ok(Matrix::Omega(OmegaMatrix::new(r)))
        }
        _ => Err(MatrixError::Shape(shape)),
    }
}

/// `{:.16e}`, 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Named {
    pub name: String,
    pub value: String,
}

fn named(name: impl Into<String>, value: impl ToString) -> Named {
    Named { name: name.into(), value: value.to_string() }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub admissible: bool,
    pub failing: Option<String>,
    pub locally_free: bool,
    pub free: bool,
    pub free_detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionReport {
    pub label: String,
    pub intersects: bool,
    pub isotropy_invariant: String,
    pub quotient: String,
    pub quotient_dim: u32,
    pub stratum_dim: u32,
    pub boundary: bool,
    pub exact_data: Vec<Named>,
    pub witness_residual: Option<String>,
    pub reason: Option<String>,
}

impl From<&StratumDecision> for DecisionReport {
    fn from(d: &StratumDecision) -> Self {
        let exact_data = match &d.exact_data {
            None => Vec::new(),
            Some(ExactData::PairNorms(m)) => {
                // first coordinate of each torus pair
                let first = if d.label.case() == Case::Omega { 2 } else { 1 };
                m.iter().enumerate().map(|(k, v)| named(format!("|u_{}|^2", 2 * k + first), v)).collect()
            }
            Some(ExactData::Twists { c, imag }) => std::iter::once(named("c", c))
                .chain(imag.iter().enumerate().map(|(k, v)| named(format!("y_{}", k + 1), v)))
                .collect(),
        };
        DecisionReport {
            label: d.label.to_string(),
            intersects: d.intersects,
            isotropy_invariant: d.isotropy_invariant.to_string(),
            quotient: d.quotient_kind.to_string(),
            quotient_dim: d.quotient_dim(),
            stratum_dim: d.dim,
            boundary: d.boundary,
            exact_data,
            witness_residual: d.witness_residual.map(fmt_float),
            reason: d.reason.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSetReport {
    pub name: String,
    pub points: Vec<DecisionReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogReport {
    pub type1_spheres: Vec<DecisionReport>,
    pub type2_spheres: Vec<DecisionReport>,
    pub point_sets: Vec<PointSetReport>,
    pub excluded: Vec<DecisionReport>,
    pub empty: Vec<DecisionReport>,
    pub mixed_certificates: Vec<Named>,
    pub bound_violations: Vec<String>,
    pub j_symmetry_violations: Vec<String>,
    pub notes: Vec<String>,
}

fn catalog_report(cat: &SingularLocusCatalog, j: Vec<String>) -> CatalogReport {
    let list = |v: &[StratumDecision]| v.iter().map(DecisionReport::from).collect();
    CatalogReport {
        type1_spheres: list(&cat.type1_spheres),
        type2_spheres: list(&cat.type2_spheres),
        point_sets: cat
            .point_sets
            .iter()
            .map(|s| PointSetReport { name: s.name.clone(), points: list(&s.points) })
            .collect(),
        excluded: list(&cat.excluded),
        empty: list(&cat.empty),
        mixed_certificates: cat
            .certificates
            .iter()
            .map(|c| named(c.label.to_string(), format!("det {}, forces u = 0: {}", c.det, c.is_valid())))
            .collect(),
        bound_violations: cat.bound_violations(),
        j_symmetry_violations: j,
        notes: cat.notes.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRun {
    pub seed: u64,
    pub converged: bool,
    pub residual: String,
    pub iterations: usize,
    pub rank: usize,
    pub min_pair_norm: String,
    pub point: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub tol: String,
    pub max_iter: usize,
    pub converged: usize,
    pub runs: Vec<SampleRun>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub case: &'static str,
    pub matrix: String,
    pub minors: Vec<Named>,
    pub boxes: Vec<Named>,
    pub verdict: Verdict,
    pub catalog: Option<CatalogReport>,
    pub sample: Option<SampleReport>,
    /// First solver seed, present for `sample`.
    pub seed: Option<u64>,
    pub error: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotAdmissible,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotAdmissible | Status::Failed => 1,
        }
    }
}

fn base_report(command: &str, m: &Matrix) -> AnalysisReport {
    let (case, minors, boxes_list, verdict) = match m {
        Matrix::Theta(t) => {
            let mi = minors_theta(t);
            let minors = MINOR_TRIPLES
                .iter()
                .map(|tr| named(format!("D{}{}{}", tr[0], tr[1], tr[2]), mi.get(*tr)))
                .collect();
            let bx = boxes(t);
            let boxes_list = bx.iter().map(|(s, v)| named(s.to_string(), v)).collect();
            let adm = theorem_a_admissible(t);
            let lf = is_locally_free_theta(t);
            let unit = bx.iter().all(|(_, v)| v.abs() == BigInt::from(1));
            let verdict = Verdict {
                admissible: adm.admissible && lf.locally_free,
                failing: adm.failing.map(|c| c.to_string()).or_else(|| lf.witness.map(|w| w.to_string())),
                locally_free: lf.locally_free,
                free: lf.locally_free && unit,
                free_detail: if unit {
                    "all eight boxes are +-1".into()
                } else {
                    "some box has absolute value other than 1; no weight matrix has all eight equal to +-1".into()
                },
            };
            ("theta", minors, boxes_list, verdict)
        }
        Matrix::Omega(o) => {
            let mi = minors_omega(o);
            let minors = OMEGA_PAIRS.iter().map(|p| named(format!("D{}{}", p[0], p[1]), mi.get(*p))).collect();
            let lf = is_locally_free_omega(o);
            let failing = OMEGA_PAIRS
                .iter()
                .find(|p| mi.get(**p).is_zero())
                .map(|p| format!("D{}{} = 0, every minor must be nonzero", p[0], p[1]));
            let g = gcd_list(&mi.as_array());
            let verdict = Verdict {
                admissible: lf,
                failing,
                locally_free: lf,
                free: is_free_omega(o),
                free_detail: format!("free on S_1 iff gcd of the minors is 1; gcd = {g}"),
            };
            ("omega", minors, Vec::new(), verdict)
        }
    };
    AnalysisReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION,
        command: command.into(),
        case,
        matrix: m.canonical(),
        minors,
        boxes: boxes_list,
        verdict,
        catalog: None,
        sample: None,
        seed: None,
        error: None,
        status: Status::Ok,
    }
}

pub fn run_check(m: &Matrix) -> AnalysisReport {
    let mut r = base_report("check", m);
    if !r.verdict.admissible {
        r.status = Status::NotAdmissible;
    }
    r
}

pub fn run_catalog(m: &Matrix) -> AnalysisReport {
    let mut r = base_report("catalog", m);
    if !r.verdict.admissible {
        r.status = Status::NotAdmissible;
        return r;
    }
    let cat = match m {
        Matrix::Theta(t) => catalog_theta(t).map(|c| {
            let j = j_symmetry_violations(&c, t);
            catalog_report(&c, j)
        }),
        Matrix::Omega(o) => catalog_omega(o).map(|c| catalog_report(&c, Vec::new())),
    };
    match cat {
        Ok(c) => r.catalog = Some(c),
        Err(e) => {
            r.error = Some(e.to_string());
            r.status = Status::Failed;
        }
    }
    r
}

/// Solver runs for seeds `seed..seed + count`.
pub fn run_sample(m: &Matrix, seed: u64, count: u64, cfg: SolverConfig) -> AnalysisReport {
    let mut r = base_report("sample", m);
    r.seed = Some(seed);
    let mut runs = Vec::new();
    for seed in seed..seed + count {
        let out = match m {
            Matrix::Theta(t) => find_point(t, seed, cfg),
            Matrix::Omega(o) => find_point_omega(o, seed, cfg),
        };
        let Some(rep) = report_of(&out) else { continue };
        runs.push(SampleRun {
            seed,
            converged: rep.converged,
            residual: fmt_float(rep.residual),
            iterations: rep.iterations,
            rank: rep.rank,
            min_pair_norm: fmt_float(rep.min_pair_norm),
            point: rep.point.to_reals().into_iter().map(fmt_float).collect(),
        });
    }
    let converged = runs.iter().filter(|s| s.converged).count();
    if converged == 0 {
        r.status = Status::Failed;
        r.error = Some("no seed converged".into());
    }
    r.sample = Some(SampleReport { tol: fmt_float(cfg.tol), max_iter: cfg.max_iter, converged, runs });
    r
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub status: Status,
}

fn random_theta(rng: &mut SplitMix64, lim: i64) -> ThetaMatrix {
    ThetaMatrix::from_i64(std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-lim..=lim))))
}

/// The identity, obstruction and classification suites on seeded random input.
pub fn run_verify(seed: u64) -> VerifyReport {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut bad = 0;
    let n = 2000;
    for _ in 0..n {
        let t = random_theta(&mut rng, 20);
        let (m, b) = (minors_theta(&t), boxes(&t));
        if b != boxes_via_minors(&m) {
            bad += 1;
        }
        let [x, y, z, w] = b.designated();
        if minors_via_boxes(&x, &y, &z, &w).ok().as_ref() != Some(&m) {
            bad += 1;
        }
        if theorem_a_admissible(&t).admissible != is_locally_free_theta(&t).locally_free {
            bad += 1;
        }
    }
    checks.push(CheckResult {
        name: "box identities",
        passed: bad == 0,
        detail: format!("{n} random matrices, {bad} failures"),
    });

    let ob = freeness_obstruction();
    let near: Vec<String> = ob.near_misses.iter().map(|nm| nm.minors.to_string()).collect();
    checks.push(CheckResult {
        name: "freeness obstruction",
        passed: ob.unsat() && near.len() == 2,
        detail: format!("{} assignments, unsat {}, near misses {}", ob.assignments, ob.unsat(), near.join(" ")),
    });

    let mut worst = 0.0f64;
    let mut worst_zero = 0.0f64;
    for _ in 0..500 {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let eps = Complex64::new(v[0] / norm, v[1] / norm);
        let sigma = Complex64::new(v[2] / norm, v[3] / norm);
        let rho = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        worst = worst.max((det_m_alpha(eps, sigma, rho, theta) - det_m_alpha_factored(eps, rho, theta)).norm());
        let rv = vanishing_rho(eps, sigma, theta, 1, 1);
        worst_zero = worst_zero.max(det_m_alpha(eps, sigma, rv, theta).norm());
    }
    checks.push(CheckResult {
        name: "fixed-point determinant",
        passed: worst < 1e-9 && worst_zero < 1e-10,
        detail: format!("max factor gap {}, max enforced value {}", fmt_float(worst), fmt_float(worst_zero)),
    });

    use crate::weights::fixtures;
    for (name, t) in [("theta1", fixtures::theta1()), ("theta2", fixtures::theta2())] {
        let res = strata::type1_catalog(&t);
        let (passed, detail) = match &res {
            Ok(c) => (
                c.certificates.iter().all(|x| x.is_valid()),
                format!("{name}: {} realized, {} mixed certificates", c.realized().count(), c.certificates.len()),
            ),
            Err(e) => (false, format!("{name}: {e}")),
        };
        checks.push(CheckResult { name: "type-one classification", passed, detail });
        let res = catalog_theta(&t);
        let (passed, detail) = match &res {
            Ok(c) => {
                let v = c.bound_violations();
                let j = j_symmetry_violations(c, &t);
                (
                    v.is_empty() && j.is_empty(),
                    format!("{name}: {} spheres, {} points, {} bound and {} J issues", c.sphere_count(), c.point_count(), v.len(), j.len()),
                )
            }
            Err(e) => (false, format!("{name}: {e}")),
        };
        checks.push(CheckResult { name: "catalog bounds and symmetry", passed, detail });
    }

    let mut bad = 0;
    for _ in 0..500 {
        let o = OmegaMatrix::from_i64(std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-9..=9))));
        let mi = minors_omega(&o);
        let lf = mi.as_array().iter().all(|v| !v.is_zero());
        let by_gcd = lf && gcd_list(&mi.as_array()) == BigInt::from(1);
        if is_free_omega(&o) != by_gcd || omega_free_from_minors(&mi) != by_gcd {
            bad += 1;
        }
    }
    checks.push(CheckResult {
        name: "omega freeness",
        passed: bad == 0,
        detail: format!("500 random matrices, {bad} disagreements with the gcd"),
    });

    let status = if checks.iter().all(|c| c.passed) { Status::Ok } else { Status::Failed };
    VerifyReport { schema: SCHEMA, tool_version: TOOL_VERSION, command: "verify", seed, checks, status }
}

pub fn to_json<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn decision_line(out: &mut String, d: &DecisionReport) {
    let data: Vec<String> = d.exact_data.iter().map(|n| format!("{}={}", n.name, n.value)).collect();
    let _ = write!(out, "  {:<24} invariant {:>6}  {}", d.label, d.isotropy_invariant, d.quotient);
    if d.boundary {
        out.push_str("  (boundary)");
    }
    if !data.is_empty() {
        let _ = write!(out, "  [{}]", data.join(", "));
    }
    out.push('\n');
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} ({})", r.command, r.matrix, r.case);
    let minors: Vec<String> = r.minors.iter().map(|n| format!("{}={}", n.name, n.value)).collect();
    let _ = writeln!(out, "minors: {}", minors.join(" "));
    if !r.boxes.is_empty() {
        let b: Vec<String> = r.boxes.iter().map(|n| format!("{}:{}", n.name, n.value)).collect();
        let _ = writeln!(out, "boxes: {}", b.join(" "));
    }
    let v = &r.verdict;
    let _ = writeln!(out, "admissible: {}  locally free: {}  free: {}", v.admissible, v.locally_free, v.free);
    if let Some(f) = &v.failing {
        let _ = writeln!(out, "failing: {f}");
    }
    if let Some(c) = &r.catalog {
        let _ = writeln!(out, "type-one spheres: {}", c.type1_spheres.len());
        c.type1_spheres.iter().for_each(|d| decision_line(&mut out, d));
        let _ = writeln!(out, "type-two spheres: {}", c.type2_spheres.len());
        c.type2_spheres.iter().for_each(|d| decision_line(&mut out, d));
        for s in &c.point_sets {
            let _ = writeln!(out, "points {}: {}", s.name, s.points.len());
            s.points.iter().for_each(|d| decision_line(&mut out, d));
        }
        let _ = writeln!(out, "excluded (invariant +-1): {}", c.excluded.len());
        c.excluded.iter().for_each(|d| decision_line(&mut out, d));
        let _ = writeln!(out, "empty candidates: {}", c.empty.len());
        for w in c.bound_violations.iter().chain(&c.j_symmetry_violations) {
            let _ = writeln!(out, "warning: {w}");
        }
        for n in &c.notes {
            let _ = writeln!(out, "note: {n}");
        }
    }
    if let Some(s) = &r.sample {
        let _ = writeln!(out, "converged {}/{} (tol {})", s.converged, s.runs.len(), s.tol);
        for run in &s.runs {
            let _ = writeln!(
                out,
                "  seed {:>4}  {}  residual {}  rank {}  min pair {}",
                run.seed,
                if run.converged { "ok  " } else { "FAIL" },
                run.residual,
                run.rank,
                run.min_pair_norm
            );
        }
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error: {e}");
    }
    out
}

pub fn render_verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::fixtures;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_matrix("1 0 1 1; 0 1 1 1; 1 1 0 1").unwrap(), Matrix::Theta(fixtures::theta1()));
        assert_eq!(parse_matrix("  9 2 7 1\n40 9 31 0\n1 2 0 1\n").unwrap(), Matrix::Theta(fixtures::theta2()));
        assert!(matches!(parse_matrix("1 0 1\n0 1 1"), Ok(Matrix::Omega(_))));
        assert_eq!(parse_matrix("1 2\n3 4"), Err(MatrixError::Shape(vec![2, 2])));
        assert_eq!(parse_matrix("1 2 3; 4 x 6"), Err(MatrixError::Parse { row: 2, token: "x".into() }));
        assert!(matches!(parse_matrix("1 +2 3; 4 5 6"), Err(MatrixError::Parse { .. })));
        assert!(matches!(parse_matrix("1 - 3; 4 5 6"), Err(MatrixError::Parse { .. })));
        assert_eq!(parse_matrix(""), Err(MatrixError::Shape(vec![])));
    }

    #[test]
    fn canonical_round_trip() {
        for text in ["1 0 1 1; 0 1 1 1; 1 1 0 1", "9 2 7 1; 40 9 31 0; 1 2 0 1", "1 3 2; 0 2 3", "-1 0 5; 2 -7 3"] {
            let m = parse_matrix(text).unwrap();
            assert_eq!(m.canonical(), text);
            assert_eq!(parse_matrix(&m.canonical()).unwrap(), m);
        }
    }

    #[test]
    fn check_theta1() {
        let r = run_check(&Matrix::Theta(fixtures::theta1()));
        assert!(r.verdict.admissible);
        assert_eq!(r.status.exit_code(), 0);
        let m: Vec<&str> = r.minors.iter().map(|n| n.value.as_str()).collect();
        assert_eq!(m, ["-2", "-1", "1", "-1"]);
        assert!(!r.verdict.free);
    }

    #[test]
    fn check_rejects_singular() {
        let r = run_check(&parse_matrix("1 1 0 0; 0 0 1 0; 0 0 0 1").unwrap());
        assert!(!r.verdict.admissible);
        assert_eq!(r.status.exit_code(), 1);
        assert!(r.verdict.failing.unwrap().contains("Δ123 = 0"));
    }

    #[test]
    fn catalog_theta1_report() {
        let r = run_catalog(&Matrix::Theta(fixtures::theta1()));
        let c = r.catalog.as_ref().unwrap();
        assert_eq!(c.type1_spheres.len(), 2);
        assert!(c.bound_violations.is_empty() && c.j_symmetry_violations.is_empty());
        let json = to_json(&r);
        assert!(json.starts_with("{\n  \"schema\": \"qkquot-report/1\""));
        assert_eq!(json, to_json(&run_catalog(&Matrix::Theta(fixtures::theta1()))));
        assert!(render_text(&r).contains("type-one spheres: 2"));
    }

    #[test]
    fn floats_carry_17_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn verify_passes() {
        let r = run_verify(7);
        assert_eq!(r.status, Status::Ok, "{}", render_verify_text(&r));
    }
}
