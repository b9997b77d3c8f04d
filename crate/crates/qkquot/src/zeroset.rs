//! Numerical points of the zero set `μ⁻¹(0) ∩ ν⁻¹(0)` on the unit sphere.
//!
//! The search runs in the coordinates of a linear subspace of ℍⁿ (all of it,
//! or a stratum cut out by zero and tie relations on the complex coordinates
//! `z_α, w_α`). Steps are damped Gauss–Newton with the Jacobian projected to
//! the sphere's tangent space, followed by renormalization.
//!
//! A search that stalls is evidence, never proof: emptiness of a stratum is
//! decided exactly in [`crate::strata`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::quatmoment::{
    moment, mu_bilinear, nu_bilinear, real_matrix_rank, HVector, Quaternion, Weights,
};
use crate::weights::{OmegaMatrix, ThetaMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Z,
    W,
}

/// Complex coordinate `z_α` or `w_α`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub part: Part,
    pub index: usize,
}

impl Coord {
    pub fn z(index: usize) -> Self {
        Coord { part: Part::Z, index }
    }

    pub fn w(index: usize) -> Self {
        Coord { part: Part::W, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rule {
    Free,
    Zero,
    /// `self = factor · to`, where `to` is free.
    Tied { to: Coord, factor: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RestrictionError {
    #[error("coordinate {0:?} is out of range")]
    OutOfRange(Coord),
    #[error("coordinate {0:?} is tied to a coordinate that is not free")]
    ChainedTie(Coord),
    #[error("the restriction leaves no free coordinate")]
    Empty,
}

/// A complex-linear subspace of ℂⁿ × ℂⁿ given coordinate by coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    n: usize,
    rules: Vec<Rule>,
}

impl Restriction {
    pub fn full(n: usize) -> Self {
        Restriction { n, rules: vec![Rule::Free; 2 * n] }
    }

    fn slot(&self, c: Coord) -> Result<usize, RestrictionError> {
        if c.index == 0 || c.index > self.n {
            return Err(RestrictionError::OutOfRange(c));
        }
        Ok(match c.part {
            Part::Z => c.index - 1,
            Part::W => self.n + c.index - 1,
        })
    }

    fn set(mut self, c: Coord, rule: Rule) -> Self {
        let slot = self.slot(c).expect("coordinate out of range");
        self.rules[slot] = rule;
        self
    }

    pub fn zero(self, c: Coord) -> Self {
        self.set(c, Rule::Zero)
    }

    pub fn tie(self, c: Coord, to: Coord, factor: Complex64) -> Self {
        self.set(c, Rule::Tied { to, factor })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Real orthonormal basis (columns in `ℝ^{4n}`) of the subspace.
    pub fn basis(&self) -> Result<DMatrix<f64>, RestrictionError> {
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for (slot, rule) in self.rules.iter().enumerate() {
            if *rule != Rule::Free {
                continue;
            }
            let here = self.coord(slot);
            for unit in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                let mut z = vec![Complex64::new(0.0, 0.0); self.n];
                let mut w = z.clone();
                let mut put = |c: Coord, v: Complex64| match c.part {
                    Part::Z => z[c.index - 1] += v,
                    Part::W => w[c.index - 1] += v,
                };
                put(here, unit);
                for (other, r) in self.rules.iter().enumerate() {
                    if let Rule::Tied { to, factor } = r {
                        if *to == here {
                            put(self.coord(other), factor * unit);
                        }
                    }
                }
                let u = HVector::from_split(&z, &w).expect("dimension checked at construction");
                cols.push(DVector::from_vec(u.to_reals()));
            }
        }
        for (slot, rule) in self.rules.iter().enumerate() {
            if let Rule::Tied { to, .. } = rule {
                let target = self.slot(*to)?;
                if self.rules[target] != Rule::Free {
                    return Err(RestrictionError::ChainedTie(self.coord(slot)));
                }
            }
        }
        if cols.is_empty() {
            return Err(RestrictionError::Empty);
        }
        let m = DMatrix::from_columns(&cols);
        Ok(m.qr().q())
    }

    fn coord(&self, slot: usize) -> Coord {
        if slot < self.n {
            Coord::z(slot + 1)
        } else {
            Coord::w(slot - self.n + 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-10, max_iter: 500 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub point: HVector,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub rank: usize,
    pub min_pair_norm: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("not converged: residual {:.3e} after {} iterations", .0.residual, .0.iterations)]
    NotConverged(Box<SolveReport>),
    #[error(transparent)]
    Restriction(#[from] RestrictionError),
}

impl SolveError {
    /// The best point found, when the search ran at all.
    pub fn report(&self) -> Option<&SolveReport> {
        match self {
            SolveError::NotConverged(r) => Some(r),
            SolveError::Restriction(_) => None,
        }
    }
}

/// Report of either outcome, for callers that only want statistics.
pub fn report_of(r: &Result<SolveReport, SolveError>) -> Option<&SolveReport> {
    match r {
        Ok(rep) => Some(rep),
        Err(e) => e.report(),
    }
}

pub fn find_point(t: &ThetaMatrix, seed: u64, cfg: SolverConfig) -> Result<SolveReport, SolveError> {
    solve(Weights::Theta(t), &Restriction::full(8), seed, cfg)
}

pub fn find_point_omega(o: &OmegaMatrix, seed: u64, cfg: SolverConfig) -> Result<SolveReport, SolveError> {
    solve(Weights::Omega(o), &Restriction::full(7), seed, cfg)
}

pub fn find_point_restricted(
    t: &ThetaMatrix,
    restriction: &Restriction,
    seed: u64,
    cfg: SolverConfig,
) -> Result<SolveReport, SolveError> {
    solve(Weights::Theta(t), restriction, seed, cfg)
}

pub fn find_point_restricted_omega(
    o: &OmegaMatrix,
    restriction: &Restriction,
    seed: u64,
    cfg: SolverConfig,
) -> Result<SolveReport, SolveError> {
    solve(Weights::Omega(o), restriction, seed, cfg)
}

/// Smallest final residual over `seeds`.
pub fn best_residual(
    weights: Weights,
    restriction: &Restriction,
    seeds: impl IntoIterator<Item = u64>,
    cfg: SolverConfig,
) -> Result<f64, RestrictionError> {
    let mut best = f64::INFINITY;
    for seed in seeds {
        match solve(weights, restriction, seed, cfg) {
            Ok(r) => best = best.min(r.residual),
            Err(SolveError::NotConverged(r)) => best = best.min(r.residual),
            Err(SolveError::Restriction(e)) => return Err(e),
        }
    }
    Ok(best)
}

/// Uniform random point of the unit sphere in `ℝ^m`.
pub fn seeded_sphere_point(m: usize, seed: u64) -> DVector<f64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    loop {
        let v = DVector::<f64>::from_fn(m, |_, _| StandardNormal.sample(&mut rng));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

fn residual_vector(weights: Weights, u: &HVector) -> DVector<f64> {
    let m = moment(weights, u).expect("restriction dimension matches weights");
    DVector::from_vec(m.flatten())
}

fn jacobian(weights: Weights, u: &HVector, dirs: &[Vec<Quaternion>]) -> DMatrix<f64> {
    let rows = 9 + 3 * weights.rows().len();
    let mut jac = DMatrix::zeros(rows, dirs.len());
    for (c, h) in dirs.iter().enumerate() {
        let a = mu_bilinear(h, u.entries());
        let b = mu_bilinear(u.entries(), h);
        let na = nu_bilinear(weights, h, u.entries());
        let nb = nu_bilinear(weights, u.entries(), h);
        let col = a
            .iter()
            .zip(&b)
            .chain(na.iter().zip(&nb))
            .flat_map(|(x, y)| (*x + *y).imag());
        for (r, v) in col.enumerate() {
            jac[(r, c)] = v;
        }
    }
    jac
}

fn solve(weights: Weights, restriction: &Restriction, seed: u64, cfg: SolverConfig) -> Result<SolveReport, SolveError> {
    if restriction.dim() != weights.dim() {
        return Err(RestrictionError::OutOfRange(Coord::z(restriction.dim())).into());
    }
    let basis = restriction.basis()?;
    let m = basis.ncols();
    let dirs: Vec<Vec<Quaternion>> = (0..m)
        .map(|c| {
            let col: Vec<f64> = basis.column(c).iter().copied().collect();
            HVector::from_reals(&col).expect("basis columns have the ambient dimension").entries().to_vec()
        })
        .collect();
    let to_point = |y: &DVector<f64>| {
        let x = &basis * y;
        HVector::from_reals(x.as_slice()).expect("ambient dimension")
    };

    let mut y = seeded_sphere_point(m, seed);
    let mut u = to_point(&y);
    let mut r = residual_vector(weights, &u);
    let mut res = r.norm();
    let mut lambda = 1e-3;
    let mut iterations = 0;

    while res >= cfg.tol && iterations < cfg.max_iter && lambda < 1e16 {
        iterations += 1;
        let jac = jacobian(weights, &u, &dirs);
        let proj = DMatrix::identity(m, m) - &y * y.transpose();
        let jt = &jac * proj;
        let jtj = jt.transpose() * &jt;
        let grad = jt.transpose() * &r;
        loop {
            let mut lhs = jtj.clone();
            for d in 0..m {
                lhs[(d, d)] += lambda;
            }
            let step = lhs.cholesky().map(|c| c.solve(&(-&grad)));
            let Some(step) = step else {
                lambda *= 10.0;
                if lambda >= 1e16 {
                    break;
                }
                continue;
            };
            let cand = &y + step;
            let cand = &cand / cand.norm();
            let cu = to_point(&cand);
            let cr = residual_vector(weights, &cu);
            let cres = cr.norm();
            if cres < res {
                y = cand;
                u = cu;
                r = cr;
                res = cres;
                lambda = (lambda / 10.0).max(1e-15);
                break;
            }
            lambda *= 10.0;
            if lambda >= 1e16 {
                break;
            }
        }
    }

    let rank = real_matrix_rank(&u);
    let report = SolveReport {
        converged: res < cfg.tol,
        residual: res,
        iterations,
        rank: rank.rank,
        min_pair_norm: rank.min_pair_norm,
        point: u,
        seed,
    };
    if report.converged {
        Ok(report)
    } else {
        Err(SolveError::NotConverged(Box::new(report)))
    }
}
