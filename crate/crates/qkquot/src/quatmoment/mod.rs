//! Quaternionic vectors, the Sp(1) and torus moment maps, and the group action.
//!
//! A point `u ∈ ℍⁿ` has entries `u_α = z_α + j w_α`. In the Θ case (`n = 8`)
//! the torus rotates the pairs `(u₁,u₂), (u₃,u₄), (u₅,u₆), (u₇,u₈)`. In the Ω
//! case (`n = 7`) `u₁` is fixed and the pairs are `(u₂,u₃), (u₄,u₅), (u₆,u₇)`.
//!
//! ```text
//! μ(u)  = ( Σ ū_α i u_α , Σ ū_α j u_α , Σ ū_α k u_α )
//! ν_r(u) = Σ_β W_{rβ} (ū_a u_b − ū_b u_a)      for the β-th pair (a, b)
//! ```
//!
//! where `W` is the weight matrix. Every component is purely imaginary, so a
//! moment value is stored as its `i, j, k` coefficients.

mod quaternion;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::weights::{OmegaMatrix, ThetaMatrix};

pub use quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("dimension mismatch: expected {expected} quaternions, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0}: only 7 and 8 occur")]
    UnsupportedDimension(usize),
}

/// A point of ℍ⁷ or ℍ⁸.
#[derive(Debug, Clone, PartialEq)]
pub struct HVector {
    entries: Vec<Quaternion>,
}

impl HVector {
    pub fn new(entries: Vec<Quaternion>) -> Result<Self, QuatError> {
        match entries.len() {
            7 | 8 => Ok(HVector { entries }),
            n => Err(QuatError::UnsupportedDimension(n)),
        }
    }

    pub fn zeros(n: usize) -> Result<Self, QuatError> {
        HVector::new(vec![Quaternion::ZERO; n])
    }

    pub fn from_split(z: &[Complex64], w: &[Complex64]) -> Result<Self, QuatError> {
        if z.len() != w.len() {
            return Err(QuatError::DimensionMismatch { expected: z.len(), got: w.len() });
        }
        HVector::new(z.iter().zip(w).map(|(&z, &w)| Quaternion::from_split(z, w)).collect())
    }

    /// Real coordinates `(r, i, j, k)` of each entry, concatenated.
    pub fn from_reals(x: &[f64]) -> Result<Self, QuatError> {
        HVector::new(x.chunks(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3])).collect())
    }

    pub fn to_reals(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|q| q.to_array()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    /// Entry `α`, 1-based.
    pub fn get(&self, alpha: usize) -> Quaternion {
        self.entries[alpha - 1]
    }

    pub fn z(&self) -> Vec<Complex64> {
        self.entries.iter().map(|q| q.split().0).collect()
    }

    pub fn w(&self) -> Vec<Complex64> {
        self.entries.iter().map(|q| q.split().1).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> HVector {
        HVector { entries: self.entries.iter().copied().map(f).collect() }
    }
}

/// The weight data as the numerical modules see it.
#[derive(Debug, Clone, Copy)]
pub enum Weights<'a> {
    Theta(&'a ThetaMatrix),
    Omega(&'a OmegaMatrix),
}

impl Weights<'_> {
    pub fn dim(self) -> usize {
        match self {
            Weights::Theta(_) => 8,
            Weights::Omega(_) => 7,
        }
    }

    /// 0-based index pairs rotated by the torus.
    pub fn pairs(self) -> Vec<(usize, usize)> {
        match self {
            Weights::Theta(_) => (0..4).map(|a| (2 * a, 2 * a + 1)).collect(),
            Weights::Omega(_) => (0..3).map(|a| (2 * a + 1, 2 * a + 2)).collect(),
        }
    }

    /// Rows of the weight matrix in floating point.
    pub fn rows(self) -> Vec<Vec<f64>> {
        match self {
            Weights::Theta(t) => t.to_f64().iter().map(|r| r.to_vec()).collect(),
            Weights::Omega(o) => o.to_f64().iter().map(|r| r.to_vec()).collect(),
        }
    }
}

/// Imaginary coefficients of the two moment maps.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentValue {
    pub sp1_part: [[f64; 3]; 3],
    pub torus_part: Vec<[f64; 3]>,
}

impl MomentValue {
    pub fn flatten(&self) -> Vec<f64> {
        self.sp1_part
            .iter()
            .chain(self.torus_part.iter())
            .flat_map(|c| c.iter().copied())
            .collect()
    }

    pub fn norm(&self) -> f64 {
        self.flatten().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sp1_norm(&self) -> f64 {
        self.sp1_part.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn torus_norm(&self) -> f64 {
        self.torus_part.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }
}

const UNITS: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

/// Polarized Sp(1) map `Σ ā_α σ b_α`; `mu(u)` is the diagonal `a = b = u`.
pub fn mu_bilinear(a: &[Quaternion], b: &[Quaternion]) -> [Quaternion; 3] {
    UNITS.map(|s| a.iter().zip(b).fold(Quaternion::ZERO, |acc, (&x, &y)| acc + x.conj() * s * y))
}

pub fn mu(u: &HVector) -> [[f64; 3]; 3] {
    mu_bilinear(&u.entries, &u.entries).map(Quaternion::imag)
}

/// Polarized pair twist `ā_p b_q − ā_q b_p` for each torus pair.
pub fn pair_twists_bilinear(weights: Weights, a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    weights
        .pairs()
        .into_iter()
        .map(|(p, q)| a[p].conj() * b[q] - a[q].conj() * b[p])
        .collect()
}

fn weighted(weights: Weights, twists: &[Quaternion]) -> Vec<Quaternion> {
    weights
        .rows()
        .iter()
        .map(|row| row.iter().zip(twists).fold(Quaternion::ZERO, |acc, (&c, &x)| acc + x.scale(c)))
        .collect()
}

pub fn nu_bilinear(weights: Weights, a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    weighted(weights, &pair_twists_bilinear(weights, a, b))
}

fn check_dim(weights: Weights, u: &HVector) -> Result<(), QuatError> {
    if u.len() == weights.dim() {
        Ok(())
    } else {
        Err(QuatError::DimensionMismatch { expected: weights.dim(), got: u.len() })
    }
}

pub fn nu(weights: Weights, u: &HVector) -> Result<Vec<[f64; 3]>, QuatError> {
    check_dim(weights, u)?;
    Ok(nu_bilinear(weights, &u.entries, &u.entries).into_iter().map(Quaternion::imag).collect())
}

pub fn nu_theta(t: &ThetaMatrix, u: &HVector) -> Result<[[f64; 3]; 3], QuatError> {
    let v = nu(Weights::Theta(t), u)?;
    Ok([v[0], v[1], v[2]])
}

pub fn nu_omega(o: &OmegaMatrix, u: &HVector) -> Result<[[f64; 3]; 2], QuatError> {
    let v = nu(Weights::Omega(o), u)?;
    Ok([v[0], v[1]])
}

pub fn moment(weights: Weights, u: &HVector) -> Result<MomentValue, QuatError> {
    Ok(MomentValue { sp1_part: mu(u), torus_part: nu(weights, u)? })
}

/// An element of torus × Sp(1) × U(1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub t: f64,
    pub s: f64,
    /// Third torus angle; ignored in the Ω case.
    pub r: f64,
    pub lambda: Quaternion,
    pub rho: Complex64,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { t: 0.0, s: 0.0, r: 0.0, lambda: Quaternion::ONE, rho: Complex64::new(1.0, 0.0) }
    }

    /// Torus angle `θ_β = p_β t + q_β s (+ l_β r)` for each pair.
    pub fn angles(&self, weights: Weights) -> Vec<f64> {
        let rows = weights.rows();
        let params = [self.t, self.s, self.r];
        (0..rows[0].len())
            .map(|b| rows.iter().zip(params).map(|(row, x)| row[b] * x).sum())
            .collect()
    }
}

/// Rotate each pair by `A(θ)`, then multiply by `λ` on the left and `ρ` on the right.
pub fn apply_action(g: &GroupElement, weights: Weights, u: &HVector) -> Result<HVector, QuatError> {
    check_dim(weights, u)?;
    let mut out = u.entries.clone();
    for ((p, q), theta) in weights.pairs().into_iter().zip(g.angles(weights)) {
        let (c, s) = (theta.cos(), theta.sin());
        let (a, b) = (u.entries[p], u.entries[q]);
        out[p] = a.scale(c) + b.scale(s);
        out[q] = b.scale(c) - a.scale(s);
    }
    let rho = Quaternion::from_complex(g.rho);
    Ok(HVector { entries: out.into_iter().map(|x| g.lambda * x * rho).collect() })
}

/// `(z, w) ↦ (−w, z)`, which is left multiplication by `j`.
pub fn j_involution(u: &HVector) -> HVector {
    u.map(|q| {
        let (z, w) = q.split();
        Quaternion::from_split(-w, z)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    /// Column `α` holds the `(1, i, j, k)` coefficients of `u_α`.
    pub matrix: DMatrix<f64>,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub min_pair_norm: f64,
}

/// Relative singular-value cutoff used for the rank.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Rank of `u` viewed as a real `4 × n` matrix.
///
/// For the pair norms the Ω case uses its three torus pairs.
pub fn real_matrix_rank(u: &HVector) -> RankReport {
    let n = u.len();
    let matrix = DMatrix::from_fn(4, n, |r, c| u.entries[c].to_array()[r]);
    let mut singular_values: Vec<f64> = matrix.clone().svd(false, false).singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let top = singular_values.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&s| s > RANK_THRESHOLD * top).count()
    };
    let first = if n == 7 { 1 } else { 0 };
    let min_pair_norm = (first..n)
        .step_by(2)
        .map(|p| (u.entries[p].norm_sqr() + u.entries[p + 1].norm_sqr()).sqrt())
        .fold(f64::INFINITY, f64::min);
    RankReport { matrix, rank, singular_values, min_pair_norm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::fixtures::{omega_unit, theta1, theta2};
    use crate::weights::ThetaMatrix;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    type Q = Quaternion;

    fn hv(entries: &[[f64; 4]]) -> HVector {
        HVector::new(entries.iter().map(|&a| Q::from_array(a)).collect()).unwrap()
    }

    fn unit8() -> HVector {
        let mut e = vec![[0.0; 4]; 8];
        e[0][0] = 1.0;
        hv(&e)
    }

    #[test]
    fn mu_of_first_basis_vector() {
        let m = mu(&unit8());
        assert_eq!(m, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let r = MomentValue { sp1_part: m, torus_part: vec![] };
        assert!((r.norm() * r.norm() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn mu_of_real_vector() {
        let reals = [0.5, -1.0, 2.0, 0.0, 0.25, 1.5, -0.75, 1.0];
        let u = hv(&reals.map(|x| [x, 0.0, 0.0, 0.0]));
        let s: f64 = reals.iter().map(|x| x * x).sum();
        let m = mu(&u);
        for (a, row) in m.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                let expected = if a == b { s } else { 0.0 };
                assert!((v - expected).abs() < 1e-14);
            }
        }
        assert_eq!(nu_theta(&theta1(), &u).unwrap(), [[0.0; 3]; 3]);
    }

    #[test]
    fn nu_vanishes_when_only_weightless_pair_is_present() {
        let t = ThetaMatrix::from_i64([[1, 2, 3, 0], [4, 5, 6, 0], [7, 8, 9, 0]]);
        let mut e = vec![[0.0; 4]; 8];
        e[6] = [0.3, 0.1, -0.2, 0.5];
        e[7] = [-0.4, 0.7, 0.2, 0.1];
        assert_eq!(nu_theta(&t, &hv(&e)).unwrap(), [[0.0; 3]; 3]);
    }

    #[test]
    fn nu_omega_ignores_unpaired_slot() {
        let mut e = vec![[0.0; 4]; 7];
        e[0] = [0.3, 0.1, -0.2, 0.5];
        let u = hv(&e);
        assert_eq!(nu_omega(&omega_unit(), &u).unwrap(), [[0.0; 3]; 2]);
        let real = hv(&[[1.0, 0.0, 0.0, 0.0]; 7]);
        assert_eq!(nu_omega(&omega_unit(), &real).unwrap(), [[0.0; 3]; 2]);
    }

    #[test]
    fn dimension_is_checked() {
        let u = hv(&[[1.0, 0.0, 0.0, 0.0]; 7]);
        assert!(matches!(nu_theta(&theta1(), &u), Err(QuatError::DimensionMismatch { .. })));
        assert!(apply_action(&GroupElement::identity(), Weights::Theta(&theta1()), &u).is_err());
        assert!(HVector::new(vec![Q::ONE; 5]).is_err());
    }

    #[test]
    fn identity_action_is_trivial() {
        let u = hv(&[[0.1, 0.2, 0.3, 0.4]; 8]);
        let v = apply_action(&GroupElement::identity(), Weights::Theta(&theta2()), &u).unwrap();
        assert_eq!(u, v);
        let full_turn = GroupElement { t: TAU, s: 0.0, r: 0.0, ..GroupElement::identity() };
        let v = apply_action(&full_turn, Weights::Theta(&theta2()), &u).unwrap();
        for (a, b) in u.entries().iter().zip(v.entries()) {
            assert!((*a - *b).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_examples() {
        let mut e = vec![[0.0; 4]; 8];
        for (k, row) in e.iter_mut().take(4).enumerate() {
            row[k] = 1.0;
        }
        let r = real_matrix_rank(&hv(&e));
        assert_eq!(r.rank, 4);
        assert_eq!(r.min_pair_norm, 0.0);
        // every column a real multiple of one of three quaternions
        let a = [1.0, 2.0, 0.0, -1.0];
        let b = [0.0, 1.0, 1.0, 0.0];
        let c = [3.0, 0.0, 0.5, 0.0];
        let sc = |v: [f64; 4], s: f64| v.map(|x| x * s);
        let e = [a, sc(a, 2.0), b, sc(b, -1.0), c, sc(c, 0.5), [0.0; 4], [0.0; 4]];
        assert!(real_matrix_rank(&hv(&e)).rank <= 3);
    }

    #[test]
    fn j_involution_examples() {
        let u = hv(&[[0.1, -0.2, 0.3, 0.4], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 2.0, 1.0], [0.5; 4], [0.0; 4], [0.3; 4], [1.0, 2.0, 3.0, 4.0], [-1.0; 4]]);
        let jj = j_involution(&j_involution(&u));
        for (a, b) in u.entries().iter().zip(jj.entries()) {
            assert!((*a + *b).norm() < 1e-15);
        }
        let ju = j_involution(&u);
        for (a, b) in u.entries().iter().zip(ju.entries()) {
            assert!((Q::J * *a - *b).norm() < 1e-15);
        }
        // real input: z real, w = 0 maps to z = 0, w real
        let real = hv(&[[0.7, 0.0, 0.0, 0.0]; 8]);
        let jr = j_involution(&real);
        assert!(jr.z().iter().all(|z| z.norm() == 0.0));
        assert!(jr.w().iter().all(|w| (w - Complex64::new(0.7, 0.0)).norm() == 0.0));
    }

    fn hvec8() -> impl Strategy<Value = HVector> {
        prop::collection::vec(-1.0f64..1.0, 32).prop_map(|x| HVector::from_reals(&x).unwrap())
    }

    fn group_element() -> impl Strategy<Value = GroupElement> {
        (0.0..TAU, 0.0..TAU, 0.0..TAU, prop::array::uniform4(-1.0f64..1.0), 0.0..TAU).prop_filter_map(
            "nonzero lambda",
            |(t, s, r, l, phi)| {
                let lam = Q::from_array(l);
                (lam.norm() > 1e-3).then(|| GroupElement {
                    t,
                    s,
                    r,
                    lambda: lam.scale(1.0 / lam.norm()),
                    rho: Complex64::from_polar(1.0, phi),
                })
            },
        )
    }

    proptest! {
        #[test]
        fn split_round_trip(u in hvec8()) {
            let v = HVector::from_split(&u.z(), &u.w()).unwrap();
            for (a, b) in u.entries().iter().zip(v.entries()) {
                prop_assert!((*a - *b).norm() < 1e-15);
            }
        }

        #[test]
        fn action_preserves_moment_norms(u in hvec8(), g in group_element()) {
            let w = Weights::Theta(&theta2());
            let before = moment(w, &u).unwrap();
            let after = moment(w, &apply_action(&g, w, &u).unwrap()).unwrap();
            prop_assert!((before.sp1_norm() - after.sp1_norm()).abs() < 1e-10 * before.sp1_norm().max(1.0));
            prop_assert!((before.torus_norm() - after.torus_norm()).abs() < 1e-10 * before.torus_norm().max(1.0));
        }

        #[test]
        fn torus_part_unchanged_without_rho(u in hvec8(), g in group_element()) {
            let g = GroupElement { rho: Complex64::new(1.0, 0.0), ..g };
            let w = Weights::Theta(&theta1());
            let before = nu(w, &u).unwrap();
            let after = nu(w, &apply_action(&g, w, &u).unwrap()).unwrap();
            for (a, b) in before.iter().zip(&after) {
                for k in 0..3 {
                    prop_assert!((a[k] - b[k]).abs() < 1e-10);
                }
            }
        }

        #[test]
        fn nu_is_linear_in_weights(u in hvec8(), a in prop::array::uniform3(prop::array::uniform4(-5i64..5)), b in prop::array::uniform3(prop::array::uniform4(-5i64..5))) {
            let sum: [[i64; 4]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| a[r][c] + b[r][c]));
            let (ta, tb, ts) = (ThetaMatrix::from_i64(a), ThetaMatrix::from_i64(b), ThetaMatrix::from_i64(sum));
            let (na, nb, ns) = (nu_theta(&ta, &u).unwrap(), nu_theta(&tb, &u).unwrap(), nu_theta(&ts, &u).unwrap());
            for r in 0..3 {
                for k in 0..3 {
                    prop_assert!((na[r][k] + nb[r][k] - ns[r][k]).abs() < 1e-12 * (1.0 + ns[r][k].abs()) * 10.0);
                }
            }
        }

        #[test]
        fn j_preserves_mu_norm(u in hvec8()) {
            let a = MomentValue { sp1_part: mu(&u), torus_part: vec![] }.norm();
            let b = MomentValue { sp1_part: mu(&j_involution(&u)), torus_part: vec![] }.norm();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn degenerate_pairs_drop_rank(coeffs in prop::collection::vec(-2.0f64..2.0, 8), basis in prop::array::uniform3(prop::array::uniform4(-1.0f64..1.0)), null_pair in 0usize..4) {
            // columns drawn from a 3-dimensional span, one pair zeroed
            let cols: Vec<[f64; 4]> = (0..8)
                .map(|c| if c / 2 == null_pair { [0.0; 4] } else { basis[c % 3].map(|x| x * coeffs[c]) })
                .collect();
            prop_assert!(real_matrix_rank(&hv(&cols)).rank <= 3);
        }
    }
}
