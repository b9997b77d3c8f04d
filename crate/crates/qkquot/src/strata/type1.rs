//! Type-one strata: every torus pair satisfies `u' = ±u i` or `u' = ±i u`.
//!
//! On `u' = s u i` the pair twist is `2s|u|² i`, so the torus equations
//! become linear in the pair masses `m_α = |u_{2α−1}|²`:
//!
//! ```text
//! Σ_α s_α c_α m_α = 0,    Σ_α m_α = 1/2
//! ```
//!
//! with `c_α` the columns of the weight matrix. The Sp(1) equations then ask
//! the unit vectors `u i ū` to balance with weights `m_α`, which is possible
//! exactly when no mass exceeds the sum of the others.
//!
//! For the mixed families `u' = s i u` the same matrix acts on `ū i u`, whose
//! vanishing forces `u = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{solve3, solve4, Rational};
use crate::quatmoment::{HVector, Quaternion, Weights};
use crate::weights::{
    is_locally_free_omega, is_locally_free_theta, minors_omega, minors_theta, MinorSetOmega, MinorSetTheta,
    OmegaMatrix, Sign, SignTriple, ThetaMatrix,
};

use super::{witness_residual, ExactData, QuotientKind, StrataError, StratumDecision, StratumLabel, WITNESS_TOL};

fn rat(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Per-pair signs `s_α = a·t_α` of the pattern `(a, a)` with `t = (+, t₂, t₃, t₄)`.
pub fn pattern_signs(a: Sign, t: SignTriple) -> [i64; 4] {
    let tv = t.values();
    [a.value(), a.value() * tv[0], a.value() * tv[1], a.value() * tv[2]]
}

/// Exact pair masses of the type-one system for the signs `s`.
pub fn solve_type1_system(t: &ThetaMatrix, s: [i64; 4]) -> Result<[Rational; 4], StrataError> {
    let rows = t.rows();
    let a: [[Rational; 4]; 4] = std::array::from_fn(|r| {
        std::array::from_fn(|c| if r < 3 { rat(&rows[r][c]) * Rational::from_integer(s[c].into()) } else { Rational::one() })
    });
    let b = [Rational::zero(), Rational::zero(), Rational::zero(), half()];
    solve4(&a, &b).map_err(|_| StrataError::SingularSystem)
}

/// Signed cofactors `n_α` whose normalization gives the masses.
pub fn type1_numerators(m: &MinorSetTheta, s: [i64; 4]) -> [BigInt; 4] {
    let [d123, d124, d134, d234] = m.as_array();
    let [s1, s2, s3, s4] = s.map(BigInt::from);
    [
        -(&s2 * &s3 * &s4 * d234),
        &s1 * &s3 * &s4 * d134,
        -(&s1 * &s2 * &s4 * d124),
        &s1 * &s2 * &s3 * d123,
    ]
}

/// `2|u_{2α−1}|² = n_α / D` with `D = Σ n_α`, a box determinant up to sign.
pub fn type1_closed_form(m: &MinorSetTheta, s: [i64; 4]) -> Result<[Rational; 4], StrataError> {
    let n = type1_numerators(m, s);
    let d: BigInt = n.iter().sum();
    if d.is_zero() {
        return Err(StrataError::SingularSystem);
    }
    let two_d = Rational::from_integer(d * 2);
    Ok(n.map(|v| rat(&v) / &two_d))
}

/// Positive masses that also close up as a polygon.
fn masses_feasible(masses: &[Rational]) -> Result<(), String> {
    if let Some(k) = masses.iter().position(|m| !m.is_positive()) {
        return Err(format!("pair {} has mass {} <= 0", k + 1, masses[k]));
    }
    let total: Rational = masses.iter().sum();
    let max = masses.iter().max().expect("nonempty");
    if max * Rational::from_integer(2.into()) > total {
        return Err(format!("mass {max} exceeds the sum of the others"));
    }
    Ok(())
}

/// Unit directions in a plane with `Σ m_α e_α = 0`; needs the polygon inequality.
pub(crate) fn polygon_directions(m: &[f64]) -> Vec<[f64; 2]> {
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&x, &y| m[y].total_cmp(&m[x]));
    let (a, b) = (m[order[0]], m[order[1]]);
    let rest: f64 = order[2..].iter().map(|&k| m[k]).sum();
    let cos = ((rest * rest - a * a - b * b) / (2.0 * a * b)).clamp(-1.0, 1.0);
    let sin = (1.0 - cos * cos).sqrt();
    let ea = [1.0, 0.0];
    let eb = [cos, sin];
    let v = [a * ea[0] + b * eb[0], a * ea[1] + b * eb[1]];
    let len = v[0].hypot(v[1]);
    let er = if len > 0.0 { [-v[0] / len, -v[1] / len] } else { [0.0, 1.0] };
    let mut out = vec![[0.0; 2]; m.len()];
    out[order[0]] = ea;
    out[order[1]] = eb;
    for &k in &order[2..] {
        out[k] = er;
    }
    out
}

/// Unit quaternion `q` with `q i q̄ = v` for a unit imaginary `v`.
fn rotate_i_to(v: Quaternion) -> Quaternion {
    let q = Quaternion::ONE - v * Quaternion::I;
    let n = q.norm();
    if n < 1e-12 {
        Quaternion::J
    } else {
        q.scale(1.0 / n)
    }
}

/// Witness `u_{2α} = s_α u_{2α−1} i` with the given masses.
fn type1_witness(weights: Weights, masses: &[f64], s: &[i64]) -> HVector {
    let mut u = vec![Quaternion::ZERO; weights.dim()];
    let dirs = polygon_directions(masses);
    for (((p, q), &m), (d, &sa)) in weights.pairs().into_iter().zip(masses).zip(dirs.iter().zip(s)) {
        let v = Quaternion::new(0.0, d[0], d[1], 0.0);
        u[p] = rotate_i_to(v).scale(m.sqrt());
        u[q] = (u[p] * Quaternion::I).scale(sa as f64);
    }
    HVector::new(u).expect("pair layout matches the weights")
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("finite")
}

fn decide(
    label: StratumLabel,
    weights: Weights,
    masses: Vec<Rational>,
    s: &[i64],
    invariant: BigInt,
    dim: u32,
) -> StratumDecision {
    let mut d = StratumDecision {
        label,
        intersects: false,
        exact_data: None,
        isotropy_invariant: invariant,
        quotient_kind: QuotientKind::Sphere,
        dim,
        boundary: false,
        reason: None,
        witness_residual: None,
    };
    match masses_feasible(&masses) {
        Err(why) => d.reason = Some(why),
        Ok(()) => {
            let mf: Vec<f64> = masses.iter().map(to_f64).collect();
            let u = type1_witness(weights, &mf, s);
            let res = witness_residual(weights, &u);
            let total: Rational = masses.iter().sum();
            d.boundary = masses.iter().any(|m| m * Rational::from_integer(2.into()) == total);
            d.intersects = true;
            d.exact_data = Some(ExactData::PairNorms(masses));
            d.witness_residual = Some(res);
        }
    }
    d
}

/// Emptiness proof for a mixed family: the only solution of the linear
/// system on `ū i u` is zero, so `|z|² = |w|²` and `zw = 0` on every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCertificate {
    pub label: StratumLabel,
    /// Determinant of the system; a box determinant up to sign.
    pub det: BigInt,
    /// Forced values of `|z|² − |w|²`.
    pub gamma: [Rational; 4],
    /// Forced real and imaginary parts of `zw`.
    pub re_zw: [Rational; 4],
    pub im_zw: [Rational; 4],
}

impl MixedCertificate {
    /// The certificate closes: the system is regular and forces everything to zero.
    pub fn is_valid(&self) -> bool {
        !self.det.is_zero()
            && self.gamma.iter().chain(&self.re_zw).chain(&self.im_zw).all(Zero::is_zero)
    }
}

/// Certificate for the family `(a, −a)` at `t`.
pub fn mixed_certificate(t: &ThetaMatrix, a: Sign, tri: SignTriple) -> Result<MixedCertificate, StrataError> {
    let s = pattern_signs(a, tri);
    let rows = t.rows();
    let m: [[Rational; 4]; 4] = std::array::from_fn(|r| {
        std::array::from_fn(|c| if r < 3 { rat(&rows[r][c]) * Rational::from_integer(s[c].into()) } else { Rational::one() })
    });
    let det = crate::exact::det4(&m);
    let zero: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    // one system per imaginary component of ū i u
    let solve = |b: &[Rational; 4]| solve4(&m, b).map_err(|_| StrataError::SingularSystem);
    let gamma = solve(&zero)?;
    let re_zw = solve(&zero)?;
    let im_zw = solve(&zero)?;
    Ok(MixedCertificate {
        label: StratumLabel::TypeOne { family: (a, a.flip()), t: tri },
        det: det.to_integer(),
        gamma,
        re_zw,
        im_zw,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Type1Catalog {
    /// All 16 patterns of the families `(+,+)` and `(−,−)`.
    pub decisions: Vec<StratumDecision>,
    /// The 16 patterns of `(+,−)` and `(−,+)`.
    pub certificates: Vec<MixedCertificate>,
}

impl Type1Catalog {
    pub fn realized(&self) -> impl Iterator<Item = &StratumDecision> {
        self.decisions.iter().filter(|d| d.intersects)
    }
}

/// Decide all type-one patterns of `t`.
///
/// Each of the families `(+,+)` and `(−,−)` must have exactly one pattern
/// with positive masses; anything else is reported as a violation.
pub fn type1_catalog(t: &ThetaMatrix) -> Result<Type1Catalog, StrataError> {
    if !is_locally_free_theta(t).locally_free {
        return Err(StrataError::NotLocallyFree);
    }
    let minors = minors_theta(t);
    let weights = Weights::Theta(t);
    let mut decisions = Vec::new();
    for a in [Sign::Plus, Sign::Minus] {
        let mut positive = 0;
        for tri in SignTriple::all() {
            let s = pattern_signs(a, tri);
            let masses = solve_type1_system(t, s)?;
            if masses != type1_closed_form(&minors, s)? {
                return Err(StrataError::ClassificationViolation(format!(
                    "closed form disagrees with the linear solve at {tri}"
                )));
            }
            if masses.iter().all(Signed::is_positive) {
                positive += 1;
            }
            let d: BigInt = type1_numerators(&minors, s).iter().sum();
            let label = StratumLabel::TypeOne { family: (a, a), t: tri };
            decisions.push(decide(label, weights, masses.to_vec(), &s, d, 18));
        }
        if positive != 1 {
            return Err(StrataError::ClassificationViolation(format!(
                "family ({a},{a}) has {positive} patterns with positive masses"
            )));
        }
    }
    let mut certificates = Vec::new();
    for a in [Sign::Plus, Sign::Minus] {
        for tri in SignTriple::all() {
            let c = mixed_certificate(t, a, tri)?;
            if !c.is_valid() {
                return Err(StrataError::ClassificationViolation(format!("mixed pattern {} is not excluded", c.label)));
            }
            certificates.push(c);
        }
    }
    Ok(Type1Catalog { decisions, certificates })
}

/// Ω analog on the three torus pairs, with `u₁ = 0`.
pub fn solve_omega_type1_system(o: &OmegaMatrix, s: [i64; 3]) -> Result<[Rational; 3], StrataError> {
    let rows = o.rows();
    let a: [[Rational; 3]; 3] = std::array::from_fn(|r| {
        std::array::from_fn(|c| if r < 2 { rat(&rows[r][c]) * Rational::from_integer(s[c].into()) } else { Rational::one() })
    });
    let b = [Rational::zero(), Rational::zero(), half()];
    solve3(&a, &b).map_err(|_| StrataError::SingularSystem)
}

pub fn omega_type1_numerators(m: &MinorSetOmega, s: [i64; 3]) -> [BigInt; 3] {
    let [d12, d13, d23] = m.as_array();
    let [s1, s2, s3] = s.map(BigInt::from);
    [&s2 * &s3 * d23, -(&s1 * &s3 * d13), &s1 * &s2 * d12]
}

pub fn omega_type1_closed_form(m: &MinorSetOmega, s: [i64; 3]) -> Result<[Rational; 3], StrataError> {
    let n = omega_type1_numerators(m, s);
    let d: BigInt = n.iter().sum();
    if d.is_zero() {
        return Err(StrataError::SingularSystem);
    }
    let two_d = Rational::from_integer(d * 2);
    Ok(n.map(|v| rat(&v) / &two_d))
}

/// All eight patterns `S_{(±,±,±)}`.
pub fn omega_type1_decisions(o: &OmegaMatrix) -> Result<Vec<StratumDecision>, StrataError> {
    if !is_locally_free_omega(o) {
        return Err(StrataError::NotLocallyFree);
    }
    let minors = minors_omega(o);
    let weights = Weights::Omega(o);
    let mut out = Vec::new();
    for signs in SignTriple::all() {
        let s = signs.values();
        let label = StratumLabel::OmegaTypeOne { signs: signs.0 };
        let d: BigInt = omega_type1_numerators(&minors, s).iter().sum();
        let Ok(masses) = solve_omega_type1_system(o, s) else {
            // With some minor nonzero the first two rows have rank 2 and
            // their null vector sums to D = 0, so the row of ones lies in
            // their span and the system has no solution at all.
            out.push(StratumDecision {
                label,
                intersects: false,
                exact_data: None,
                isotropy_invariant: d,
                quotient_kind: QuotientKind::Sphere,
                dim: 14,
                boundary: false,
                reason: Some("the linear system is inconsistent (D = 0)".into()),
                witness_residual: None,
            });
            continue;
        };
        if masses != omega_type1_closed_form(&minors, s)? {
            return Err(StrataError::ClassificationViolation(format!(
                "closed form disagrees with the linear solve at {signs}"
            )));
        }
        // three pairs, each with two free complex coordinates
        let d = decide(label, weights, masses.to_vec(), &s, d, 14);
        if d.intersects && d.witness_residual.is_some_and(|r| r > WITNESS_TOL) {
            return Err(StrataError::ClassificationViolation(format!("witness for {} misses the zero set", d.label)));
        }
        out.push(d);
    }
    Ok(out)
}
