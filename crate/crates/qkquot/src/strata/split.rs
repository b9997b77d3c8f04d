//! Split strata: `z` lives on one set of torus pairs and `w` on the rest.
//!
//! On such a point every pair twist is `2i·Im(x̄ x')` with `x` the nonzero
//! coordinate, so the torus equations say `y_α = Im(x̄_α x'_α) = c·n_α` for
//! the null vector `n` of the weight matrix and a free scale `c`. The Sp(1)
//! equations split by side: each side has mass `1/2` and `Σ (x² + x'²) = 0`.
//!
//! A pair with mass `M` and twist `y` can reach `|x² + x'²| = √(M² − 4y²)`
//! and nothing else, so `M ≥ 2|y|`. A twisted pair `x' = ±i x` sits at the
//! minimum. A side with two or more free pairs can always close its polygon;
//! a side with at most one must have every pair at the minimum. That pins
//! `|c|`, and what is left are linear inequalities in `|n_α|`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::{det3, gcd_list, Rational};
use crate::quatmoment::{HVector, Weights};
use crate::weights::{
    minors_omega, minors_theta, MinorSetOmega, MinorSetTheta, OmegaMatrix, Sign, ThetaMatrix,
};

use super::{
    witness_residual, Case, ExactData, QuotientKind, Side, StratumDecision, StratumLabel, Twist,
};

/// Null vector `(Δ₂₃₄, −Δ₁₃₄, Δ₁₂₄, −Δ₁₂₃)` of a Θ matrix.
pub fn null_vector_theta(m: &MinorSetTheta) -> Vec<BigInt> {
    let [d123, d124, d134, d234] = m.as_array();
    vec![d234, -d134, d124, -d123]
}

/// Null vector `(Δ₂₃, −Δ₁₃, Δ₁₂)` of an Ω matrix.
pub fn null_vector_omega(m: &MinorSetOmega) -> Vec<BigInt> {
    let [d12, d13, d23] = m.as_array();
    vec![d23, -d13, d12]
}

/// Exact solution of a split stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSolution {
    pub c: Rational,
    /// `y_α = c·n_α` for every pair, in pair order.
    pub imag: Vec<Rational>,
    pub boundary: bool,
}

fn twist_sign(twist: Option<&Twist>, side: Side, slot: usize) -> Option<Sign> {
    twist.filter(|t| t.side == side).map(|t| t.signs[slot])
}

/// Decide whether the split label `top | bottom` (with optional twist) meets the zero set.
///
/// `n` is the null vector, indexed by pair (1-based pairs map to `n[α−1]`).
pub fn decide_split(n: &[BigInt], top: &[usize], bottom: &[usize], twist: Option<&Twist>) -> Result<SplitSolution, String> {
    let mut sign: Option<i64> = None;
    for (side, idx) in [(Side::Top, top), (Side::Bottom, bottom)] {
        for (slot, &a) in idx.iter().enumerate() {
            let Some(s) = twist_sign(twist, side, slot) else { continue };
            let na = &n[a - 1];
            if na.is_zero() {
                return Err(format!("pair {a} is twisted but n_{a} = 0"));
            }
            let want = s.value() * if na.is_positive() { 1 } else { -1 };
            match sign {
                Some(prev) if prev != want => return Err("twist signs ask for opposite signs of c".into()),
                _ => sign = Some(want),
            }
        }
    }

    // (sum of 2|n_α|, number of free pairs) per side
    let sides: Vec<(BigInt, usize)> = [(Side::Top, top), (Side::Bottom, bottom)]
        .iter()
        .map(|&(side, idx)| {
            let a: BigInt = idx.iter().map(|&k| n[k - 1].abs() * 2).sum();
            let free = (0..idx.len()).filter(|&s| twist_sign(twist, side, s).is_none()).count();
            (a, free)
        })
        .collect();

    let half = Rational::new(1.into(), 2.into());
    let mut forced: Option<Rational> = None;
    for (a, free) in &sides {
        if *free > 1 {
            continue;
        }
        if a.is_zero() {
            return Err("a side with at most one free pair has nothing to balance".into());
        }
        let v = &half / Rational::from_integer(a.clone());
        match &forced {
            Some(f) if *f != v => return Err(format!("the two sides need |c| = {f} and |c| = {v}")),
            _ => forced = Some(v),
        }
    }
    let abs_c = match (forced, sign) {
        (Some(v), _) => v,
        // a one-parameter family; report an interior representative
        (None, Some(_)) => {
            let quarter = Rational::new(1.into(), 4.into());
            sides
                .iter()
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, _)| &quarter / Rational::from_integer(a.clone()))
                .min()
                .unwrap_or(quarter)
        }
        (None, None) => Rational::zero(),
    };
    let mut boundary = false;
    for (name, (a, free)) in ["top", "bottom"].iter().zip(&sides) {
        let need = &abs_c * Rational::from_integer(a.clone());
        if need > half {
            return Err(format!("{name} side needs mass {need} > 1/2"));
        }
        if *free > 1 && need == half {
            boundary = true;
        }
    }
    let c = abs_c * Rational::from_integer(sign.unwrap_or(1).into());
    let imag = n.iter().map(|v| &c * Rational::from_integer(v.clone())).collect();
    Ok(SplitSolution { c, imag, boundary })
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().expect("finite")
}

/// Common length `L` with `Σ √(L² + 4y²) = budget`, by bisection.
fn equal_length(ys: &[f64], budget: f64) -> f64 {
    let total = |l: f64| ys.iter().map(|y| (l * l + 4.0 * y * y).sqrt()).sum::<f64>();
    let (mut lo, mut hi) = (0.0, budget.max(0.0));
    if total(lo) >= budget {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) < budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Floating point point of the split stratum realizing `sol`.
fn split_witness(weights: Weights, sol: &SplitSolution, top: &[usize], bottom: &[usize], twist: Option<&Twist>) -> HVector {
    let dim = weights.dim();
    let pairs = weights.pairs();
    let mut z = vec![Complex64::new(0.0, 0.0); dim];
    let mut w = z.clone();
    let y: Vec<f64> = sol.imag.iter().map(f64_of).collect();
    for (side, idx) in [(Side::Top, top), (Side::Bottom, bottom)] {
        let target = if side == Side::Top { &mut z } else { &mut w };
        let mut budget = 0.5;
        let mut free = Vec::new();
        for (slot, &a) in idx.iter().enumerate() {
            let (p, q) = pairs[a - 1];
            match twist_sign(twist, side, slot) {
                Some(s) => {
                    let m = 2.0 * y[a - 1].abs();
                    budget -= m;
                    let r = (m / 2.0).sqrt();
                    target[p] = Complex64::new(r, 0.0);
                    target[q] = Complex64::new(0.0, s.value() as f64 * r);
                }
                None => free.push(a),
            }
        }
        let ys: Vec<f64> = free.iter().map(|&a| y[a - 1]).collect();
        let l = if free.len() >= 2 { equal_length(&ys, budget) } else { 0.0 };
        for (k, &a) in free.iter().enumerate() {
            let (p, q) = pairs[a - 1];
            let ya = y[a - 1];
            let m = (l * l + 4.0 * ya * ya).sqrt();
            if m == 0.0 {
                continue;
            }
            let phi = (2.0 * ya / m).clamp(-1.0, 1.0).asin();
            let psi = std::f64::consts::TAU * k as f64 / free.len() as f64;
            let r = (m / 2.0).sqrt();
            target[p] = Complex64::from_polar(r, 0.5 * (psi - phi));
            target[q] = Complex64::from_polar(r, 0.5 * (psi + phi));
        }
    }
    HVector::from_split(&z, &w).expect("dimension matches the weights")
}

fn split_decision(
    weights: Weights,
    n: &[BigInt],
    label: StratumLabel,
    invariant: BigInt,
    kind: QuotientKind,
) -> StratumDecision {
    let StratumLabel::Split { top, bottom, twist, .. } = &label else {
        unreachable!("split labels only")
    };
    let dim = label.dim();
    let mut d = StratumDecision {
        label: label.clone(),
        intersects: false,
        exact_data: None,
        isotropy_invariant: invariant,
        quotient_kind: kind,
        dim,
        boundary: false,
        reason: None,
        witness_residual: None,
    };
    match decide_split(n, top, bottom, twist.as_ref()) {
        Err(why) => d.reason = Some(why),
        Ok(sol) => {
            let u = split_witness(weights, &sol, top, bottom, twist.as_ref());
            d.witness_residual = Some(witness_residual(weights, &u));
            d.intersects = true;
            d.boundary = sol.boundary;
            d.exact_data = Some(ExactData::Twists { c: sol.c, imag: sol.imag });
        }
    }
    d
}

/// The floating point witness for a split label, when it intersects.
pub fn split_point(weights: Weights, n: &[BigInt], label: &StratumLabel) -> Option<HVector> {
    let StratumLabel::Split { top, bottom, twist, .. } = label else { return None };
    let sol = decide_split(n, top, bottom, twist.as_ref()).ok()?;
    Some(split_witness(weights, &sol, top, bottom, twist.as_ref()))
}

fn complement(of: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|k| !of.contains(k)).collect()
}

const PAIR_SPLITS: [[usize; 2]; 6] = [[1, 2], [3, 4], [1, 3], [2, 4], [1, 4], [2, 3]];

/// Decide any Θ split label, with its isotropy invariant.
///
/// `3 | 1` labels carry the minor of the three-element side; untwisted
/// `2 | 2` labels the gcd of all minors; `2 | 2` labels with one side twisted
/// are points carrying [`point_invariant`].
pub fn decide_theta_label(t: &ThetaMatrix, label: &StratumLabel) -> Option<StratumDecision> {
    let StratumLabel::Split { case: Case::Theta, top, bottom, twist } = label else { return None };
    let minors = minors_theta(t);
    let n = null_vector_theta(&minors);
    let weights = Weights::Theta(t);
    let (inv, kind) = match (top.len(), bottom.len(), twist) {
        (3, 1, _) => (minors.get([top[0], top[1], top[2]]).clone(), QuotientKind::Sphere),
        (1, 3, _) => (minors.get([bottom[0], bottom[1], bottom[2]]).clone(), QuotientKind::Sphere),
        (2, 2, None) => (gcd_list(&minors.as_array()), QuotientKind::Sphere),
        (2, 2, Some(tw)) => {
            let cols: Vec<[BigInt; 3]> = (1..=4).map(|a| t.column(a)).collect();
            let (free, twisted) = match tw.side {
                Side::Top => (bottom, top),
                Side::Bottom => (top, bottom),
            };
            (point_invariant(&cols, free, twisted, [tw.signs[0], tw.signs[1]]), QuotientKind::Point)
        }
        _ => return None,
    };
    Some(split_decision(weights, &n, label.clone(), inv, kind))
}

/// The candidate type-two labels of Θ.
///
/// Sixteen signed components of the `3 | 1` labels and six `2 | 2` labels
/// (spheres), then the 24 components of the `2 | 2` labels with both bottom
/// pairs twisted (points).
pub fn type2_labels() -> Vec<StratumLabel> {
    let mut out = Vec::new();
    for delta in 1..=4 {
        let three = complement(&[delta], 4);
        for s in [Sign::Plus, Sign::Minus] {
            out.push(StratumLabel::twisted(Case::Theta, &three, &[delta], Side::Bottom, &[s]));
        }
        for s in [Sign::Plus, Sign::Minus] {
            out.push(StratumLabel::twisted(Case::Theta, &[delta], &three, Side::Top, &[s]));
        }
    }
    for top in PAIR_SPLITS {
        out.push(StratumLabel::split(Case::Theta, &top, &complement(&top, 4)));
    }
    for top in PAIR_SPLITS {
        let bottom = complement(&top, 4);
        for sg in [Sign::Plus, Sign::Minus] {
            for sd in [Sign::Plus, Sign::Minus] {
                out.push(StratumLabel::twisted(Case::Theta, &top, &bottom, Side::Bottom, &[sg, sd]));
            }
        }
    }
    out
}

/// Every type-two candidate of a Θ matrix, in [`type2_labels`] order.
pub fn enumerate_type2(t: &ThetaMatrix) -> Vec<StratumDecision> {
    type2_labels()
        .iter()
        .map(|l| decide_theta_label(t, l).expect("Θ split label"))
        .collect()
}

/// `det(c_α, c_β, s_γ c_γ − s_δ c_δ)` for the free pairs `α < β` and twisted `γ < δ`.
pub fn point_invariant(cols: &[[BigInt; 3]], free: &[usize], twisted: &[usize], s: [Sign; 2]) -> BigInt {
    let (a, b) = (&cols[free[0] - 1], &cols[free[1] - 1]);
    let (g, d) = (&cols[twisted[0] - 1], &cols[twisted[1] - 1]);
    let mixed: [BigInt; 3] = std::array::from_fn(|r| &g[r] * s[0].value() - &d[r] * s[1].value());
    // rows of the transpose, same determinant
    det3(&std::array::from_fn(|r| [a[r].clone(), b[r].clone(), mixed[r].clone()]))
}

/// The twelve signed split candidates of an Ω matrix (all with `u₁ = 0`).
pub fn enumerate_omega_split(o: &OmegaMatrix) -> Vec<StratumDecision> {
    let minors = minors_omega(o);
    let n = null_vector_omega(&minors);
    let weights = Weights::Omega(o);
    let mut out = Vec::new();
    for gamma in 1..=3 {
        let two = complement(&[gamma], 3);
        let inv = minors.get([two[0], two[1]]).clone();
        for s in [Sign::Plus, Sign::Minus] {
            let l = StratumLabel::twisted(Case::Omega, &two, &[gamma], Side::Bottom, &[s]);
            out.push(split_decision(weights, &n, l, inv.clone(), QuotientKind::Point));
        }
        for s in [Sign::Plus, Sign::Minus] {
            let l = StratumLabel::twisted(Case::Omega, &[gamma], &two, Side::Top, &[s]);
            out.push(split_decision(weights, &n, l, inv.clone(), QuotientKind::Point));
        }
    }
    out
}
