//! The per-pair fixed-point matrix `M_α` for `λ = ε + jσ`, `ρ`, and angle `θ`.
//!
//! `M_α (z, z', w, w')ᵀ = 0` says that the pair is fixed by the group element.
//! Its determinant factors as
//!
//! ```text
//! ρ² (ρ + ρ̄e^{−2iθ} − 2 Re ε e^{−iθ}) (ρ + ρ̄e^{2iθ} − 2 Re ε e^{iθ})
//! ```
//!
//! so it vanishes exactly when `Re(ρ̄ e^{±iθ}) = Re ε`.

use nalgebra::Matrix4;
use num_complex::Complex64;

fn m_alpha(eps: Complex64, sigma: Complex64, rho: Complex64, theta: f64) -> Matrix4<Complex64> {
    let c = Complex64::new(theta.cos(), 0.0);
    let s = Complex64::new(theta.sin(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let sr = sigma * rho;
    let sbr = sigma.conj() * rho;
    let a = c - eps.conj() * rho;
    let b = c - eps * rho;
    Matrix4::new(
        zero, -sr, -s, a, //
        -sr, zero, a, s, //
        -s, b, zero, sbr, //
        b, s, sbr, zero,
    )
}

/// Determinant of the 4×4 block matrix, computed directly.
pub fn det_m_alpha(eps: Complex64, sigma: Complex64, rho: Complex64, theta: f64) -> Complex64 {
    m_alpha(eps, sigma, rho, theta).determinant()
}

/// The factored closed form of the same determinant.
pub fn det_m_alpha_factored(eps: Complex64, rho: Complex64, theta: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, theta);
    let re = Complex64::new(2.0 * eps.re, 0.0);
    let f1 = rho + rho.conj() * e.conj() * e.conj() - re * e.conj();
    let f2 = rho + rho.conj() * e * e - re * e;
    rho * rho * f1 * f2
}

/// A `ρ` with `ρ̄ e^{a·iθ} = Re ε + b·i·√((Im ε)² + |σ|²)`, for signs `a, b`.
pub fn vanishing_rho(eps: Complex64, sigma: Complex64, theta: f64, a: i8, b: i8) -> Complex64 {
    let root = (eps.im * eps.im + sigma.norm_sqr()).sqrt();
    let target = Complex64::new(eps.re, f64::from(b) * root);
    // ρ̄ = target · e^{−a·iθ}
    (target * Complex64::from_polar(1.0, -f64::from(a) * theta)).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;
    use std::f64::consts::TAU;

    fn unit_pair(rng: &mut SplitMix64) -> (Complex64, Complex64) {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        (Complex64::new(v[0] / n, v[1] / n), Complex64::new(v[2] / n, v[3] / n))
    }

    #[test]
    fn direct_and_factored_agree() {
        let mut rng = SplitMix64::seed_from_u64(17);
        for _ in 0..500 {
            let (eps, sigma) = unit_pair(&mut rng);
            let rho = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
            let theta = rng.random_range(0.0..TAU);
            let d = det_m_alpha(eps, sigma, rho, theta) - det_m_alpha_factored(eps, rho, theta);
            assert!(d.norm() < 1e-12, "{d}");
        }
    }

    #[test]
    fn enforced_vanishing() {
        let mut rng = SplitMix64::seed_from_u64(3);
        for _ in 0..200 {
            let (eps, sigma) = unit_pair(&mut rng);
            let theta = rng.random_range(0.0..TAU);
            for a in [1, -1] {
                for b in [1, -1] {
                    let rho = vanishing_rho(eps, sigma, theta, a, b);
                    assert!((rho.norm() - 1.0).abs() < 1e-12);
                    assert!(det_m_alpha(eps, sigma, rho, theta).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn sigma_zero_special_case() {
        let eps = Complex64::from_polar(1.0, 0.7);
        let theta = 1.9;
        let zero = Complex64::new(0.0, 0.0);
        for rho in [Complex64::from_polar(1.0, theta) / eps, Complex64::from_polar(1.0, -theta) / eps.conj()] {
            assert!(det_m_alpha(eps, zero, rho, theta).norm() < 1e-12);
        }
    }

    #[test]
    fn generic_draws_do_not_vanish() {
        let mut rng = SplitMix64::seed_from_u64(99);
        let mut checked = 0;
        while checked < 200 {
            let (eps, sigma) = unit_pair(&mut rng);
            let rho = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
            let theta = rng.random_range(0.0..TAU);
            // stay away from the vanishing locus
            let gap = [theta, -theta]
                .iter()
                .map(|&t| ((rho.conj() * Complex64::from_polar(1.0, t)).re - eps.re).abs())
                .fold(f64::INFINITY, f64::min);
            if gap < 1e-2 {
                continue;
            }
            checked += 1;
            assert!(det_m_alpha(eps, sigma, rho, theta).norm() > 1e-8);
        }
    }
}
