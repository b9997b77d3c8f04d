//! Exact integer and rational linear algebra on small fixed-size matrices.
//!
//! Everything here is arbitrary precision. Weight matrices with entries in
//! the tens already produce four- and five-digit box determinants, and the
//! classification decisions downstream compare these values for equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Reduced fraction with positive denominator.
///
/// `BigRational` normalizes on every construction, so equality is structural.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("singular matrix: determinant is zero")]
    SingularMatrix,
}

/// Integer 3×3 determinant by cofactor expansion along the first row.
pub fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    let c0 = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
    let c1 = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
    let c2 = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
    &m[0][0] * c0 - &m[0][1] * c1 + &m[0][2] * c2
}

/// Integer 2×2 determinant.
pub fn det2(m: &[[BigInt; 2]; 2]) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Rational 4×4 determinant via fraction-preserving Gaussian elimination.
pub fn det4(m: &[[Rational; 4]; 4]) -> Rational {
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..4 {
        let Some(p) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..4 {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..4 {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Unique solution of `a · x = b` by Cramer's rule.
pub fn solve4(a: &[[Rational; 4]; 4], b: &[Rational; 4]) -> Result<[Rational; 4], LinalgError> {
    let d = det4(a);
    if d.is_zero() {
        return Err(LinalgError::SingularMatrix);
    }
    Ok(std::array::from_fn(|k| {
        let mut ak = a.clone();
        for r in 0..4 {
            ak[r][k] = b[r].clone();
        }
        det4(&ak) / &d
    }))
}

/// Rational 3×3 determinant by cofactor expansion.
pub fn det3_rational(m: &[[Rational; 3]; 3]) -> Rational {
    let c0 = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
    let c1 = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
    let c2 = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
    &m[0][0] * c0 - &m[0][1] * c1 + &m[0][2] * c2
}

/// Unique solution of a 3×3 system by Cramer's rule.
pub fn solve3(a: &[[Rational; 3]; 3], b: &[Rational; 3]) -> Result<[Rational; 3], LinalgError> {
    let d = det3_rational(a);
    if d.is_zero() {
        return Err(LinalgError::SingularMatrix);
    }
    Ok(std::array::from_fn(|k| {
        let mut ak = a.clone();
        for r in 0..3 {
            ak[r][k] = b[r].clone();
        }
        det3_rational(&ak) / &d
    }))
}

/// Non-negative gcd of the absolute values; the empty list gives 0.
pub fn gcd_list(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Convenience: lift an `i64` 3×3 array.
pub fn int3(m: [[i64; 3]; 3]) -> [[BigInt; 3]; 3] {
    m.map(|row| row.map(BigInt::from))
}

/// Convenience: lift an `i64` 4×4 array into rationals.
pub fn rat4(m: [[i64; 4]; 4]) -> [[Rational; 4]; 4] {
    m.map(|row| row.map(|v| Rational::from_integer(BigInt::from(v))))
}
