use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// `r + i·i + j·j + k·k` in double precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub r: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(r: f64, i: f64, j: f64, k: f64) -> Self {
        Quaternion { r, i, j, k }
    }

    pub fn from_array([r, i, j, k]: [f64; 4]) -> Self {
        Quaternion { r, i, j, k }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r, self.i, self.j, self.k]
    }

    /// `z + j w`.
    ///
    /// With `z = a + bi`, `w = c + di` this is `a + bi + cj − dk`, because
    /// `j·i = −k`.
    pub fn from_split(z: Complex64, w: Complex64) -> Self {
        Quaternion::new(z.re, z.im, w.re, -w.im)
    }

    /// Inverse of [`Quaternion::from_split`].
    pub fn split(self) -> (Complex64, Complex64) {
        (Complex64::new(self.r, self.i), Complex64::new(self.j, -self.k))
    }

    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.r, -self.i, -self.j, -self.k)
    }

    pub fn norm_sqr(self) -> f64 {
        self.r * self.r + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.r * s, self.i * s, self.j * s, self.k * s)
    }

    pub fn imag(self) -> [f64; 3] {
        [self.i, self.j, self.k]
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.r + o.r, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.r - o.r, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a, b) = (self, o);
        Quaternion::new(
            a.r * b.r - a.i * b.i - a.j * b.j - a.k * b.k,
            a.r * b.i + a.i * b.r + a.j * b.k - a.k * b.j,
            a.r * b.j - a.i * b.k + a.j * b.r + a.k * b.i,
            a.r * b.k + a.i * b.j - a.j * b.i + a.k * b.r,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Quaternion;

    fn close(a: Q, b: Q) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn unit_table() {
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::J * Q::I, -Q::K);
        for u in [Q::I, Q::J, Q::K] {
            assert_eq!(u * u, -Q::ONE);
        }
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
    }

    #[test]
    fn split_matches_product() {
        let z = Complex64::new(0.3, -1.2);
        let w = Complex64::new(2.0, 0.7);
        let u = Q::from_split(z, w);
        assert!(close(u, Q::from_complex(z) + Q::J * Q::from_complex(w)));
        let (z2, w2) = u.split();
        assert_eq!((z2, w2), (z, w));
    }

    fn quat() -> impl Strategy<Value = Q> {
        prop::array::uniform4(-3.0f64..3.0).prop_map(Q::from_array)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn conj_reverses_products(p in quat(), q in quat()) {
            prop_assert!(close((p * q).conj(), q.conj() * p.conj()));
        }

        #[test]
        fn associative(p in quat(), q in quat(), r in quat()) {
            prop_assert!(((p * q) * r - p * (q * r)).norm() < 1e-11);
        }

        #[test]
        fn j_swaps_complex_conjugate(a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let z = Q::from_complex(Complex64::new(a, b));
            prop_assert!(close(Q::J * z, z.conj() * Q::J));
        }
    }
}
