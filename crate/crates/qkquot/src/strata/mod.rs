//! Singular strata of the twistor space: enumeration and exact decisions.
//!
//! A stratum is a linear pattern in the quaternionic coordinates (which
//! pairs live in `z`, which in `w`, which pairs satisfy `u' = ±u i`). Each
//! candidate is decided with exact rationals. When a candidate intersects
//! the zero set an explicit floating point witness is built and pushed
//! through the moment maps, so every positive answer is checked by a
//! second route.

pub mod catalog;
pub mod fixed_point;
pub mod label;
pub mod split;
pub mod type1;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::exact::Rational;
use crate::quatmoment::{moment, HVector, Weights};

pub use catalog::{catalog_omega, catalog_theta, j_symmetry_violations, PointSet, SingularLocusCatalog};
pub use fixed_point::{det_m_alpha, det_m_alpha_factored, vanishing_rho};
pub use label::{Case, LabelError, Side, StratumLabel, Twist};
pub use split::{decide_split, decide_theta_label, enumerate_omega_split, enumerate_type2, type2_labels, SplitSolution};
pub use type1::{
    mixed_certificate, omega_type1_closed_form, omega_type1_decisions, solve_omega_type1_system, solve_type1_system,
    type1_catalog, type1_closed_form, MixedCertificate, Type1Catalog,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    Sphere,
    Point,
}

impl QuotientKind {
    pub fn dim(self) -> u32 {
        match self {
            QuotientKind::Sphere => 2,
            QuotientKind::Point => 0,
        }
    }
}

impl fmt::Display for QuotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientKind::Sphere => "sphere",
            QuotientKind::Point => "point",
        })
    }
}

/// Solved invariants of an intersecting stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactData {
    /// `|u_{2α−1}|²` for each pair (equal to `|u_{2α}|²`).
    PairNorms(Vec<Rational>),
    /// Scale `c` of the torus equations and `Im(z̄ z')` (or `Im(w̄ w')`) per pair.
    Twists { c: Rational, imag: Vec<Rational> },
}

/// Outcome for one candidate stratum (one signed component).
#[derive(Debug, Clone, PartialEq)]
pub struct StratumDecision {
    pub label: StratumLabel,
    pub intersects: bool,
    pub exact_data: Option<ExactData>,
    pub isotropy_invariant: BigInt,
    pub quotient_kind: QuotientKind,
    /// Real dimension of the stratum before intersecting with the zero set.
    pub dim: u32,
    /// The solution sits on the edge of the feasible region: some pair
    /// inequality holds with equality.
    pub boundary: bool,
    /// Why an empty candidate is empty.
    pub reason: Option<String>,
    /// Moment residual of the constructed witness point.
    pub witness_residual: Option<f64>,
}

impl StratumDecision {
    pub fn quotient_dim(&self) -> u32 {
        self.quotient_kind.dim()
    }

    /// `|invariant| = 1` means the set is smooth and drops out of the singular locus.
    pub fn is_trivial_isotropy(&self) -> bool {
        self.isotropy_invariant.abs() == BigInt::from(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("the torus action is not locally free for this matrix")]
    NotLocallyFree,
    #[error("classification violated: {0}")]
    ClassificationViolation(String),
    #[error("singular system: the determinant vanishes")]
    SingularSystem,
}

/// Moment residual of `u`, and how far `|u|` is from 1.
pub(crate) fn witness_residual(weights: Weights, u: &HVector) -> f64 {
    let m = moment(weights, u).expect("witness has the right dimension");
    m.norm().max((u.norm_sqr() - 1.0).abs())
}

/// Bound on the witness residual before a positive decision is trusted.
pub const WITNESS_TOL: f64 = 1e-10;
