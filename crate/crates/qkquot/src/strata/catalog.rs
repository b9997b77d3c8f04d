//! Assembling the singular locus from the individual decisions.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::weights::{is_locally_free_omega, is_locally_free_theta, OmegaMatrix, ThetaMatrix};

use super::split::{decide_theta_label, enumerate_omega_split, enumerate_type2};
use super::type1::{omega_type1_decisions, type1_catalog, MixedCertificate};
use super::{Case, QuotientKind, StrataError, StratumDecision, StratumLabel};

/// Points grouped by a pair of `2 | 2` labels exchanged by `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub name: String,
    pub points: Vec<StratumDecision>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularLocusCatalog {
    pub case: Case,
    /// Θ: the realized type-one patterns. Ω: the realized `S_{(±,±,±)}`.
    pub type1_spheres: Vec<StratumDecision>,
    pub type2_spheres: Vec<StratumDecision>,
    pub point_sets: Vec<PointSet>,
    /// Intersecting candidates dropped because `|invariant| = 1`.
    pub excluded: Vec<StratumDecision>,
    /// Candidates that do not meet the zero set.
    pub empty: Vec<StratumDecision>,
    pub certificates: Vec<MixedCertificate>,
    pub notes: Vec<String>,
}

impl SingularLocusCatalog {
    pub fn sphere_count(&self) -> usize {
        self.type1_spheres.len() + self.type2_spheres.len()
    }

    pub fn point_count(&self) -> usize {
        self.point_sets.iter().map(|s| s.points.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = &StratumDecision> {
        self.type1_spheres
            .iter()
            .chain(&self.type2_spheres)
            .chain(self.point_sets.iter().flat_map(|s| &s.points))
    }

    /// Every way the catalog exceeds the known counts, or carries a bad invariant.
    pub fn bound_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cap = |what: &str, got: usize, max: usize| {
            if got > max {
                out.push(format!("{got} {what}, at most {max} expected"));
            }
        };
        match self.case {
            Case::Theta => {
                cap("type-one spheres", self.type1_spheres.len(), 2);
                cap("type-two spheres", self.type2_spheres.len(), 22);
                cap("point sets", self.point_sets.len(), 3);
                for s in &self.point_sets {
                    cap(&format!("points in {}", s.name), s.points.len(), 4);
                }
            }
            Case::Omega => {
                cap("spheres", self.type1_spheres.len() + self.type2_spheres.len(), 1);
                cap("points", self.point_count(), 12);
                if self.entries().any(|d| d.label == StratumLabel::OmegaS1) {
                    out.push("S_1 appears in the catalog".into());
                }
            }
        }
        for d in self.entries() {
            if d.isotropy_invariant.abs() < BigInt::from(2) {
                out.push(format!("{} has invariant {}", d.label, d.isotropy_invariant));
            }
            if d.quotient_dim() != d.quotient_kind.dim() || !d.intersects || d.exact_data.is_none() {
                out.push(format!("{} is listed without intersecting data", d.label));
            }
        }
        out
    }
}

fn retain(decisions: Vec<StratumDecision>, kept: &mut Vec<StratumDecision>, excluded: &mut Vec<StratumDecision>, empty: &mut Vec<StratumDecision>) {
    for d in decisions {
        if !d.intersects {
            empty.push(d);
        } else if d.is_trivial_isotropy() {
            excluded.push(d);
        } else {
            kept.push(d);
        }
    }
}

const POINT_CLASSES: [([usize; 2], [usize; 2]); 3] = [([1, 2], [3, 4]), ([1, 3], [2, 4]), ([1, 4], [2, 3])];

fn top_of(l: &StratumLabel) -> Option<&[usize]> {
    match l {
        StratumLabel::Split { top, .. } => Some(top),
        _ => None,
    }
}

pub fn catalog_theta(t: &ThetaMatrix) -> Result<SingularLocusCatalog, StrataError> {
    if !is_locally_free_theta(t).locally_free {
        return Err(StrataError::NotLocallyFree);
    }
    let t1 = type1_catalog(t)?;
    let mut excluded = Vec::new();
    let mut empty = Vec::new();
    let mut type1_spheres = Vec::new();
    retain(t1.decisions, &mut type1_spheres, &mut excluded, &mut empty);

    let (spheres, points): (Vec<_>, Vec<_>) =
        enumerate_type2(t).into_iter().partition(|d| d.quotient_kind == QuotientKind::Sphere);
    let mut type2_spheres = Vec::new();
    retain(spheres, &mut type2_spheres, &mut excluded, &mut empty);
    let mut kept_points = Vec::new();
    retain(points, &mut kept_points, &mut excluded, &mut empty);

    let point_sets = POINT_CLASSES
        .iter()
        .map(|(a, b)| PointSet {
            name: format!("{}{}|{}{}", a[0], a[1], b[0], b[1]),
            points: kept_points
                .iter()
                .filter(|d| top_of(&d.label).is_some_and(|top| top == a || top == b))
                .cloned()
                .collect(),
        })
        .collect();

    let cat = SingularLocusCatalog {
        case: Case::Theta,
        type1_spheres,
        type2_spheres,
        point_sets,
        excluded,
        empty,
        certificates: t1.certificates,
        notes: Vec::new(),
    };
    for d in cat.entries().chain(&cat.excluded) {
        if d.witness_residual.is_some_and(|r| r > super::WITNESS_TOL) {
            return Err(StrataError::ClassificationViolation(format!("witness for {} misses the zero set", d.label)));
        }
    }
    Ok(cat)
}

pub fn catalog_omega(o: &OmegaMatrix) -> Result<SingularLocusCatalog, StrataError> {
    if !is_locally_free_omega(o) {
        return Err(StrataError::NotLocallyFree);
    }
    let mut excluded = Vec::new();
    let mut empty = Vec::new();
    let mut spheres = Vec::new();
    retain(omega_type1_decisions(o)?, &mut spheres, &mut excluded, &mut empty);
    let mut points = Vec::new();
    retain(enumerate_omega_split(o), &mut points, &mut excluded, &mut empty);
    let cat = SingularLocusCatalog {
        case: Case::Omega,
        type1_spheres: spheres,
        type2_spheres: Vec::new(),
        point_sets: vec![PointSet { name: "S_0".into(), points }],
        excluded,
        empty,
        certificates: Vec::new(),
        notes: vec!["S_1 (u_1 != 0) contributes no singular point".into()],
    };
    for d in cat.entries().chain(&cat.excluded) {
        if d.witness_residual.is_some_and(|r| r > super::WITNESS_TOL) {
            return Err(StrataError::ClassificationViolation(format!("witness for {} misses the zero set", d.label)));
        }
    }
    Ok(cat)
}

/// Retained Θ labels whose `J` image is not retained with the same `|invariant|`.
///
/// Spheres are looked up in the catalog. The image of a point label has its
/// twist on top, which the enumeration does not list, so it is decided afresh.
pub fn j_symmetry_violations(cat: &SingularLocusCatalog, t: &ThetaMatrix) -> Vec<String> {
    let mut out = Vec::new();
    for d in cat.type1_spheres.iter().chain(&cat.type2_spheres) {
        let Ok(j) = d.label.j_image() else {
            out.push(format!("{} has no image", d.label));
            continue;
        };
        let found = cat.type1_spheres.iter().chain(&cat.type2_spheres).find(|e| e.label == j);
        match found {
            Some(e) if e.isotropy_invariant.abs() == d.isotropy_invariant.abs() => {}
            Some(e) => out.push(format!("{} and {} carry {} and {}", d.label, j, d.isotropy_invariant, e.isotropy_invariant)),
            None => out.push(format!("{} is retained but {} is not", d.label, j)),
        }
    }
    for set in &cat.point_sets {
        for d in &set.points {
            let Ok(j) = d.label.j_image() else { continue };
            match decide_theta_label(t, &j) {
                Some(e) if e.intersects && e.isotropy_invariant.abs() == d.isotropy_invariant.abs() => {}
                _ => out.push(format!("{} is retained but {} is not", d.label, j)),
            }
        }
    }
    out
}
