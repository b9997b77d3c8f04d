use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::quatmoment::HVector;
use crate::weights::{Sign, SignTriple};
use crate::zeroset::{Coord, Part, Restriction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    Theta,
    Omega,
}

/// Which index set of a split label carries the `±i` twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The `z` pairs (superscript indices).
    Top,
    /// The `w` pairs (subscript indices).
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist {
    pub side: Side,
    /// One sign per index of that side, in index order.
    pub signs: Vec<Sign>,
}

/// Symbolic name of a stratum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumLabel {
    /// Every pair satisfies `z' = a·t_α·i·z`, `w' = b·t_α·i·w` with `t₁ = +`.
    TypeOne { family: (Sign, Sign), t: SignTriple },
    /// `z` lives on the `top` pairs and `w` on the `bottom` pairs.
    Split {
        case: Case,
        top: Vec<usize>,
        bottom: Vec<usize>,
        twist: Option<Twist>,
    },
    /// Ω with `u₁ = 0` and `u' = s_α u i` on every pair.
    OmegaTypeOne { signs: [Sign; 3] },
    /// Ω points with `u₁ = 0`.
    OmegaS0,
    /// Ω points with `u₁ ≠ 0`.
    OmegaS1,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("the involution is defined on Θ labels only")]
    NotApplicable,
}

impl StratumLabel {
    pub fn split(case: Case, top: &[usize], bottom: &[usize]) -> Self {
        StratumLabel::Split { case, top: top.to_vec(), bottom: bottom.to_vec(), twist: None }
    }

    pub fn twisted(case: Case, top: &[usize], bottom: &[usize], side: Side, signs: &[Sign]) -> Self {
        StratumLabel::Split {
            case,
            top: top.to_vec(),
            bottom: bottom.to_vec(),
            twist: Some(Twist { side, signs: signs.to_vec() }),
        }
    }

    pub fn case(&self) -> Case {
        match self {
            StratumLabel::TypeOne { .. } => Case::Theta,
            StratumLabel::Split { case, .. } => *case,
            _ => Case::Omega,
        }
    }

    /// The same label with any twist removed.
    pub fn base(&self) -> StratumLabel {
        match self {
            StratumLabel::Split { case, top, bottom, .. } => StratumLabel::split(*case, top, bottom),
            other => other.clone(),
        }
    }

    /// Image under `(z, w) ↦ (−w, z)`.
    ///
    /// Top and bottom trade places, a twist moves with its indices, and a
    /// type-one family `(a, b)` becomes `(b, a)`.
    pub fn j_image(&self) -> Result<StratumLabel, LabelError> {
        match self {
            StratumLabel::TypeOne { family: (a, b), t } => Ok(StratumLabel::TypeOne { family: (*b, *a), t: *t }),
            StratumLabel::Split { case: Case::Theta, top, bottom, twist } => Ok(StratumLabel::Split {
                case: Case::Theta,
                top: bottom.clone(),
                bottom: top.clone(),
                twist: twist.as_ref().map(|tw| Twist {
                    side: match tw.side {
                        Side::Top => Side::Bottom,
                        Side::Bottom => Side::Top,
                    },
                    signs: tw.signs.clone(),
                }),
            }),
            _ => Err(LabelError::NotApplicable),
        }
    }
}

/// A linear relation on the complex coordinates: `coord = 0` or `coord = factor · to`.
type Relation = (Coord, Option<(Coord, Complex64)>);

impl StratumLabel {
    /// 1-based coordinates of torus pair `alpha`.
    fn pair_coords(&self, alpha: usize) -> (usize, usize) {
        match self.case() {
            Case::Theta => (2 * alpha - 1, 2 * alpha),
            Case::Omega => (2 * alpha, 2 * alpha + 1),
        }
    }

    /// Number of quaternionic coordinates.
    pub fn coord_count(&self) -> usize {
        match self.case() {
            Case::Theta => 8,
            Case::Omega => 7,
        }
    }

    fn relations(&self) -> Vec<Relation> {
        let i = Complex64::new(0.0, 1.0);
        let tie = |part: Part, p: usize, q: usize, s: Sign| {
            (Coord { part, index: q }, Some((Coord { part, index: p }, i * s.value() as f64)))
        };
        let mut out = Vec::new();
        if self.case() == Case::Omega && *self != StratumLabel::OmegaS1 {
            out.push((Coord::z(1), None));
            out.push((Coord::w(1), None));
        }
        match self {
            StratumLabel::TypeOne { family: (a, b), t } => {
                let tv = [Sign::Plus, t.0[0], t.0[1], t.0[2]];
                for (alpha, ta) in (1..=4).zip(tv) {
                    let (p, q) = self.pair_coords(alpha);
                    out.push(tie(Part::Z, p, q, Sign::from_value(a.value() * ta.value())));
                    out.push(tie(Part::W, p, q, Sign::from_value(b.value() * ta.value())));
                }
            }
            StratumLabel::OmegaTypeOne { signs } => {
                for (alpha, s) in (1..=3).zip(signs) {
                    let (p, q) = self.pair_coords(alpha);
                    out.push(tie(Part::Z, p, q, *s));
                    out.push(tie(Part::W, p, q, *s));
                }
            }
            StratumLabel::Split { top, bottom, twist, .. } => {
                for (side, idx, other) in [(Side::Top, top, Part::W), (Side::Bottom, bottom, Part::Z)] {
                    let own = if other == Part::W { Part::Z } else { Part::W };
                    for (slot, &alpha) in idx.iter().enumerate() {
                        let (p, q) = self.pair_coords(alpha);
                        out.push((Coord { part: other, index: p }, None));
                        out.push((Coord { part: other, index: q }, None));
                        if let Some(tw) = twist.as_ref().filter(|tw| tw.side == side) {
                            out.push(tie(own, p, q, tw.signs[slot]));
                        }
                    }
                }
            }
            StratumLabel::OmegaS0 | StratumLabel::OmegaS1 => {}
        }
        out
    }

    /// Real dimension of the stratum: its linear pattern plus two.
    ///
    /// `S_1` is open in ℍ⁷ and reports 28.
    pub fn dim(&self) -> u32 {
        if *self == StratumLabel::OmegaS1 {
            return 28;
        }
        let n = self.coord_count() as u32;
        4 * n - 2 * self.relations().len() as u32 + 2
    }

    /// The linear pattern as a solver restriction.
    pub fn restriction(&self) -> Restriction {
        let mut r = Restriction::full(self.coord_count());
        for (c, rel) in self.relations() {
            r = match rel {
                None => r.zero(c),
                Some((to, f)) => r.tie(c, to, f),
            };
        }
        r
    }

    /// Largest violation of the linear pattern at `u`.
    pub fn pattern_defect(&self, u: &HVector) -> f64 {
        let (z, w) = (u.z(), u.w());
        let get = |c: Coord| match c.part {
            Part::Z => z[c.index - 1],
            Part::W => w[c.index - 1],
        };
        self.relations()
            .into_iter()
            .map(|(c, rel)| match rel {
                None => get(c).norm(),
                Some((to, f)) => (get(c) - f * get(to)).norm(),
            })
            .fold(0.0, f64::max)
    }
}

fn digits(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect()
}

fn signs(v: &[Sign]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        format!("({})", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for StratumLabel {
    /// `S^{123}_{4}`, `_{+}S^{123}_{4}`, `^{(+,-)}S^{12}_{34}`, `S^{(+,+)}_{(+,-,+)}`, `S_{(+,+,-)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::TypeOne { family: (a, b), t } => write!(f, "S^{{({a},{b})}}_{{{t}}}"),
            StratumLabel::Split { top, bottom, twist, .. } => {
                match twist {
                    Some(Twist { side: Side::Bottom, signs: s }) => write!(f, "_{{{}}}", signs(s))?,
                    Some(Twist { side: Side::Top, signs: s }) => write!(f, "^{{{}}}", signs(s))?,
                    None => {}
                }
                write!(f, "S^{{{}}}_{{{}}}", digits(top), digits(bottom))
            }
            StratumLabel::OmegaTypeOne { signs: s } => write!(f, "S_{{{}}}", signs(s)),
            StratumLabel::OmegaS0 => f.write_str("S_0"),
            StratumLabel::OmegaS1 => f.write_str("S_1"),
        }
    }
}
