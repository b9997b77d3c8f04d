//! Weight matrices, their minors and box determinants, and the admissibility
//! predicates built from them.
//!
//! A [`ThetaMatrix`] has rows `p, q, l` and columns `c_α = (p_α, q_α, l_α)`.
//! Its four minors `Δ_{αβγ}` are the column-triple determinants, always in
//! the order `123, 124, 134, 234`. The box determinant for a sign triple
//! `(s₂, s₃, s₄)` is
//!
//! ```text
//! box(s₂,s₃,s₄) = det [ c₁ + s₂c₂ ; c₁ + s₃c₃ ; c₁ + s₄c₄ ]
//!               = s₂s₃Δ123 − s₂s₄Δ124 + s₃s₄Δ134 + s₂s₃s₄Δ234
//! ```
//!
//! Four boxes are singled out by name:
//!
//! | name | sign triple |
//! |------|-------------|
//! | X    | (+,+,+)     |
//! | Y    | (+,−,+)     |
//! | Z    | (−,+,−)     |
//! | W    | (+,−,−)     |
//!
//! With this table the inverse relations are `Δ123 = −(Y+W)/2`,
//! `Δ124 = −(X+Y)/2`, `Δ134 = (X+Y−Z+W)/2`, `Δ234 = (Z−Y)/2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{det2, det3, gcd_list};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Signs `(s₂, s₃, s₄)` attached to columns 2, 3, 4 relative to column 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignTriple(pub [Sign; 3]);

impl SignTriple {
    /// All eight triples, `(+,+,+)` first, last sign varying fastest.
    pub fn all() -> [SignTriple; 8] {
        std::array::from_fn(|k| {
            let bit = |b: usize| if k >> b & 1 == 0 { Sign::Plus } else { Sign::Minus };
            SignTriple([bit(2), bit(1), bit(0)])
        })
    }

    pub fn index(self) -> usize {
        self.0
            .iter()
            .fold(0, |acc, s| acc << 1 | usize::from(*s == Sign::Minus))
    }

    pub fn values(self) -> [i64; 3] {
        self.0.map(Sign::value)
    }

    pub fn negate(self) -> SignTriple {
        SignTriple(self.0.map(Sign::flip))
    }

    pub fn from_values(v: [i64; 3]) -> SignTriple {
        SignTriple(v.map(Sign::from_value))
    }
}

impl fmt::Display for SignTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

pub const X_TRIPLE: SignTriple = SignTriple([Sign::Plus, Sign::Plus, Sign::Plus]);
pub const Y_TRIPLE: SignTriple = SignTriple([Sign::Plus, Sign::Minus, Sign::Plus]);
pub const Z_TRIPLE: SignTriple = SignTriple([Sign::Minus, Sign::Plus, Sign::Minus]);
pub const W_TRIPLE: SignTriple = SignTriple([Sign::Plus, Sign::Minus, Sign::Minus]);

/// 1-based column triples in minor order.
pub const MINOR_TRIPLES: [[usize; 3]; 4] = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

/// 1-based column pairs in Ω-minor order.
pub const OMEGA_PAIRS: [[usize; 2]; 3] = [[1, 2], [1, 3], [2, 3]];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaMatrix {
    rows: [[BigInt; 4]; 3],
}

impl ThetaMatrix {
    pub fn new(rows: [[BigInt; 4]; 3]) -> Self {
        ThetaMatrix { rows }
    }

    pub fn from_i64(rows: [[i64; 4]; 3]) -> Self {
        ThetaMatrix::new(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn rows(&self) -> &[[BigInt; 4]; 3] {
        &self.rows
    }

    /// Column `α` (1-based) as `(p_α, q_α, l_α)`.
    pub fn column(&self, alpha: usize) -> [BigInt; 3] {
        std::array::from_fn(|r| self.rows[r][alpha - 1].clone())
    }

    /// Entries as `f64`; only for the numerical modules.
    pub fn to_f64(&self) -> [[f64; 4]; 3] {
        self.rows.clone().map(|r| r.map(|v| bigint_f64(&v)))
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, self.rows.iter().map(|r| r.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaMatrix {
    rows: [[BigInt; 3]; 2],
}

impl OmegaMatrix {
    pub fn new(rows: [[BigInt; 3]; 2]) -> Self {
        OmegaMatrix { rows }
    }

    pub fn from_i64(rows: [[i64; 3]; 2]) -> Self {
        OmegaMatrix::new(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 2] {
        &self.rows
    }

    pub fn column(&self, alpha: usize) -> [BigInt; 2] {
        std::array::from_fn(|r| self.rows[r][alpha - 1].clone())
    }

    pub fn to_f64(&self) -> [[f64; 3]; 2] {
        self.rows.clone().map(|r| r.map(|v| bigint_f64(&v)))
    }
}

impl fmt::Display for OmegaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, self.rows.iter().map(|r| r.as_slice()))
    }
}

fn fmt_rows<'a>(f: &mut fmt::Formatter<'_>, rows: impl Iterator<Item = &'a [BigInt]>) -> fmt::Result {
    let rendered: Vec<String> = rows
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    f.write_str(&rendered.join("; "))
}

pub(crate) fn bigint_f64(v: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorSetTheta {
    pub d123: BigInt,
    pub d124: BigInt,
    pub d134: BigInt,
    pub d234: BigInt,
}

impl MinorSetTheta {
    pub fn from_i64(v: [i64; 4]) -> Self {
        MinorSetTheta::from_array(v.map(BigInt::from))
    }

    pub fn from_array([d123, d124, d134, d234]: [BigInt; 4]) -> Self {
        MinorSetTheta { d123, d124, d134, d234 }
    }

    pub fn as_array(&self) -> [BigInt; 4] {
        [self.d123.clone(), self.d124.clone(), self.d134.clone(), self.d234.clone()]
    }

    /// Minor of the (sorted, 1-based) triple.
    pub fn get(&self, triple: [usize; 3]) -> &BigInt {
        match triple {
            [1, 2, 3] => &self.d123,
            [1, 2, 4] => &self.d124,
            [1, 3, 4] => &self.d134,
            [2, 3, 4] => &self.d234,
            _ => panic!("not a sorted column triple: {triple:?}"),
        }
    }

    /// Minor of the triple complementary to column `alpha`.
    pub fn omitting(&self, alpha: usize) -> &BigInt {
        match alpha {
            1 => &self.d234,
            2 => &self.d134,
            3 => &self.d124,
            4 => &self.d123,
            _ => panic!("column index out of range: {alpha}"),
        }
    }
}

impl fmt::Display for MinorSetTheta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d123, self.d124, self.d134, self.d234)
    }
}

/// The eight box determinants, indexed by [`SignTriple`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxSet {
    values: [BigInt; 8],
}

impl BoxSet {
    pub fn get(&self, s: SignTriple) -> &BigInt {
        &self.values[s.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SignTriple, &BigInt)> {
        SignTriple::all().into_iter().map(move |s| (s, self.get(s)))
    }

    /// `(X, Y, Z, W)` per the dictionary in the module docs.
    pub fn designated(&self) -> [BigInt; 4] {
        [X_TRIPLE, Y_TRIPLE, Z_TRIPLE, W_TRIPLE].map(|s| self.get(s).clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSetOmega {
    pub d12: BigInt,
    pub d13: BigInt,
    pub d23: BigInt,
}

impl MinorSetOmega {
    pub fn from_i64([d12, d13, d23]: [i64; 3]) -> Self {
        MinorSetOmega { d12: d12.into(), d13: d13.into(), d23: d23.into() }
    }

    pub fn as_array(&self) -> [BigInt; 3] {
        [self.d12.clone(), self.d13.clone(), self.d23.clone()]
    }

    pub fn get(&self, pair: [usize; 2]) -> &BigInt {
        match pair {
            [1, 2] => &self.d12,
            [1, 3] => &self.d13,
            [2, 3] => &self.d23,
            _ => panic!("not a sorted column pair: {pair:?}"),
        }
    }
}

impl fmt::Display for MinorSetOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.d12, self.d13, self.d23)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    #[error("parity: {0} is odd, the boxes do not come from an integer matrix")]
    Parity(&'static str),
}

pub fn minors_theta(t: &ThetaMatrix) -> MinorSetTheta {
    let d = |[a, b, c]: [usize; 3]| {
        let (ca, cb, cc) = (t.column(a), t.column(b), t.column(c));
        det3(&std::array::from_fn(|r| [ca[r].clone(), cb[r].clone(), cc[r].clone()]))
    };
    MinorSetTheta::from_array(MINOR_TRIPLES.map(d))
}

/// Boxes computed directly from the sign-combined rows.
pub fn boxes(t: &ThetaMatrix) -> BoxSet {
    let c1 = t.column(1);
    let values = SignTriple::all().map(|s| {
        let rows: [[BigInt; 3]; 3] = std::array::from_fn(|k| {
            let ck = t.column(k + 2);
            let sk = BigInt::from(s.0[k].value());
            std::array::from_fn(|r| &c1[r] + &sk * &ck[r])
        });
        det3(&rows)
    });
    BoxSet { values }
}

/// Boxes as signed sums of the minors.
pub fn boxes_via_minors(m: &MinorSetTheta) -> BoxSet {
    let values = SignTriple::all().map(|s| {
        let [s2, s3, s4] = s.values().map(BigInt::from);
        &s2 * &s3 * &m.d123 - &s2 * &s4 * &m.d124 + &s3 * &s4 * &m.d134 + &s2 * &s3 * &s4 * &m.d234
    });
    BoxSet { values }
}

/// Inverts the designated boxes `(X, Y, Z, W)` back to the minors.
pub fn minors_via_boxes(x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) -> Result<MinorSetTheta, WeightsError> {
    let half = |v: BigInt, what: &'static str| {
        let (q, r) = v.div_rem(&BigInt::from(2));
        if r.is_zero() {
            Ok(q)
        } else {
            Err(WeightsError::Parity(what))
        }
    };
    Ok(MinorSetTheta {
        d123: half(-(y + w), "Y+W")?,
        d124: half(-(x + y), "X+Y")?,
        d134: half(x + y - z + w, "X+Y-Z+W")?,
        d234: half(z - y, "Z-Y")?,
    })
}

/// First vanishing determinant found by the local-freeness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    Minor([usize; 3]),
    Box(SignTriple),
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vanishing::Minor([a, b, c]) => write!(f, "minor Δ{a}{b}{c} = 0"),
            Vanishing::Box(s) => write!(f, "box {s} = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFreeness {
    pub locally_free: bool,
    pub witness: Option<Vanishing>,
}

/// Locally free iff every minor and every box is nonzero.
pub fn is_locally_free_theta(t: &ThetaMatrix) -> LocalFreeness {
    let m = minors_theta(t);
    let b = boxes(t);
    let witness = MINOR_TRIPLES
        .into_iter()
        .find(|&tr| m.get(tr).is_zero())
        .map(Vanishing::Minor)
        .or_else(|| b.iter().find(|(_, v)| v.is_zero()).map(|(s, _)| Vanishing::Box(s)));
    LocalFreeness { locally_free: witness.is_none(), witness }
}

/// A violated condition of the minor-only admissibility phrasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorCondition {
    /// `Δ_{triple} = 0`.
    Vanishes([usize; 3]),
    /// The four minors sum to zero.
    SumVanishes,
    /// `Δ_{triple}` equals the sum of the other three.
    EqualsSumOfOthers([usize; 3]),
    /// `Δ_a + Δ_b = Δ_c + Δ_d` for the two named pairs.
    PairSumsAgree([[usize; 3]; 2], [[usize; 3]; 2]),
}

impl fmt::Display for MinorCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |t: &[usize; 3]| format!("Δ{}{}{}", t[0], t[1], t[2]);
        match self {
            MinorCondition::Vanishes(t) => write!(f, "{} = 0, every minor must be nonzero", n(t)),
            MinorCondition::SumVanishes => f.write_str("the four minors sum to 0"),
            MinorCondition::EqualsSumOfOthers(t) => {
                write!(f, "{} equals the sum of the other three minors", n(t))
            }
            MinorCondition::PairSumsAgree([a, b], [c, d]) => {
                write!(f, "{} + {} = {} + {}", n(a), n(b), n(c), n(d))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub failing: Option<MinorCondition>,
}

/// Admissibility stated purely in terms of the minors.
///
/// Each condition after the first is the non-vanishing of one box, so the
/// verdict always agrees with [`is_locally_free_theta`].
pub fn theorem_a_admissible(t: &ThetaMatrix) -> Admissibility {
    admissible_from_minors(&minors_theta(t))
}

pub fn admissible_from_minors(m: &MinorSetTheta) -> Admissibility {
    let d = m.as_array();
    let total: BigInt = d.iter().sum();
    let mut failing = MINOR_TRIPLES
        .into_iter()
        .zip(&d)
        .find(|(_, v)| v.is_zero())
        .map(|(t, _)| MinorCondition::Vanishes(t));
    if failing.is_none() && total.is_zero() {
        failing = Some(MinorCondition::SumVanishes);
    }
    if failing.is_none() {
        failing = (0..4)
            .find(|&i| BigInt::from(2) * &d[i] == total)
            .map(|i| MinorCondition::EqualsSumOfOthers(MINOR_TRIPLES[i]));
    }
    if failing.is_none() {
        const SPLITS: [([usize; 2], [usize; 2]); 3] = [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];
        failing = SPLITS
            .into_iter()
            .find(|([a, b], [c, e])| &d[*a] + &d[*b] == &d[*c] + &d[*e])
            .map(|([a, b], [c, e])| {
                MinorCondition::PairSumsAgree(
                    [MINOR_TRIPLES[a], MINOR_TRIPLES[b]],
                    [MINOR_TRIPLES[c], MINOR_TRIPLES[e]],
                )
            });
    }
    Admissibility { admissible: failing.is_none(), failing }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearMiss {
    pub minors: MinorSetTheta,
    /// Recomputed boxes whose absolute value is not 1.
    pub violated: Vec<(SignTriple, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub assignments: usize,
    pub parity_failures: usize,
    /// Self-consistent assignments that have a vanishing minor.
    pub consistent_with_zero_minor: usize,
    /// Self-consistent assignments with every minor nonzero. Must be empty.
    pub counterexamples: Vec<MinorSetTheta>,
    pub near_misses: Vec<NearMiss>,
}

impl ObstructionReport {
    pub fn unsat(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Exhaustive check that no locally free Θ has all eight boxes equal to ±1.
///
/// Each of the 256 sign assignments to the boxes is inverted to candidate
/// minors through the designated four, and the eight boxes are recomputed
/// from those minors. An assignment survives only if the recomputation
/// reproduces it and every minor is nonzero.
pub fn freeness_obstruction() -> ObstructionReport {
    let mut report = ObstructionReport {
        assignments: 0,
        parity_failures: 0,
        consistent_with_zero_minor: 0,
        counterexamples: Vec::new(),
        near_misses: Vec::new(),
    };
    for bits in 0u32..256 {
        report.assignments += 1;
        let assigned: [BigInt; 8] =
            std::array::from_fn(|k| if bits >> k & 1 == 0 { BigInt::one() } else { -BigInt::one() });
        let pick = |s: SignTriple| assigned[s.index()].clone();
        let (x, y, z, w) = (pick(X_TRIPLE), pick(Y_TRIPLE), pick(Z_TRIPLE), pick(W_TRIPLE));
        let Ok(minors) = minors_via_boxes(&x, &y, &z, &w) else {
            report.parity_failures += 1;
            continue;
        };
        let all_nonzero = minors.as_array().iter().all(|v| !v.is_zero());
        let recomputed = boxes_via_minors(&minors);
        let consistent = SignTriple::all().into_iter().all(|s| *recomputed.get(s) == pick(s));
        if consistent {
            if all_nonzero {
                report.counterexamples.push(minors.clone());
            } else {
                report.consistent_with_zero_minor += 1;
            }
        }
        if all_nonzero && !report.near_misses.iter().any(|n| n.minors == minors) {
            let violated = recomputed
                .iter()
                .filter(|(_, v)| v.abs() != BigInt::one())
                .map(|(s, v)| (s, v.clone()))
                .collect();
            report.near_misses.push(NearMiss { minors, violated });
        }
    }
    report.near_misses.sort_by(|a, b| b.minors.as_array().cmp(&a.minors.as_array()));
    report
}

pub fn minors_omega(o: &OmegaMatrix) -> MinorSetOmega {
    let d = |[a, b]: [usize; 2]| {
        let (ca, cb) = (o.column(a), o.column(b));
        det2(&[[ca[0].clone(), cb[0].clone()], [ca[1].clone(), cb[1].clone()]])
    };
    let [d12, d13, d23] = OMEGA_PAIRS.map(d);
    MinorSetOmega { d12, d13, d23 }
}

pub fn is_locally_free_omega(o: &OmegaMatrix) -> bool {
    omega_locally_free_from_minors(&minors_omega(o))
}

/// Free on the stratum with `u₁ ≠ 0`: locally free and the minors coprime.
pub fn is_free_omega(o: &OmegaMatrix) -> bool {
    omega_free_from_minors(&minors_omega(o))
}

pub fn omega_locally_free_from_minors(m: &MinorSetOmega) -> bool {
    m.as_array().iter().all(|v| !v.is_zero())
}

pub fn omega_free_from_minors(m: &MinorSetOmega) -> bool {
    omega_locally_free_from_minors(m) && gcd_list(&m.as_array()).is_one()
}

/// The two reference matrices used throughout the docs and tests.
pub mod fixtures {
    use super::{OmegaMatrix, ThetaMatrix};

    pub fn theta1() -> ThetaMatrix {
        ThetaMatrix::from_i64([[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 0, 1]])
    }

    pub fn theta2() -> ThetaMatrix {
        ThetaMatrix::from_i64([[9, 2, 7, 1], [40, 9, 31, 0], [1, 2, 0, 1]])
    }

    /// Minors `(1, 1, -1)`.
    pub fn omega_unit() -> OmegaMatrix {
        OmegaMatrix::from_i64([[1, 0, 1], [0, 1, 1]])
    }

    /// Minors `(2, 3, 5)`.
    pub fn omega_wide() -> OmegaMatrix {
        OmegaMatrix::from_i64([[1, 3, 2], [0, 2, 3]])
    }

    /// Minors `(2, 3, 7)`: no signed sum `±Δ₁₂ ± Δ₁₃ ± Δ₂₃` vanishes.
    pub fn omega_generic() -> OmegaMatrix {
        OmegaMatrix::from_i64([[1, 3, 1], [0, 2, 3]])
    }

    /// Minors `(-4, 1, -1, -1)`: one minor outweighs the other three.
    pub fn theta_dominant() -> ThetaMatrix {
        ThetaMatrix::from_i64([[1, 0, 1, 0], [1, 1, 0, 0], [2, 0, -2, 1]])
    }
}
