//! Cyclic covers `z^m = prod (x - tau_i)^{a_i}` of the projective line and
//! their eigen-differentials `h(x) z dx`.

mod differential;
mod solve;

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::ff::{Embedding, Field, FieldElement};
use crate::poly::{product_of_linear_powers, Polynomial};

pub use differential::{divisor_of, Divisor, DivisorTerm, EigenDifferential, Place};
pub use solve::{coordinates, divisor_matches, eigen_basis, eigen_with_divisor, regular_space};

/// A branch point on the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchPoint {
    Finite(FieldElement),
    Infinity,
}

impl BranchPoint {
    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            BranchPoint::Finite(x) => Some(x),
            BranchPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BranchPoint::Infinity)
    }

    pub fn frobenius_pow(&self, k: i64) -> BranchPoint {
        match self {
            BranchPoint::Finite(x) => BranchPoint::Finite(x.frobenius_pow(k)),
            BranchPoint::Infinity => BranchPoint::Infinity,
        }
    }

    pub(crate) fn map_embedding(&self, e: &Embedding) -> BranchPoint {
        match self {
            BranchPoint::Finite(x) => BranchPoint::Finite(e.apply(x)),
            BranchPoint::Infinity => BranchPoint::Infinity,
        }
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchPoint::Finite(x) => write!(f, "{x}"),
            BranchPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// The `m`-cyclic cover branched at `points` with exponents `a`. The
/// exponent of a point at infinity only enters through `sum a_i = 0 mod m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverType {
    field: Field,
    m: u64,
    points: Vec<BranchPoint>,
    a: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeIssue {
    TooFewBranchPoints { r: usize },
    LengthMismatch { points: usize, exponents: usize },
    OrderTooSmall { m: u64 },
    OrderNotDividingPMinusOne { m: u64, p: u64 },
    ExponentOutOfRange { index: usize, a: u64 },
    ExponentSumNotDivisible { sum: u64 },
    DuplicateBranchPoint { first: usize, second: usize },
    ForeignField { index: usize },
}

impl fmt::Display for TypeIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeIssue::TooFewBranchPoints { r } => write!(f, "need at least 3 branch points, got {r}"),
            TypeIssue::LengthMismatch { points, exponents } => {
                write!(f, "{points} branch points but {exponents} exponents")
            }
            TypeIssue::OrderTooSmall { m } => write!(f, "cyclic order m = {m} must exceed 1"),
            TypeIssue::OrderNotDividingPMinusOne { m, p } => write!(f, "m = {m} does not divide p - 1 = {}", p - 1),
            TypeIssue::ExponentOutOfRange { index, a } => {
                write!(f, "exponent a_{} = {a} is not strictly between 0 and m", index + 1)
            }
            TypeIssue::ExponentSumNotDivisible { sum } => write!(f, "exponent sum {sum} is not divisible by m"),
            TypeIssue::DuplicateBranchPoint { first, second } => {
                write!(f, "branch points {} and {} coincide", first + 1, second + 1)
            }
            TypeIssue::ForeignField { index } => {
                write!(f, "branch point {} lies in a different field", index + 1)
            }
        }
    }
}

/// Itemized result of [`validate_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub issues: Vec<TypeIssue>,
    /// `sum a_i = m` exactly.
    pub multiplicative: bool,
    /// `d = gcd(m, a_1, ..., a_r)`; the cover is connected iff `d = 1`.
    pub connectedness: u64,
}

impl TypeReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.connectedness == 1
    }
}

/// Ramification data over one branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamEntry {
    /// `m_i = m / gcd(a_i, m)`.
    pub ramification: u64,
    /// `a_i / gcd(a_i, m)`.
    pub reduced_exponent: u64,
    /// Number of points over the branch point, `m / m_i`.
    pub fiber_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    InvalidType(Vec<TypeIssue>),
    NotMultiplicative,
    Disconnected { d: u64 },
    /// Lengths of per-point data disagree with the number of branch points.
    WrongArity { expected: usize, found: usize },
    /// The requested orders cannot be the divisor of a differential.
    DegreeMismatch { expected: i64, found: i64 },
    /// More than one independent differential has the requested divisor.
    NotUnique { dimension: usize },
    /// The eigenspace of regular differentials has the wrong dimension.
    DimensionMismatch { expected: usize, found: usize },
    ZeroDifferential,
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::InvalidType(issues) => {
                f.write_str("invalid cover type:")?;
                for i in issues {
                    write!(f, " {i};")?;
                }
                Ok(())
            }
            CoverError::NotMultiplicative => f.write_str("cover type is not multiplicative"),
            CoverError::Disconnected { d } => write!(f, "cover is disconnected (d = {d})"),
            CoverError::WrongArity { expected, found } => write!(f, "expected {expected} entries, found {found}"),
            CoverError::DegreeMismatch { expected, found } => {
                write!(f, "requested divisor has degree {found}, canonical degree is {expected}")
            }
            CoverError::NotUnique { dimension } => {
                write!(f, "differential with this divisor is not unique (dimension {dimension})")
            }
            CoverError::DimensionMismatch { expected, found } => {
                write!(f, "eigenspace dimension {found}, expected {expected}")
            }
            CoverError::ZeroDifferential => f.write_str("zero differential has no divisor"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoverError {}

impl CoverType {
    /// Unchecked constructor; see [`validate_type`].
    pub fn new(field: &Field, m: u64, points: Vec<BranchPoint>, a: Vec<u64>) -> Self {
        CoverType { field: field.clone(), m, points, a }
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[BranchPoint] {
        &self.points
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    /// `(p - 1) / m`.
    pub fn alpha(&self) -> u64 {
        (self.p() - 1) / self.m
    }

    pub fn infinity_index(&self) -> Option<usize> {
        self.points.iter().position(BranchPoint::is_infinity)
    }

    /// `(index, tau_i)` for the finite branch points.
    pub fn finite_points(&self) -> Vec<(usize, FieldElement)> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.finite().map(|x| (i, x.clone())))
            .collect()
    }

    /// Sum of the exponents of the finite branch points.
    pub fn finite_exponent_sum(&self) -> u64 {
        self.points.iter().zip(&self.a).filter(|(b, _)| !b.is_infinity()).map(|(_, a)| a).sum()
    }

    pub fn exponent_sum(&self) -> u64 {
        self.a.iter().sum()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.exponent_sum() == self.m
    }

    pub fn connectedness(&self) -> u64 {
        self.a.iter().fold(self.m, |g, &a| g.gcd(&a))
    }

    /// The connected `(m/d)`-cyclic cover of type `(a_i / d)`.
    pub fn connected_model(&self) -> CoverType {
        let d = self.connectedness();
        if d <= 1 {
            return self.clone();
        }
        CoverType {
            field: self.field.clone(),
            m: self.m / d,
            points: self.points.clone(),
            a: self.a.iter().map(|a| a / d).collect(),
        }
    }

    /// The same cover over an extension field.
    pub fn embed(&self, target: &Field) -> CoverType {
        if self.field == *target {
            return self.clone();
        }
        let e = Embedding::new(&self.field, target).expect("compatible fields");
        self.map_embedding(&e)
    }

    pub(crate) fn map_embedding(&self, e: &Embedding) -> CoverType {
        CoverType {
            field: e.target().clone(),
            m: self.m,
            points: self.points.iter().map(|b| b.map_embedding(e)).collect(),
            a: self.a.clone(),
        }
    }

    /// Branch points moved by `x -> x^{p^k}`.
    pub fn frobenius_pow(&self, k: i64) -> CoverType {
        CoverType {
            field: self.field.clone(),
            m: self.m,
            points: self.points.iter().map(|b| b.frobenius_pow(k)).collect(),
            a: self.a.clone(),
        }
    }

    /// `prod over finite branch points of (x - tau_i)^{a_i}`.
    pub fn defining_polynomial(&self) -> Polynomial {
        let (pts, exps): (Vec<FieldElement>, Vec<u64>) =
            self.finite_points().into_iter().map(|(i, t)| (t, self.a[i])).unzip();
        product_of_linear_powers(&self.field, &pts, &exps)
    }

    pub(crate) fn require_valid(&self) -> Result<TypeReport, CoverError> {
        let rep = validate_type(self);
        if rep.is_valid() {
            Ok(rep)
        } else {
            Err(CoverError::InvalidType(rep.issues))
        }
    }

    pub(crate) fn require_multiplicative_connected(&self) -> Result<(), CoverError> {
        let rep = self.require_valid()?;
        if !rep.multiplicative {
            return Err(CoverError::NotMultiplicative);
        }
        if !rep.is_connected() {
            return Err(CoverError::Disconnected { d: rep.connectedness });
        }
        Ok(())
    }
}

impl fmt::Display for CoverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} over {}: ", self.m, self.field)?;
        for (i, (b, a)) in self.points.iter().zip(&self.a).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}^{a}")?;
        }
        Ok(())
    }
}

/// Checks every cover-type constraint and reports each violation.
pub fn validate_type(t: &CoverType) -> TypeReport {
    let mut issues = Vec::new();
    let r = t.points.len();
    if r < 3 {
        issues.push(TypeIssue::TooFewBranchPoints { r });
    }
    if t.a.len() != r {
        issues.push(TypeIssue::LengthMismatch { points: r, exponents: t.a.len() });
    }
    let p = t.p();
    if t.m < 2 {
        issues.push(TypeIssue::OrderTooSmall { m: t.m });
    } else if (p - 1) % t.m != 0 {
        issues.push(TypeIssue::OrderNotDividingPMinusOne { m: t.m, p });
    }
    for (index, &a) in t.a.iter().enumerate() {
        if a == 0 || a >= t.m {
            issues.push(TypeIssue::ExponentOutOfRange { index, a });
        }
    }
    let sum = t.exponent_sum();
    if t.m > 0 && sum % t.m != 0 {
        issues.push(TypeIssue::ExponentSumNotDivisible { sum });
    }
    for (i, b) in t.points.iter().enumerate() {
        if let BranchPoint::Finite(x) = b {
            if x.field() != &t.field {
                issues.push(TypeIssue::ForeignField { index: i });
            }
        }
        for j in 0..i {
            if t.points[j] == *b {
                issues.push(TypeIssue::DuplicateBranchPoint { first: j, second: i });
            }
        }
    }
    TypeReport {
        issues,
        multiplicative: t.m > 0 && sum == t.m,
        connectedness: t.connectedness(),
    }
}

/// Per-point ramification data `(m_i, a~_i, m / m_i)`.
pub fn ram_data(t: &CoverType) -> Vec<RamEntry> {
    t.a.iter().map(|&a| ram_entry(t.m, a)).collect()
}

pub(crate) fn ram_entry(m: u64, a: u64) -> RamEntry {
    let g = a.gcd(&m);
    RamEntry { ramification: m / g, reduced_exponent: a / g, fiber_size: g }
}

/// `2g - 2` of the connected model, by Riemann-Hurwitz.
pub fn euler_characteristic(t: &CoverType) -> i64 {
    let c = t.connected_model();
    let m = c.m as i64;
    let branch: i64 = ram_data(&c).iter().map(|e| (e.fiber_size * (e.ramification - 1)) as i64).sum();
    -2 * m + branch
}

/// Genus of (a component of) the cover.
pub fn genus(t: &CoverType) -> u64 {
    let chi = euler_characteristic(t);
    debug_assert!(chi >= -2 && chi % 2 == 0);
    ((chi + 2) / 2) as u64
}
