//! Special degeneration data: an `m`-cyclic cover of the line together with
//! a Cartier-fixed eigen-differential whose divisor is prescribed by `nu`.

mod equiv;
mod search;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cartier::cartier_apply;
use crate::cover::{divisor_matches, eigen_with_divisor, validate_type, BranchPoint, CoverError, CoverType, EigenDifferential};
use crate::ff::{field_make, kth_root, kth_root_degree, Field, FieldElement, FieldError};
use crate::poly::{binom_mod_p, factor, is_squarefree, product_of_linear_powers, Polynomial};

pub use equiv::{canonical_key, equivalent, normalized_lambda, Mobius, R4Key};
pub use search::{search_bruteforce, SEARCH_LIMIT};

/// How the Cartier-fixed form is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// The stored differential is itself fixed by `C`.
    Fixed,
    /// The fixed form is `mu * omega` with `mu^{p-1} = radicand`; `mu` lives
    /// in an extension too large to build, so `omega` is stored unscaled.
    Radical { radicand: FieldElement },
}

/// Normal form `(0, 1, lambda, inf)` with the `nu = 1` point at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R4Normalization {
    pub lambda: FieldElement,
    /// Indices of the datum's branch points sent to `0, 1, lambda, inf`.
    pub ordering: [usize; 4],
    pub alpha: u64,
    /// `m - a_i` for the three finite points.
    pub a_prime: [u64; 3],
    /// Coefficient of `x^{2p-2}` in `f^alpha`; `mu^{p-1}` equals it.
    pub radicand: FieldElement,
    pub mu: Option<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialDegenerationDatum {
    pub cover: CoverType,
    pub nu: Vec<i64>,
    pub omega: EigenDifferential,
    pub scaling: Scaling,
    pub r4: Option<R4Normalization>,
}

impl SpecialDegenerationDatum {
    pub fn p(&self) -> u64 {
        self.cover.p()
    }

    pub fn m(&self) -> u64 {
        self.cover.m()
    }

    pub fn r(&self) -> usize {
        self.cover.r()
    }

    pub fn field(&self) -> &Field {
        self.cover.field()
    }

    /// `mu^{p-1}` for the scalar still to be applied to `omega` (1 if fixed).
    pub fn pending_radicand(&self) -> FieldElement {
        match &self.scaling {
            Scaling::Fixed => self.field().one(),
            Scaling::Radical { radicand } => radicand.clone(),
        }
    }

    /// The stored form times `t`. For `t` in `F_p^x` this is again a datum.
    pub fn scaled(&self, t: &FieldElement) -> Self {
        let mut d = self.clone();
        d.omega = self.omega.scale(t);
        d
    }

    /// The datum over an extension field.
    pub fn embed(&self, target: &Field) -> Self {
        let e = |x: &FieldElement| crate::ff::embed(x, target).expect("compatible fields");
        SpecialDegenerationDatum {
            cover: self.cover.embed(target),
            nu: self.nu.clone(),
            omega: self.omega.embed(target),
            scaling: match &self.scaling {
                Scaling::Fixed => Scaling::Fixed,
                Scaling::Radical { radicand } => Scaling::Radical { radicand: e(radicand) },
            },
            r4: self.r4.clone(),
        }
    }

    /// Conjugate under `x -> x^{p^k}`.
    pub fn frobenius_pow(&self, k: i64) -> Self {
        SpecialDegenerationDatum {
            cover: self.cover.frobenius_pow(k),
            nu: self.nu.clone(),
            omega: self.omega.frobenius_pow(k),
            scaling: match &self.scaling {
                Scaling::Fixed => Scaling::Fixed,
                Scaling::Radical { radicand } => Scaling::Radical { radicand: radicand.frobenius_pow(k) },
            },
            r4: self.r4.as_ref().map(|n| R4Normalization {
                lambda: n.lambda.frobenius_pow(k),
                ordering: n.ordering,
                alpha: n.alpha,
                a_prime: n.a_prime,
                radicand: n.radicand.frobenius_pow(k),
                mu: n.mu.as_ref().map(|u| u.frobenius_pow(k)),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// The cover data is a valid type.
    CoverType,
    /// `sum a_i = m`.
    Multiplicative,
    /// One `nu_i` per branch point, each in `{0, 1}`.
    NuValues,
    /// `sum nu_i = r - 3`.
    NuSum,
    /// The differential lives on the datum's cover.
    SameCover,
    /// Orders `m_i nu_i + a~_i - 1` over the branch points and nothing else.
    Divisor,
    /// `C(omega_0) = omega_0`.
    CartierFixed,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::CoverType => "cover type valid",
            CheckKind::Multiplicative => "multiplicative (sum a = m)",
            CheckKind::NuValues => "nu in {0,1}",
            CheckKind::NuSum => "sum nu = r - 3",
            CheckKind::SameCover => "differential on the datum cover",
            CheckKind::Divisor => "divisor m_i nu_i + a~_i - 1",
            CheckKind::CartierFixed => "Cartier fixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self, kind: CheckKind) -> bool {
        self.checks.iter().filter(|c| c.kind == kind).all(|c| c.passed)
    }
}

/// Runs every check; no check is skipped because another failed, except
/// that checks needing a well-formed `nu` report that as their failure.
pub fn validate(d: &SpecialDegenerationDatum) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |kind, passed: bool, detail: String| checks.push(Check { kind, passed, detail });
    let rep = validate_type(&d.cover);
    let issues: Vec<String> = rep.issues.iter().map(|i| format!("{i}")).collect();
    push(CheckKind::CoverType, rep.is_valid(), issues.join("; "));
    push(
        CheckKind::Multiplicative,
        d.cover.is_multiplicative(),
        format!("sum a = {}, m = {}", d.cover.exponent_sum(), d.m()),
    );
    let r = d.r();
    let arity_ok = d.nu.len() == r;
    let bad: Vec<String> = d
        .nu
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0 && v != 1)
        .map(|(i, v)| format!("nu_{} = {v}", i + 1))
        .collect();
    let detail = if arity_ok { bad.join(", ") } else { format!("{} values for {r} branch points", d.nu.len()) };
    push(CheckKind::NuValues, arity_ok && bad.is_empty(), detail);
    let sum: i64 = d.nu.iter().sum();
    push(CheckKind::NuSum, sum == r as i64 - 3, format!("sum = {sum}, r - 3 = {}", r as i64 - 3));
    let same = *d.omega.cover() == d.cover;
    push(CheckKind::SameCover, same, String::new());
    let div = if !arity_ok {
        (false, String::from("nu has the wrong length"))
    } else if !rep.is_valid() {
        (false, String::from("cover type invalid"))
    } else {
        match divisor_matches(&d.omega, &d.nu) {
            Ok(ok) => (ok, String::new()),
            Err(e) => (false, format!("{e}")),
        }
    };
    push(CheckKind::Divisor, div.0, div.1);
    let fixed = if rep.is_valid() { cartier_fixed(d) } else { (false, String::from("cover type invalid")) };
    push(CheckKind::CartierFixed, fixed.0, fixed.1);
    ValidationReport { checks }
}

fn cartier_fixed(d: &SpecialDegenerationDatum) -> (bool, String) {
    if d.omega.is_zero() {
        return (false, String::from("zero differential"));
    }
    if !d.cover.is_multiplicative() || d.m() < 2 || (d.p() - 1) % d.m() != 0 {
        return (false, String::from("Cartier operator needs m | p - 1"));
    }
    let image = cartier_apply(&d.omega);
    match &d.scaling {
        Scaling::Fixed => (image == d.omega, String::new()),
        Scaling::Radical { radicand } => {
            // C(mu w) = mu^{1/p} C(w) = mu w  iff  C(w) = (mu^{p-1})^{1/p} w
            if radicand.is_zero() {
                return (false, String::from("zero radicand"));
            }
            let ok = image == d.omega.scale(&radicand.frobenius_inverse());
            (ok, String::from("checked through the radicand of mu"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegenError {
    Field(FieldError),
    Cover(CoverError),
    Inadmissible(String),
    /// `c_{p-2} != 0`: the given lambda does not give a datum.
    NotARoot,
    /// `c_{2p-2} = 0`, impossible for an actual root.
    VanishingRadicand,
    /// A structural property of the classifying polynomial failed.
    LemmaViolation(&'static str),
    /// A constructed datum failed validation.
    InvalidDatum { lambda: FieldElement, failures: Vec<CheckKind> },
    /// Data with different `(p, m)` or arity compared.
    Incomparable,
    NotR4,
    SearchTooLarge { candidates: u128, limit: u128 },
}

impl fmt::Display for DegenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenError::Field(e) => write!(f, "{e}"),
            DegenError::Cover(e) => write!(f, "{e}"),
            DegenError::Inadmissible(s) => write!(f, "inadmissible input: {s}"),
            DegenError::NotARoot => f.write_str("lambda is not a root: c_{p-2} != 0"),
            DegenError::VanishingRadicand => f.write_str("c_{2p-2} vanishes"),
            DegenError::LemmaViolation(s) => write!(f, "classifying polynomial: {s}"),
            DegenError::InvalidDatum { lambda, failures } => {
                write!(f, "datum at lambda = {lambda} failed {} checks", failures.len())
            }
            DegenError::Incomparable => f.write_str("data over different (p, m) or arity"),
            DegenError::NotR4 => f.write_str("operation needs four branch points"),
            DegenError::SearchTooLarge { candidates, limit } => {
                write!(f, "sweep of {candidates} candidates exceeds the limit {limit}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DegenError {}

impl From<FieldError> for DegenError {
    fn from(e: FieldError) -> Self {
        DegenError::Field(e)
    }
}

impl From<CoverError> for DegenError {
    fn from(e: CoverError) -> Self {
        DegenError::Cover(e)
    }
}

/// Checks `m | p-1`, `m > 1`, `0 < a_i < m`, `sum a_i = m`, arity.
pub fn check_admissible(p: u64, m: u64, a: &[u64], arity: Option<usize>) -> Result<(), DegenError> {
    field_make(p, 1)?;
    if m < 2 || (p - 1) % m != 0 {
        return Err(DegenError::Inadmissible(format!("m = {m} does not divide p - 1 = {}", p - 1)));
    }
    if let Some(r) = arity {
        if a.len() != r {
            return Err(DegenError::Inadmissible(format!("expected {r} exponents, got {}", a.len())));
        }
    }
    if a.len() < 3 {
        return Err(DegenError::Inadmissible(format!("{} branch points, need at least 3", a.len())));
    }
    if let Some((i, v)) = a.iter().enumerate().find(|(_, &v)| v == 0 || v >= m) {
        return Err(DegenError::Inadmissible(format!("a_{} = {v} is not in (0, {m})", i + 1)));
    }
    let s: u64 = a.iter().sum();
    if s != m {
        return Err(DegenError::Inadmissible(format!("sum a = {s} differs from m = {m}")));
    }
    Ok(())
}

/// Checks `nu` in `{0,1}^r` with `sum nu = r - 3`.
pub fn check_nu(nu: &[i64], r: usize) -> Result<(), DegenError> {
    if nu.len() != r {
        return Err(DegenError::Inadmissible(format!("expected {r} nu values, got {}", nu.len())));
    }
    if let Some((i, v)) = nu.iter().enumerate().find(|(_, &v)| v != 0 && v != 1) {
        return Err(DegenError::Inadmissible(format!("nu_{} = {v} is not 0 or 1", i + 1)));
    }
    let s: i64 = nu.iter().sum();
    if s != r as i64 - 3 {
        return Err(DegenError::Inadmissible(format!("sum nu = {s} differs from r - 3 = {}", r as i64 - 3)));
    }
    Ok(())
}

/// `sum_{l=0}^{N} C(alpha a_2', N - l) C(alpha a_3', l) lambda^l` over `F_p`
/// with `N = alpha a_1 - 1`, the first index carrying `nu = 1`.
///
/// The coefficient `c_{p-2}` of `x^{p-2}` in `f^alpha` equals, up to a unit,
/// `lambda^{deg} Phi(1/lambda)`: the data sit at the reciprocals of the roots.
pub fn phi_polynomial(p: u64, m: u64, a: &[u64]) -> Result<Polynomial, DegenError> {
    check_admissible(p, m, a, Some(4))?;
    let f = field_make(p, 1)?;
    let alpha = (p - 1) / m;
    let n = alpha * a[0] - 1;
    let (b2, b3) = (alpha * (m - a[1]), alpha * (m - a[2]));
    let coeffs = (0..=n).map(|l| f.from_int((binom_mod_p(b2, n - l, p) * binom_mod_p(b3, l, p) % p) as i64)).collect();
    Ok(Polynomial::new(&f, coeffs))
}

/// Expected number of data for the type: `alpha a_1 - 1`.
pub fn expected_r4_count(p: u64, m: u64, a: &[u64]) -> u64 {
    (p - 1) / m * a[0] - 1
}

/// `(c_{p-2}, c_{2p-2})` of `f^alpha`, `f = x^{a1'} (x-1)^{a2'} (x-lambda)^{a3'}`.
pub fn r4_coefficients(lambda: &FieldElement, m: u64, a: &[u64]) -> (FieldElement, FieldElement) {
    let f = lambda.field();
    let p = f.characteristic();
    let alpha = (p - 1) / m;
    let pts = [f.zero(), f.one(), lambda.clone()];
    let exps = [alpha * (m - a[0]), alpha * (m - a[1]), alpha * (m - a[2])];
    let fa = product_of_linear_powers(f, &pts, &exps);
    (fa.coeff(p as usize - 2), fa.coeff(2 * p as usize - 2))
}

/// Determines `mu` with `mu^{p-1} = c_{2p-2}`. The root is materialized
/// (least root, in the smallest extension of `lambda`'s field) when that
/// extension has degree at most `mu_cap`.
pub fn mu_normalize(lambda: &FieldElement, m: u64, a: &[u64], mu_cap: usize) -> Result<R4Normalization, DegenError> {
    let f = lambda.field();
    let p = f.characteristic();
    check_admissible(p, m, a, Some(4))?;
    if lambda.is_zero() || lambda.is_one() {
        return Err(DegenError::Inadmissible(String::from("lambda must avoid 0 and 1")));
    }
    let (c1, c2) = r4_coefficients(lambda, m, a);
    if !c1.is_zero() {
        return Err(DegenError::NotARoot);
    }
    if c2.is_zero() {
        return Err(DegenError::VanishingRadicand);
    }
    let k = kth_root_degree(&c2, p - 1)?;
    let mu = if f.degree() * k <= mu_cap { Some(kth_root(&c2, p - 1)?.0) } else { None };
    Ok(R4Normalization {
        lambda: lambda.clone(),
        ordering: [0, 1, 2, 3],
        alpha: (p - 1) / m,
        a_prime: [m - a[0], m - a[1], m - a[2]],
        radicand: c2,
        mu,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest degree over `F_p` of a `lambda` to report (`None`: all).
    pub max_root_degree: Option<usize>,
    /// Largest degree of an extension built to hold `mu`.
    pub mu_cap: usize,
    /// Build and validate every conjugate instead of one per Frobenius orbit.
    pub validate_conjugates: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_root_degree: None, mu_cap: 12, validate_conjugates: false }
    }
}

/// Structural facts about the classifying polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAudit {
    pub phi: Polynomial,
    pub degree: usize,
    pub squarefree: bool,
    pub nonzero_at_0: bool,
    pub nonzero_at_1: bool,
    /// `Phi(0) = C(alpha a_2', N)`.
    pub constant_term_matches: bool,
}

impl PhiAudit {
    pub fn is_ok(&self) -> bool {
        self.squarefree && self.nonzero_at_0 && self.nonzero_at_1 && self.constant_term_matches
    }
}

pub fn phi_audit(p: u64, m: u64, a: &[u64]) -> Result<PhiAudit, DegenError> {
    let phi = phi_polynomial(p, m, a)?;
    let f = phi.field().clone();
    let alpha = (p - 1) / m;
    let n = alpha * a[0] - 1;
    let expected0 = f.from_int(binom_mod_p(alpha * (m - a[1]), n, p) as i64);
    Ok(PhiAudit {
        degree: phi.degree().unwrap_or(0),
        squarefree: is_squarefree(&phi).expect("nonzero"),
        nonzero_at_0: !phi.eval(&f.zero()).is_zero(),
        nonzero_at_1: !phi.eval(&f.one()).is_zero(),
        constant_term_matches: phi.eval(&f.zero()) == expected0,
        phi,
    })
}

/// The data of type `(p, m, a)` with `nu = (1,0,0,0)`, one per root of the
/// classifying polynomial, sorted by `lambda`.
pub fn enumerate_r4(p: u64, m: u64, a: &[u64], options: EnumerateOptions) -> Result<Vec<SpecialDegenerationDatum>, DegenError> {
    let audit = phi_audit(p, m, a)?;
    if audit.phi.degree() != Some(((p - 1) / m * a[0] - 1) as usize) {
        return Err(DegenError::LemmaViolation("degree differs from alpha a_1 - 1"));
    }
    if !audit.squarefree {
        return Err(DegenError::LemmaViolation("not squarefree"));
    }
    if !audit.nonzero_at_0 || !audit.nonzero_at_1 {
        return Err(DegenError::LemmaViolation("vanishes at 0 or 1"));
    }
    if !audit.constant_term_matches {
        return Err(DegenError::LemmaViolation("constant term"));
    }
    let mut out = Vec::new();
    if audit.degree == 0 {
        return Ok(out);
    }
    for (g, _) in factor(&audit.phi).expect("nonzero") {
        let e = g.degree().expect("nonconstant");
        if options.max_root_degree.is_some_and(|d| e > d) {
            continue;
        }
        let big = field_make(p, e)?;
        // one root of the orbit; the others are its Frobenius images
        let rho = crate::poly::root_of_irreducible(&g, &big);
        let first = r4_datum(&rho.inv().expect("Phi(0) != 0"), m, a, options.mu_cap, true)?;
        for k in 1..e as i64 {
            let d = if options.validate_conjugates {
                r4_datum(&rho.frobenius_pow(k).inv().unwrap(), m, a, options.mu_cap, true)?
            } else {
                conjugate_r4(&first, k, m, a)?
            };
            out.push(d);
        }
        out.push(first);
    }
    out.sort_by(|x, y| x.r4.as_ref().unwrap().lambda.descend().cmp(&y.r4.as_ref().unwrap().lambda.descend()));
    Ok(out)
}

fn r4_cover(lambda: &FieldElement, m: u64, a: &[u64]) -> CoverType {
    let f = lambda.field();
    let points = vec![
        BranchPoint::Finite(f.zero()),
        BranchPoint::Finite(f.one()),
        BranchPoint::Finite(lambda.clone()),
        BranchPoint::Infinity,
    ];
    CoverType::new(f, m, points, a.to_vec())
}

/// Builds the datum at `lambda` from scratch: solve for the differential
/// with the prescribed divisor, then normalize by `mu`.
pub fn r4_datum(lambda: &FieldElement, m: u64, a: &[u64], mu_cap: usize, check: bool) -> Result<SpecialDegenerationDatum, DegenError> {
    let t = r4_cover(lambda, m, a);
    let nu = vec![1, 0, 0, 0];
    let w = eigen_with_divisor(&t, &nu)?
        .ok_or_else(|| DegenError::InvalidDatum { lambda: lambda.clone(), failures: vec![CheckKind::Divisor] })?;
    let w = w.scale(&w.numerator().leading().unwrap().inv().unwrap());
    debug_assert_eq!(w, EigenDifferential::new(&t, Polynomial::one(lambda.field()), &[0, 1, 1, 0])?);
    let norm = mu_normalize(lambda, m, a, mu_cap)?;
    let d = assemble(t, nu, w, norm);
    if check {
        let rep = validate(&d);
        if !rep.is_valid() {
            return Err(DegenError::InvalidDatum {
                lambda: lambda.clone(),
                failures: rep.failures().map(|c| c.kind).collect(),
            });
        }
    }
    Ok(d)
}

fn assemble(t: CoverType, nu: Vec<i64>, w: EigenDifferential, norm: R4Normalization) -> SpecialDegenerationDatum {
    match &norm.mu {
        Some(mu) => {
            let big = mu.field().clone();
            let mut norm = norm.clone();
            norm.lambda = crate::ff::embed(&norm.lambda, &big).unwrap();
            norm.radicand = crate::ff::embed(&norm.radicand, &big).unwrap();
            SpecialDegenerationDatum {
                cover: t.embed(&big),
                nu,
                omega: w.embed(&big).scale(mu),
                scaling: Scaling::Fixed,
                r4: Some(norm),
            }
        }
        None => SpecialDegenerationDatum {
            cover: t,
            nu,
            omega: w,
            scaling: Scaling::Radical { radicand: norm.radicand.clone() },
            r4: Some(norm),
        },
    }
}

/// The datum at `lambda^{p^k}`. The unscaled form is the conjugate of the
/// one solved for at `lambda`, namely `z dx / ((x-1)(x-lambda))`; `mu` is
/// normalized afresh from the conjugated radicand.
fn conjugate_r4(d: &SpecialDegenerationDatum, k: i64, m: u64, a: &[u64]) -> Result<SpecialDegenerationDatum, DegenError> {
    let base = d.r4.as_ref().expect("r4 datum");
    let lambda = base.lambda.descend().frobenius_pow(k);
    let f = lambda.field();
    let t = r4_cover(&lambda, m, a);
    let w = EigenDifferential::new(&t, Polynomial::one(f), &[0, 1, 1, 0])?;
    let radicand = crate::ff::embed(&base.radicand.descend().frobenius_pow(k), f)?;
    let p = f.characteristic();
    let mu = if base.mu.is_some() { Some(kth_root(&radicand, p - 1)?.0) } else { None };
    let norm = R4Normalization { lambda, mu, radicand, ..base.clone() };
    Ok(assemble(t, vec![1, 0, 0, 0], w, norm))
}

/// One admissible class: exponents `a` with `nu`, listed with the `nu = 1`
/// entries first and ascending `a` within each group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeClass {
    pub m: u64,
    pub a: Vec<u64>,
    pub nu: Vec<i64>,
}

impl TypeClass {
    pub fn is_connected(&self) -> bool {
        self.a.iter().fold(self.m, |g, &x| num_integer::gcd(g, x)) == 1
    }
}

/// All `(m, a, nu)` with `m | p-1`, `m > 1`, `r` exponents in `(0, m)`
/// summing to `m`, `nu in {0,1}^r` with `sum nu = r - 3`, up to simultaneous
/// permutation.
pub fn enumerate_types(p: u64, r: usize) -> Vec<TypeClass> {
    let mut out = BTreeSet::new();
    if r < 3 {
        return Vec::new();
    }
    for m in (2..p).filter(|m| (p - 1) % m == 0 && *m >= r as u64) {
        for a in partitions(m, r) {
            for ones in 0u32..(1 << r) {
                if ones.count_ones() as usize != r - 3 {
                    continue;
                }
                let mut pairs: Vec<(i64, u64)> = (0..r).map(|i| ((ones >> i & 1) as i64, a[i])).collect();
                pairs.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
                out.insert(TypeClass { m, a: pairs.iter().map(|x| x.1).collect(), nu: pairs.iter().map(|x| x.0).collect() });
            }
        }
    }
    out.into_iter().collect()
}

/// Nondecreasing `r`-tuples of positive integers summing to `m`.
fn partitions(m: u64, r: usize) -> Vec<Vec<u64>> {
    fn rec(rest: u64, slots: usize, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut v = min;
        while v * slots as u64 <= rest {
            cur.push(v);
            rec(rest - v, slots - 1, v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(m, r, 1, &mut Vec::new(), &mut out);
    out.retain(|a| a.iter().all(|&x| x < m));
    out
}

/// All ordered `(m, a)` with four exponents for the prime `p`; the first
/// exponent belongs to the `nu = 1` point.
pub fn admissible_r4(p: u64) -> Vec<(u64, [u64; 4])> {
    let mut out = Vec::new();
    for m in (4..p).filter(|m| (p - 1) % m == 0) {
        for a1 in 1..m {
            for a2 in 1..m {
                for a3 in 1..m {
                    let s = a1 + a2 + a3;
                    if s < m {
                        out.push((m, [a1, a2, a3, m - s]));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambdas(data: &[SpecialDegenerationDatum]) -> Vec<FieldElement> {
        data.iter().map(|d| d.r4.as_ref().unwrap().lambda.descend()).collect()
    }

    #[test]
    fn phi_examples() {
        let f13 = field_make(13, 1).unwrap();
        let expected = Polynomial::new(&f13, vec![f13.from_int(10), f13.from_int(3), f13.from_int(10)]);
        assert_eq!(phi_polynomial(13, 4, &[1, 1, 1, 1]).unwrap(), expected);
        let f7 = field_make(7, 1).unwrap();
        let expected = Polynomial::new(&f7, vec![f7.from_int(3), f7.from_int(4), f7.from_int(3)]);
        assert_eq!(phi_polynomial(7, 6, &[3, 1, 1, 1]).unwrap(), expected);
        assert_eq!(phi_polynomial(5, 4, &[1, 1, 1, 1]).unwrap(), Polynomial::one(&field_make(5, 1).unwrap()));
        assert!(phi_polynomial(13, 5, &[1, 1, 1, 2]).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let f13 = field_make(13, 1).unwrap();
        let data = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        assert_eq!(lambdas(&data), [f13.from_int(4), f13.from_int(10)]);
        let f7 = field_make(7, 1).unwrap();
        let data = enumerate_r4(7, 6, &[3, 1, 1, 1], EnumerateOptions::default()).unwrap();
        assert_eq!(lambdas(&data), [f7.from_int(3), f7.from_int(5)]);
        assert!(enumerate_r4(5, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap().is_empty());
        for d in &data {
            assert!(validate(&d).is_valid());
        }
    }

    #[test]
    fn reciprocal_roots_when_exponents_differ() {
        // Phi = 5 + 4 lambda has root 4, the datum sits at 1/4 = 2
        let f7 = field_make(7, 1).unwrap();
        let phi = phi_polynomial(7, 6, &[2, 1, 2, 1]).unwrap();
        assert_eq!(phi, Polynomial::new(&f7, vec![f7.from_int(5), f7.from_int(4)]));
        let data = enumerate_r4(7, 6, &[2, 1, 2, 1], EnumerateOptions::default()).unwrap();
        assert_eq!(lambdas(&data), [f7.from_int(2)]);
        assert!(mu_normalize(&f7.from_int(4), 6, &[2, 1, 2, 1], 12).is_err());
    }

    #[test]
    fn conjugates_validate() {
        // roots outside the prime field, with every conjugate validated
        for (p, m, a) in [(13u64, 12u64, [5u64, 3, 2, 2]), (11, 10, [4, 1, 2, 3])] {
            let opts = EnumerateOptions { validate_conjugates: true, ..EnumerateOptions::default() };
            let full = enumerate_r4(p, m, &a, opts).unwrap();
            let fast = enumerate_r4(p, m, &a, EnumerateOptions::default()).unwrap();
            assert_eq!(full.len() as u64, expected_r4_count(p, m, &a));
            assert_eq!(lambdas(&full), lambdas(&fast));
            for d in &fast {
                assert!(validate(d).is_valid());
            }
        }
    }

    #[test]
    fn validation_failures() {
        let data = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        let d = &data[0];
        assert!(validate(d).is_valid());
        // a scalar outside F_p breaks the fixed-point equation only
        let f = field_make(13, num_integer::lcm(d.field().degree(), 2)).unwrap();
        let g = f.generator();
        assert!(!g.pow(12).is_one());
        let de = d.embed(&f).scaled(&g);
        let rep = validate(&de);
        assert!(!rep.passed(CheckKind::CartierFixed));
        assert!(rep.passed(CheckKind::Divisor));
        let mut bad = d.clone();
        bad.nu = vec![1, 1, 0, 0];
        let rep = validate(&bad);
        assert!(!rep.passed(CheckKind::NuSum));
        assert!(!rep.passed(CheckKind::Divisor));
        // F_p^x multiples stay fixed
        for t in 1..13 {
            assert!(validate(&d.scaled(&d.field().from_int(t))).is_valid());
        }
    }

    #[test]
    fn mu_normalization() {
        let f = field_make(13, 1).unwrap();
        let lam = f.from_int(4);
        let (c1, c2) = r4_coefficients(&lam, 4, &[1, 1, 1, 1]);
        assert!(c1.is_zero());
        let n = mu_normalize(&lam, 4, &[1, 1, 1, 1], 12).unwrap();
        let mu = n.mu.unwrap();
        assert_eq!(mu.pow(12), crate::ff::embed(&c2, mu.field()).unwrap());
        assert_eq!(mu_normalize(&f.from_int(3), 4, &[1, 1, 1, 1], 12), Err(DegenError::NotARoot));
    }

    #[test]
    fn type_enumeration() {
        let t = enumerate_types(5, 4);
        assert_eq!(t, [TypeClass { m: 4, a: vec![1, 1, 1, 1], nu: vec![1, 0, 0, 0] }]);
        let t = enumerate_types(5, 3);
        assert_eq!(t, [TypeClass { m: 4, a: vec![1, 1, 2], nu: vec![0, 0, 0] }]);
        let t = enumerate_types(7, 4);
        let multisets: BTreeSet<Vec<u64>> = t
            .iter()
            .map(|c| {
                let mut a = c.a.clone();
                a.sort();
                a
            })
            .collect();
        assert_eq!(multisets.into_iter().collect::<Vec<_>>(), [vec![1, 1, 1, 3], vec![1, 1, 2, 2]]);
        assert!(t.iter().all(|c| c.m == 6));
        assert!(enumerate_types(5, 6).is_empty());
    }
}
