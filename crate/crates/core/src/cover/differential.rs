use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{euler_characteristic, ram_entry, BranchPoint, CoverError, CoverType};
use crate::ff::{Field, FieldElement};
use crate::poly::{factor, linear_power, Polynomial};

/// The differential `U(x) z dx / prod (x - tau_i)^{c_i}` on a cyclic cover.
///
/// Canonical form: every `c_i >= 0`, `c_i = 0` at infinity, and `U` does not
/// vanish at any `tau_i` with `c_i > 0`. The zero differential has `U = 0`
/// and all `c_i = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct EigenDifferential {
    cover: CoverType,
    numerator: Polynomial,
    denom: Vec<u64>,
}

impl EigenDifferential {
    /// Builds and canonicalizes `U z dx / prod (x - tau_i)^{c_i}`. The list
    /// `denom_exps` has one entry per branch point (entries at infinity must
    /// be zero); negative entries move into the numerator.
    pub fn new(cover: &CoverType, numerator: Polynomial, denom_exps: &[i64]) -> Result<Self, CoverError> {
        if denom_exps.len() != cover.r() {
            return Err(CoverError::WrongArity { expected: cover.r(), found: denom_exps.len() });
        }
        assert!(numerator.field() == cover.field(), "numerator over a different field");
        let mut u = numerator;
        let mut denom = vec![0u64; cover.r()];
        if u.is_zero() {
            return Ok(EigenDifferential { cover: cover.clone(), numerator: u, denom });
        }
        for (i, pt) in cover.points().iter().enumerate() {
            let c = denom_exps[i];
            let BranchPoint::Finite(tau) = pt else {
                assert_eq!(c, 0, "denominator exponent at infinity must be zero");
                continue;
            };
            if c < 0 {
                u = u.mul(&linear_power(tau, (-c) as u64));
                continue;
            }
            let mut c = c as u64;
            let lin = Polynomial::linear(tau);
            while c > 0 {
                match u.div_exact(&lin) {
                    Some(q) => {
                        u = q;
                        c -= 1;
                    }
                    None => break,
                }
            }
            denom[i] = c;
        }
        Ok(EigenDifferential { cover: cover.clone(), numerator: u, denom })
    }

    /// `U z dx` with no denominator.
    pub fn polynomial(cover: &CoverType, numerator: Polynomial) -> Self {
        Self::new(cover, numerator, &vec![0; cover.r()]).expect("arity matches")
    }

    pub fn zero(cover: &CoverType) -> Self {
        Self::polynomial(cover, Polynomial::zero(cover.field()))
    }

    pub fn cover(&self) -> &CoverType {
        &self.cover
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Denominator exponents, one per branch point (zero at infinity).
    pub fn denom_exps(&self) -> &[u64] {
        &self.denom
    }

    pub fn field(&self) -> &Field {
        self.cover.field()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `prod (x - tau_i)^{e_i}` over the finite branch points.
    pub(crate) fn denominator_poly(cover: &CoverType, exps: &[u64]) -> Polynomial {
        let mut acc = Polynomial::one(cover.field());
        for (i, tau) in cover.finite_points() {
            if exps[i] > 0 {
                acc = acc.mul(&linear_power(&tau, exps[i]));
            }
        }
        acc
    }

    /// Numerator over the larger denominator `prod (x - tau_i)^{e_i}`,
    /// `e_i >= c_i`.
    pub(crate) fn numerator_over(&self, exps: &[u64]) -> Polynomial {
        let extra: Vec<u64> = exps.iter().zip(&self.denom).map(|(e, c)| e - c).collect();
        self.numerator.mul(&Self::denominator_poly(&self.cover, &extra))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.cover == other.cover, "differentials on different covers");
        let exps: Vec<u64> = self.denom.iter().zip(&other.denom).map(|(a, b)| *a.max(b)).collect();
        let u = self.numerator_over(&exps).add(&other.numerator_over(&exps));
        let signed: Vec<i64> = exps.iter().map(|&e| e as i64).collect();
        Self::new(&self.cover, u, &signed).expect("arity matches")
    }

    pub fn neg(&self) -> Self {
        EigenDifferential { cover: self.cover.clone(), numerator: self.numerator.neg(), denom: self.denom.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.cover);
        }
        EigenDifferential { cover: self.cover.clone(), numerator: self.numerator.scale(c), denom: self.denom.clone() }
    }

    /// Multiplies by `prod (x - tau_i)^{-e_i}`.
    pub fn divide_by_branch_powers(&self, exps: &[i64]) -> Self {
        let signed: Vec<i64> = self.denom.iter().zip(exps).map(|(&c, &e)| c as i64 + e).collect();
        Self::new(&self.cover, self.numerator.clone(), &signed).expect("arity matches")
    }

    /// The same differential over an extension field.
    pub fn embed(&self, target: &Field) -> Self {
        if self.field() == target {
            return self.clone();
        }
        let e = crate::ff::Embedding::new(self.field(), target).expect("compatible fields");
        EigenDifferential {
            cover: self.cover.map_embedding(&e),
            numerator: self.numerator.map_embedding(&e),
            denom: self.denom.clone(),
        }
    }

    /// Conjugate under `x -> x^{p^k}` applied to every coefficient and branch point.
    pub fn frobenius_pow(&self, k: i64) -> Self {
        EigenDifferential {
            cover: self.cover.frobenius_pow(k),
            numerator: self.numerator.frobenius_coeffs(k),
            denom: self.denom.clone(),
        }
    }

    /// If `other = c * self` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<FieldElement> {
        if self.is_zero() || self.denom != other.denom || self.numerator.degree() != other.numerator.degree() {
            return None;
        }
        let lead = self.numerator.leading()?;
        let c = other.numerator.leading()? * lead.inv()?;
        (self.numerator.scale(&c) == other.numerator).then_some(c)
    }
}

impl fmt::Debug for EigenDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EigenDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) z dx", self.numerator)?;
        for (i, tau) in self.cover.finite_points() {
            match self.denom[i] {
                0 => {}
                1 => write!(f, " / (x - {tau})")?,
                c => write!(f, " / (x - {tau})^{c}")?,
            }
        }
        Ok(())
    }
}

/// A place or Galois-stable set of places of the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// The places over branch point `i` (0-based index).
    Branch(usize),
    /// The places over an unbranched infinity.
    Infinity,
    /// The places over the zeros of a monic irreducible factor of `U` away
    /// from the branch points.
    Fiber(Polynomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTerm {
    pub place: Place,
    /// Order of the differential at each geometric point of the place.
    pub order: i64,
    /// Number of geometric points.
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub terms: Vec<DivisorTerm>,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.order * t.points as i64).sum()
    }

    /// Order at every point over branch point `i`.
    pub fn branch_order(&self, i: usize) -> Option<i64> {
        self.terms.iter().find(|t| t.place == Place::Branch(i)).map(|t| t.order)
    }

    pub fn infinity_order(&self) -> Option<i64> {
        self.terms.iter().find(|t| t.place == Place::Infinity).map(|t| t.order)
    }

    /// Terms supported away from branch points and infinity.
    pub fn fiber_terms(&self) -> impl Iterator<Item = &DivisorTerm> {
        self.terms.iter().filter(|t| matches!(t.place, Place::Fiber(_)))
    }
}

/// The divisor of a nonzero eigen-differential, computed on the connected
/// model of its cover. Its degree is checked against `2g - 2`.
pub fn divisor_of(w: &EigenDifferential) -> Result<Divisor, CoverError> {
    if w.is_zero() {
        return Err(CoverError::ZeroDifferential);
    }
    let t = w.cover.connected_model();
    let m = t.m() as i64;
    let u = &w.numerator;
    let mut terms = Vec::new();
    let mut rest = u.clone();
    let deg_u = u.degree().unwrap() as i64;
    let sum_c: i64 = w.denom.iter().map(|&c| c as i64).sum();
    let s = t.finite_exponent_sum() as i64;
    for (i, pt) in t.points().iter().enumerate() {
        let e = ram_entry(t.m(), t.a()[i]);
        let (mi, at) = (e.ramification as i64, e.reduced_exponent as i64);
        let order = match pt {
            BranchPoint::Finite(tau) => {
                let lin = Polynomial::linear(tau);
                let mut v = 0i64;
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                    v += 1;
                }
                mi * (v - w.denom[i] as i64) + at + mi - 1
            }
            BranchPoint::Infinity => mi * (sum_c - deg_u) - s * mi / m - mi - 1,
        };
        terms.push(DivisorTerm { place: Place::Branch(i), order, points: e.fiber_size });
    }
    if t.infinity_index().is_none() {
        debug_assert_eq!(s % m, 0);
        terms.push(DivisorTerm { place: Place::Infinity, order: sum_c - deg_u - s / m - 2, points: m as u64 });
    }
    if !rest.is_constant() {
        for (g, mult) in factor(&rest).expect("nonzero") {
            let d = g.degree().unwrap() as u64;
            terms.push(DivisorTerm { place: Place::Fiber(g), order: mult as i64, points: m as u64 * d });
        }
    }
    let div = Divisor { terms };
    assert_eq!(div.degree(), euler_characteristic(&t), "divisor degree differs from 2g - 2");
    Ok(div)
}

#[cfg(test)]
mod tests {
    use super::super::tests::cover;
    use super::*;

    #[test]
    fn z_dx_on_genus_three_curve() {
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let w = EigenDifferential::polynomial(&t, Polynomial::one(t.field()));
        let d = divisor_of(&w).unwrap();
        for i in 0..3 {
            assert_eq!(d.branch_order(i), Some(4));
        }
        assert_eq!(d.branch_order(3), Some(-8));
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let f = t.field().clone();
        let u = Polynomial::linear(&f.from_int(1)).mul(&Polynomial::linear(&f.from_int(5)));
        let w = EigenDifferential::new(&t, u, &[0, 2, -1, 0]).unwrap();
        assert_eq!(w.denom_exps(), &[0, 1, 0, 0]);
        let expected = Polynomial::linear(&f.from_int(5)).mul(&Polynomial::linear(&f.from_int(4)));
        assert_eq!(w.numerator(), &expected);
        let d = divisor_of(&w).unwrap();
        assert_eq!(d.fiber_terms().count(), 1);
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn zero_rejected() {
        let t = cover(7, 6, &[Some(0), Some(1), Some(3), None], &[3, 1, 1, 1]);
        assert_eq!(divisor_of(&EigenDifferential::zero(&t)), Err(CoverError::ZeroDifferential));
    }

    #[test]
    fn unbranched_infinity() {
        // z^4 = x (x-1) (x-2) (x-3)^1 with sum 4: infinity unbranched
        let t = cover(5, 4, &[Some(0), Some(1), Some(2), Some(3)], &[1, 1, 1, 1]);
        let w = EigenDifferential::polynomial(&t, Polynomial::one(t.field()));
        let d = divisor_of(&w).unwrap();
        assert_eq!(d.infinity_order(), Some(-3));
        assert_eq!(d.degree(), 4);
    }
}
