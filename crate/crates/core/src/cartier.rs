//! The Cartier operator on eigen-differentials `h(x) z dx`.
//!
//! For `w = (U/V) z dx` with `V = prod (x - tau_i)^{c_i}` and
//! `z^{p-1} = f_0^alpha`, `f_0 = prod (x - tau_i)^{a_i}`, we have
//! `w = z^p * U / (V f_0^alpha) dx`. Choosing `e_i` with
//! `p e_i >= c_i + alpha a_i` gives `U / (V f_0^alpha) = P / Q^p` with `P` a
//! polynomial and `Q = prod (x - tau_i)^{e_i}`, so
//! `C(w) = (z / Q) * C(P dx)` where `C(sum c_k x^k dx)` keeps the terms with
//! `k = -1 mod p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{
    coordinates, eigen_basis, eigen_with_divisor, validate_type, CoverError, CoverType, EigenDifferential,
};
use crate::ff::{field_make, Embedding, Field, FieldElement, Raw};
use crate::linalg::Matrix;
use crate::poly::{linear_power, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartierError {
    Cover(CoverError),
    /// `C` of a basis element left the span of the basis.
    EigenspaceNotPreserved { column: usize },
    /// The working field does not contain the cover's field.
    WorkingDegree { working: usize, cover: usize },
}

impl fmt::Display for CartierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartierError::Cover(e) => write!(f, "{e}"),
            CartierError::EigenspaceNotPreserved { column } => {
                write!(f, "Cartier image of basis element {column} is outside the eigenspace")
            }
            CartierError::WorkingDegree { working, cover } => {
                write!(f, "working degree {working} is not a multiple of the cover field degree {cover}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CartierError {}

impl From<CoverError> for CartierError {
    fn from(e: CoverError) -> Self {
        CartierError::Cover(e)
    }
}

/// `C(P dx)` for a polynomial `P`: `sum_{k = -1 mod p} c_k^{1/p} x^{(k+1)/p - 1}`.
pub fn cartier_poly(poly: &Polynomial) -> Polynomial {
    let field = poly.field();
    let p = field.characteristic() as usize;
    let len = poly.len();
    let coeffs: Vec<Raw> = (0..len / p).map(|j| field.raw_frobenius_inv(&poly.raw_coeff(p * (j + 1) - 1))).collect();
    Polynomial::from_raw(field, coeffs)
}

/// Image of `w` under the Cartier operator, in canonical form.
pub fn cartier_apply(w: &EigenDifferential) -> EigenDifferential {
    let t = w.cover();
    if w.is_zero() {
        return w.clone();
    }
    let p = t.p();
    let alpha = t.alpha();
    let mut e = vec![0i64; t.r()];
    let mut poly = w.numerator().clone();
    // multiply the shorter factors first
    let mut factors: Vec<(FieldElement, u64)> = Vec::new();
    for (i, tau) in t.finite_points() {
        let need = w.denom_exps()[i] + alpha * t.a()[i];
        let ei = need.div_ceil(p);
        e[i] = ei as i64;
        let k = p * ei - need;
        if k > 0 {
            factors.push((tau, k));
        }
    }
    factors.sort_by_key(|f| f.1);
    for (tau, k) in &factors {
        poly = poly.mul(&linear_power(tau, *k));
    }
    EigenDifferential::new(t, cartier_poly(&poly), &e).expect("arity matches")
}

/// `C(w) = 0`.
pub fn is_exact(w: &EigenDifferential) -> bool {
    cartier_apply(w).is_zero()
}

/// The Cartier operator on the regular eigen-differentials, as a
/// `p^{-1}`-semilinear map: `C(sum t_j b_j) = sum_i (M sigma^{-1}(t))_i b_i`.
#[derive(Clone, Debug)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub basis: Vec<EigenDifferential>,
}

impl SemilinearMap {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    /// `t -> M sigma^{-1}(t)` on coordinate vectors.
    pub fn apply(&self, coords: &[FieldElement]) -> Vec<FieldElement> {
        let tw: Vec<FieldElement> = coords.iter().map(FieldElement::frobenius_inverse).collect();
        self.matrix.mul_vec(&tw)
    }

    pub fn determinant(&self) -> FieldElement {
        self.matrix.det()
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `sum t_j b_j`.
    pub fn combine(&self, coords: &[FieldElement]) -> EigenDifferential {
        let cover = self.basis[0].cover();
        let target = coords.first().map_or(cover.field().clone(), |c| c.field().clone());
        let mut acc = EigenDifferential::zero(&cover.embed(&target));
        for (t, b) in coords.iter().zip(&self.basis) {
            acc = acc.add(&b.embed(&target).scale(t));
        }
        acc
    }

    /// `A_n = M sigma^{-1}(M) ... sigma^{-(n-1)}(M)`, so that `C^n` acts on
    /// coordinates over `F_{p^n}` as `A_n`.
    pub fn norm(&self, n: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dim());
        for k in 0..n {
            acc = acc.mul(&self.matrix.frobenius(-(k as i64)));
        }
        acc
    }
}

/// Matrix of `C` in the basis of [`eigen_basis`].
pub fn cartier_matrix(t: &CoverType) -> Result<SemilinearMap, CartierError> {
    let basis = eigen_basis(t)?;
    let field = t.field().clone();
    let k = basis.len();
    let mut matrix = Matrix::zeros(&field, k, k);
    for (j, b) in basis.iter().enumerate() {
        let image = cartier_apply(b);
        let c = coordinates(&basis, &image).ok_or(CartierError::EigenspaceNotPreserved { column: j })?;
        for (i, v) in c.iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok(SemilinearMap { matrix, basis })
}

/// `F_p`-dimension of the fixed points of `C` over `F_{p^n}`, computed as
/// `dim ker(A_n - I)`. Requires the cover field degree to divide `n`.
pub fn fixed_space_dimension(map: &SemilinearMap, n: usize) -> Result<usize, CartierError> {
    let d = map.field().degree();
    if n % d != 0 {
        return Err(CartierError::WorkingDegree { working: n, cover: d });
    }
    let a = map.norm(n).sub(&Matrix::identity(map.field(), map.dim()));
    Ok(map.dim() - a.rank())
}

/// Least `n` (a multiple of the cover field degree `d`) over which the fixed
/// space has full dimension `r - 2`: `d` times the order of `A_d`. Returns
/// `None` if that order exceeds `order_limit`.
pub fn sufficient_working_degree(map: &SemilinearMap, order_limit: usize) -> Option<usize> {
    let d = map.field().degree();
    let a = map.norm(d);
    let id = Matrix::identity(map.field(), map.dim());
    let mut cur = a.clone();
    for j in 1..=order_limit {
        if cur == id {
            return Some(d * j);
        }
        cur = cur.mul(&a);
    }
    None
}

/// An `F_p`-basis of `{w : C(w) = w}` over `F_{p^n}`, found as the kernel of
/// the `F_p`-linear map `t -> M sigma^{-1}(t) - t` on `F_{p^n}^{r-2}`.
pub fn logarithmic_space(t: &CoverType, working_degree: usize) -> Result<Vec<EigenDifferential>, CartierError> {
    let map = cartier_matrix(t)?;
    logarithmic_space_of(&map, working_degree)
}

pub fn logarithmic_space_of(map: &SemilinearMap, n: usize) -> Result<Vec<EigenDifferential>, CartierError> {
    let d = map.field().degree();
    if n % d != 0 {
        return Err(CartierError::WorkingDegree { working: n, cover: d });
    }
    let p = map.field().characteristic();
    let big = field_make(p, n).expect("valid field");
    let emb = Embedding::new(map.field(), &big).expect("d divides n");
    let k = map.dim();
    let m: Vec<Vec<Raw>> = (0..k).map(|i| (0..k).map(|j| emb.apply_raw(map.matrix.raw(i, j))).collect()).collect();
    let prime = field_make(p, 1).expect("prime field");
    let size = n * k;
    let mut lin = Matrix::zeros(&prime, size, size);
    for j in 0..k {
        for l in 0..n {
            let mut b = big.raw_zero();
            b[l] = 1;
            let sb = big.raw_frobenius_inv(&b);
            for i in 0..k {
                let mut img = big.raw_mul(&m[i][j], &sb);
                if i == j {
                    img = big.raw_sub(&img, &b);
                }
                for (ll, &c) in img.iter().enumerate() {
                    lin.set_raw(i * n + ll, j * n + l, vec![c]);
                }
            }
        }
    }
    let basis_big: Vec<EigenDifferential> = map.basis.iter().map(|b| b.embed(&big)).collect();
    let cover = basis_big[0].cover().clone();
    let mut out = Vec::new();
    for v in lin.kernel() {
        let mut w = EigenDifferential::zero(&cover);
        for (j, b) in basis_big.iter().enumerate() {
            let coords: Raw = (0..n).map(|l| v[j * n + l].as_prime().unwrap()).collect();
            let tj = big.element(coords).expect("length n");
            w = w.add(&b.scale(&tj));
        }
        out.push(w);
    }
    Ok(out)
}

/// Hypothesis violations for [`verify_fundlem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FundlemViolation {
    InvalidType,
    NotMultiplicative,
    WrongArity { expected: usize, found: usize },
    NuSum { sum: i64, expected: i64 },
    FirstNotNegative { nu1: i64 },
    LaterNegative { index: usize, nu: i64 },
    OutOfRange { index: usize, nu: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FundlemOutcome {
    /// No differential has the prescribed divisor.
    NoDifferential,
    /// A differential exists and is exact: this would contradict the lemma.
    Exact { omega: EigenDifferential },
    NonExact { omega: EigenDifferential, image: EigenDifferential },
}

impl FundlemOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, FundlemOutcome::Exact { .. })
    }
}

/// Builds the differential with divisor `sum (m_i nu_i + a~_i - 1) P_i` and
/// checks that its Cartier image is nonzero.
pub fn verify_fundlem(t: &CoverType, nu: &[i64]) -> Result<FundlemOutcome, Vec<FundlemViolation>> {
    let mut issues = Vec::new();
    let rep = validate_type(t);
    if !rep.is_valid() {
        issues.push(FundlemViolation::InvalidType);
    } else if !rep.multiplicative {
        issues.push(FundlemViolation::NotMultiplicative);
    }
    let r = t.r();
    if nu.len() != r {
        issues.push(FundlemViolation::WrongArity { expected: r, found: nu.len() });
        return Err(issues);
    }
    let sum: i64 = nu.iter().sum();
    if sum != r as i64 - 3 {
        issues.push(FundlemViolation::NuSum { sum, expected: r as i64 - 3 });
    }
    if nu[0] >= 0 {
        issues.push(FundlemViolation::FirstNotNegative { nu1: nu[0] });
    }
    for (index, &v) in nu.iter().enumerate() {
        if index > 0 && v < 0 {
            issues.push(FundlemViolation::LaterNegative { index, nu: v });
        }
        if !(-2..=1).contains(&v) {
            issues.push(FundlemViolation::OutOfRange { index, nu: v });
        }
    }
    if !issues.is_empty() {
        return Err(issues);
    }
    let omega = match eigen_with_divisor(t, nu) {
        Ok(Some(w)) => w,
        Ok(None) => return Ok(FundlemOutcome::NoDifferential),
        Err(_) => return Err(vec![FundlemViolation::InvalidType]),
    };
    let image = cartier_apply(&omega);
    if image.is_zero() {
        Ok(FundlemOutcome::Exact { omega })
    } else {
        Ok(FundlemOutcome::NonExact { omega, image })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::BranchPoint;
    use crate::poly::{product_of_linear_powers, Polynomial};
    use proptest::prelude::*;

    fn cover(p: u64, n: usize, m: u64, pts: &[Option<i64>], a: &[u64]) -> CoverType {
        let f = field_make(p, n).unwrap();
        let points = pts
            .iter()
            .map(|x| match x {
                Some(v) => BranchPoint::Finite(f.from_int(*v)),
                None => BranchPoint::Infinity,
            })
            .collect();
        CoverType::new(&f, m, points, a.to_vec())
    }

    #[test]
    fn polynomial_cartier_axioms() {
        let f = field_make(7, 1).unwrap();
        // C(x^k dx) = 0 unless k = -1 mod p
        for k in 0..30usize {
            let c = cartier_poly(&Polynomial::monomial(&f.one(), k));
            if (k + 1) % 7 == 0 {
                assert_eq!(c, Polynomial::monomial(&f.one(), (k + 1) / 7 - 1));
            } else {
                assert!(c.is_zero());
            }
        }
        // C(x^{p-1} dx) = dx
        assert_eq!(cartier_poly(&Polynomial::monomial(&f.one(), 6)), Polynomial::one(&f));
    }

    #[test]
    fn derivatives_are_exact() {
        // d(g z) = (m g' f0 + g f0') / (m f0) z dx
        let t = cover(13, 2, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let f = t.field().clone();
        let g = Polynomial::new(&f, vec![f.generator(), f.from_int(3), f.one(), f.generator().pow(5)]);
        let f0 = t.defining_polynomial();
        let m = f.from_int(t.m() as i64);
        let num = g.derivative().mul(&f0).scale(&m).add(&g.mul(&f0.derivative())).scale(&m.inv().unwrap());
        let du = EigenDifferential::new(&t, num, &[1, 1, 1, 0]).unwrap();
        assert!(!du.is_zero());
        assert!(is_exact(&du));
    }

    #[test]
    fn r3_matrix_is_nonzero_scalar() {
        let t = cover(13, 1, 4, &[Some(0), Some(1), None], &[1, 1, 2]);
        let map = cartier_matrix(&t).unwrap();
        assert_eq!(map.dim(), 1);
        assert!(map.is_invertible());
        let n = sufficient_working_degree(&map, 1000).unwrap();
        let log = logarithmic_space(&t, n).unwrap();
        assert_eq!(log.len(), 1);
        assert_eq!(cartier_apply(&log[0]), log[0]);
    }

    #[test]
    fn genus_three_example() {
        let t = cover(13, 1, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let map = cartier_matrix(&t).unwrap();
        assert_eq!(map.dim(), 2);
        assert!(map.is_invertible());
        let n = sufficient_working_degree(&map, 10_000).unwrap();
        assert_eq!(fixed_space_dimension(&map, n).unwrap(), 2);
        if n <= 12 {
            let log = logarithmic_space_of(&map, n).unwrap();
            assert_eq!(log.len(), 2);
            for w in &log {
                assert_eq!(&cartier_apply(w), w);
            }
        }
        // below the sufficient degree the materialized and norm dimensions agree
        for n in 1..=4 {
            let mat = logarithmic_space_of(&map, n).unwrap().len();
            assert_eq!(mat, fixed_space_dimension(&map, n).unwrap());
        }
    }

    #[test]
    fn fundlem_examples() {
        let t = cover(13, 1, 6, &[Some(0), Some(1), Some(4), Some(6), None], &[1, 1, 2, 1, 1]);
        match verify_fundlem(&t, &[-1, 1, 1, 1, 0]).unwrap() {
            FundlemOutcome::NonExact { image, .. } => assert!(!image.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        let t4 = cover(13, 1, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let err = verify_fundlem(&t4, &[0, 0, 0, 1]).unwrap_err();
        assert!(err.contains(&FundlemViolation::FirstNotNegative { nu1: 0 }));
    }

    #[test]
    fn r4_coefficient_formula() {
        // C(z dx / ((x-1)(x-l))) = (c_{p-2}^{1/p} + c_{2p-2}^{1/p} x) z dx / (x (x-1)(x-l))
        // with c_k the coefficients of (x^{a1'} (x-1)^{a2'} (x-l)^{a3'})^alpha
        for (p, m, a, lam) in [(13u64, 4u64, [1u64, 1, 1, 1], 4i64), (13, 4, [1, 1, 1, 1], 7), (7, 6, [3, 1, 1, 1], 3)] {
            let t = cover(p, 1, m, &[Some(0), Some(1), Some(lam), None], &a);
            let f = t.field().clone();
            let w = EigenDifferential::new(&t, Polynomial::one(&f), &[0, 1, 1, 0]).unwrap();
            let alpha = (p - 1) / m;
            let pts = [f.zero(), f.one(), f.from_int(lam)];
            let fa = product_of_linear_powers(&f, &pts, &[alpha * (m - a[0]), alpha * (m - a[1]), alpha * (m - a[2])]);
            let c1 = fa.coeff(p as usize - 2).frobenius_inverse();
            let c2 = fa.coeff(2 * p as usize - 2).frobenius_inverse();
            let expected = EigenDifferential::new(&t, Polynomial::new(&f, vec![c1, c2]), &[1, 1, 1, 0]).unwrap();
            assert_eq!(cartier_apply(&w), expected, "p={p} lambda={lam}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn semilinear_and_additive(
            cs in proptest::collection::vec(proptest::collection::vec(0u64..7, 2), 1..6),
            ds in proptest::collection::vec(proptest::collection::vec(0u64..7, 2), 1..6),
            s in proptest::collection::vec(0u64..7, 2),
            u in proptest::collection::vec(0u64..7, 2),
        ) {
            let t = cover(7, 2, 6, &[Some(0), Some(1), Some(3), None], &[3, 1, 1, 1]);
            let f = t.field().clone();
            let poly = |v: &Vec<Vec<u64>>| Polynomial::new(&f, v.iter().map(|c| f.element(c.clone()).unwrap()).collect());
            let w1 = EigenDifferential::new(&t, poly(&cs), &[1, 0, 2, 0]).unwrap();
            let w2 = EigenDifferential::new(&t, poly(&ds), &[0, 1, 1, 0]).unwrap();
            let c = f.element(s).unwrap();
            // C(c^p w) = c C(w)
            prop_assert_eq!(cartier_apply(&w1.scale(&c.frobenius())), cartier_apply(&w1).scale(&c));
            prop_assert_eq!(cartier_apply(&w1.add(&w2)), cartier_apply(&w1).add(&cartier_apply(&w2)));
            // C((x - b)^p w) = (x - b) C(w)
            let b = f.element(u).unwrap();
            let lin = Polynomial::linear(&b);
            let exps: Vec<i64> = w1.denom_exps().iter().map(|&c| c as i64).collect();
            let lifted = EigenDifferential::new(&t, w1.numerator().mul(&lin.pow(7)), &exps).unwrap();
            let img = cartier_apply(&w1);
            let expected = EigenDifferential::new(&t, img.numerator().mul(&lin), &img.denom_exps().iter().map(|&c| c as i64).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(cartier_apply(&lifted), expected);
        }
    }
}
