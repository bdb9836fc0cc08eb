//! Equivalence of data under fractional-linear changes of coordinate.

use alloc::vec;
use alloc::vec::Vec;

use super::{DegenError, SpecialDegenerationDatum};
use crate::cover::BranchPoint;
use crate::ff::{field_make, Field, FieldElement};
use crate::poly::Polynomial;

/// `x -> (a x + b) / (c x + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Mobius {
    pub fn det(&self) -> FieldElement {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, x: &BranchPoint) -> BranchPoint {
        match x {
            BranchPoint::Infinity => match self.c.inv() {
                Some(ci) => BranchPoint::Finite(&self.a * &ci),
                None => BranchPoint::Infinity,
            },
            BranchPoint::Finite(x) => {
                let den = &self.c * x + &self.d;
                match den.inv() {
                    Some(di) => BranchPoint::Finite((&self.a * x + &self.b) * di),
                    None => BranchPoint::Infinity,
                }
            }
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self o other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// The map sending `p1, p2, p3` to `0, 1, inf`; `None` unless distinct.
    pub fn to_standard(field: &Field, p1: &BranchPoint, p2: &BranchPoint, p3: &BranchPoint) -> Option<Mobius> {
        use BranchPoint::{Finite as F, Infinity as I};
        let (zero, one) = (field.zero(), field.one());
        let m = match (p1, p2, p3) {
            (I, F(q2), F(q3)) => Mobius { a: zero, b: q2 - q3, c: one, d: -q3 },
            (F(q1), I, F(q3)) => Mobius { a: one.clone(), b: -q1, c: one, d: -q3 },
            (F(q1), F(q2), I) => Mobius { a: one, b: -q1, c: zero, d: q2 - q1 },
            (F(q1), F(q2), F(q3)) => {
                let s = q2 - q3;
                let t = q2 - q1;
                Mobius { a: s.clone(), b: -(q1 * &s), c: t.clone(), d: -(q3 * &t) }
            }
            _ => return None,
        };
        (!m.det().is_zero()).then_some(m)
    }
}

/// `lambda` of the normalization sending the points at `ordering` to
/// `0, 1, lambda, inf`, in its minimal field.
pub fn normalized_lambda(d: &SpecialDegenerationDatum, ordering: [usize; 4]) -> Result<FieldElement, DegenError> {
    if d.r() != 4 {
        return Err(DegenError::NotR4);
    }
    let pts = d.cover.points();
    let m = Mobius::to_standard(d.field(), &pts[ordering[0]], &pts[ordering[1]], &pts[ordering[3]])
        .ok_or(DegenError::Inadmissible(alloc::string::String::from("repeated branch point")))?;
    match m.apply(&pts[ordering[2]]) {
        BranchPoint::Finite(l) => Ok(l.descend()),
        BranchPoint::Infinity => Err(DegenError::Inadmissible(alloc::string::String::from("repeated branch point"))),
    }
}

/// Canonical invariant of an `r = 4` datum: the labels `(a_i, nu_i)` with
/// the `nu = 1` point first and the others by ascending `a`, and the least
/// `lambda` over all label-preserving normalizations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct R4Key {
    pub p: u64,
    pub m: u64,
    pub labels: Vec<(u64, i64)>,
    pub lambda: FieldElement,
}

fn labels(d: &SpecialDegenerationDatum) -> Vec<(u64, i64)> {
    d.cover.a().iter().copied().zip(d.nu.iter().copied()).collect()
}

fn canonical_labels(l: &[(u64, i64)]) -> Vec<(u64, i64)> {
    let mut v = l.to_vec();
    v.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Key of a valid `r = 4` datum. Two valid data are equivalent exactly when
/// their keys agree: the form is determined up to `F_p^x` by its divisor.
pub fn canonical_key(d: &SpecialDegenerationDatum) -> Result<R4Key, DegenError> {
    if d.r() != 4 {
        return Err(DegenError::NotR4);
    }
    let l = labels(d);
    let target = canonical_labels(&l);
    let mut best: Option<FieldElement> = None;
    for perm in permutations(4) {
        if perm.iter().map(|&i| l[i]).ne(target.iter().copied()) {
            continue;
        }
        let lam = normalized_lambda(d, [perm[0], perm[1], perm[2], perm[3]])?;
        if best.as_ref().map_or(true, |b| lam < *b) {
            best = Some(lam);
        }
    }
    Ok(R4Key { p: d.p(), m: d.m(), labels: target, lambda: best.expect("identity ordering qualifies") })
}

/// Whether a fractional-linear map matching branch points with equal
/// `(a_i, nu_i)` pulls the fixed form of `d2` back to an `F_p^x` multiple of
/// that of `d1`.
pub fn equivalent(d1: &SpecialDegenerationDatum, d2: &SpecialDegenerationDatum) -> Result<bool, DegenError> {
    if d1.p() != d2.p() || d1.m() != d2.m() || d1.r() != d2.r() {
        return Err(DegenError::Incomparable);
    }
    let (l1, l2) = (labels(d1), labels(d2));
    if canonical_labels(&l1) != canonical_labels(&l2) {
        return Ok(false);
    }
    let n = num_integer::lcm(d1.field().degree(), d2.field().degree());
    let big = field_make(d1.p(), n)?;
    let (e1, e2) = (d1.embed(&big), d2.embed(&big));
    let (p1, p2) = (e1.cover.points(), e2.cover.points());
    let r = d1.r();
    let std1 = Mobius::to_standard(&big, &p1[0], &p1[1], &p1[2]).ok_or(DegenError::Incomparable)?;
    for j0 in 0..r {
        for j1 in 0..r {
            for j2 in 0..r {
                if j0 == j1 || j1 == j2 || j0 == j2 || l2[j0] != l1[0] || l2[j1] != l1[1] || l2[j2] != l1[2] {
                    continue;
                }
                let Some(std2) = Mobius::to_standard(&big, &p2[j0], &p2[j1], &p2[j2]) else { continue };
                let phi = std2.inverse().compose(&std1);
                let perm: Option<Vec<usize>> = (0..r)
                    .map(|i| {
                        let img = phi.apply(&p1[i]);
                        (0..r).find(|&j| p2[j] == img && l2[j] == l1[i])
                    })
                    .collect();
                if let Some(perm) = perm {
                    if pulls_back(&e1, &e2, &phi, &perm) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// With `phi(tau_i) = tau'_{perm(i)}`: `z' o phi = kappa^{1/m} g z` and
/// `phi^* (h' z' dx) = R kappa^{1/m} h z dx`; the scalar lies in `F_p^x`
/// up to the `mu` factors iff `R^{p-1} kappa^alpha rad_2 / rad_1 = 1`.
fn pulls_back(d1: &SpecialDegenerationDatum, d2: &SpecialDegenerationDatum, phi: &Mobius, perm: &[usize]) -> bool {
    let f = d1.field().clone();
    let p = f.characteristic();
    let (t1, t2) = (&d1.cover, &d2.cover);
    let r = t1.r();
    let mut inv = vec![0usize; r];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let det = phi.det();
    let c_zero = phi.c.is_zero();
    let lin = Polynomial::new(&f, vec![phi.d.clone(), phi.c.clone()]);
    let num_map = Polynomial::new(&f, vec![phi.b.clone(), phi.a.clone()]);
    let (w1, w2) = (&d1.omega, &d2.omega);
    if w1.is_zero() || w2.is_zero() {
        return false;
    }

    let mut kappa = f.one();
    let mut kappa_c = f.one();
    let mut s_prime = 0u64;
    let mut den_lin: Vec<(FieldElement, u64)> = Vec::new();
    for (j, pt) in t2.points().iter().enumerate() {
        if pt.is_infinity() {
            continue;
        }
        let i = inv[j];
        let kj = match &t1.points()[i] {
            BranchPoint::Finite(tau) => {
                den_lin.push((tau.clone(), w2.denom_exps()[j]));
                &det * &(&phi.c * tau + &phi.d).inv().expect("finite image")
            }
            BranchPoint::Infinity => -(&det * &phi.c.inv().expect("infinity maps to a finite point")),
        };
        kappa = kappa * kj.pow(t2.a()[j]);
        kappa_c = kappa_c * kj.pow(w2.denom_exps()[j]);
        s_prime += t2.a()[j];
    }
    let kappa_t = if c_zero {
        kappa * phi.d.inv().unwrap().pow(s_prime)
    } else {
        let a_i0 = t2.infinity_index().map_or(0, |j| t1.a()[inv[j]]);
        kappa * phi.c.pow(a_i0)
    };

    // U'(phi(x)) = N1 / L^D
    let u2 = w2.numerator();
    let deg = u2.degree().unwrap();
    let mut lpow = vec![Polynomial::one(&f)];
    let mut apow = vec![Polynomial::one(&f)];
    for k in 0..deg {
        lpow.push(lpow[k].mul(&lin));
        apow.push(apow[k].mul(&num_map));
    }
    let mut n1 = Polynomial::zero(&f);
    for k in 0..=deg {
        n1 = n1.add(&apow[k].mul(&lpow[deg - k]).scale(&u2.coeff(k)));
    }
    let sum_c2: i64 = w2.denom_exps().iter().map(|&c| c as i64).sum();
    let e = sum_c2 - deg as i64 - 2 - i64::from(!c_zero);

    let mut num = n1.scale(&det);
    for (i, tau) in t1.finite_points() {
        num = num.mul(&Polynomial::linear(&tau).pow(w1.denom_exps()[i] as u64));
    }
    let mut den = w1.numerator().scale(&kappa_c);
    for (tau, c) in &den_lin {
        den = den.mul(&Polynomial::linear(tau).pow(*c as u64));
    }
    if c_zero {
        let s = if e >= 0 { phi.d.pow(e as u64) } else { phi.d.inv().unwrap().pow((-e) as u64) };
        num = num.scale(&s);
    } else if e >= 0 {
        num = num.mul(&lin.pow(e as u64));
    } else {
        den = den.mul(&lin.pow((-e) as u64));
    }
    if num.degree() != den.degree() || den.is_zero() {
        return false;
    }
    let ratio = num.leading().unwrap() * den.leading().unwrap().inv().unwrap();
    if den.scale(&ratio) != num {
        return false;
    }
    let alpha = (p - 1) / t1.m();
    let rad1 = d1.pending_radicand();
    let rad2 = d2.pending_radicand();
    let test = ratio.pow(p - 1) * kappa_t.pow(alpha) * rad2 * rad1.inv().expect("nonzero radicand");
    test.is_one()
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_r4, EnumerateOptions};
    use super::*;

    #[test]
    fn mobius_standard_form() {
        let f = field_make(13, 1).unwrap();
        let pts = [BranchPoint::Finite(f.from_int(5)), BranchPoint::Finite(f.from_int(2)), BranchPoint::Infinity];
        let m = Mobius::to_standard(&f, &pts[0], &pts[1], &pts[2]).unwrap();
        assert_eq!(m.apply(&pts[0]), BranchPoint::Finite(f.zero()));
        assert_eq!(m.apply(&pts[1]), BranchPoint::Finite(f.one()));
        assert_eq!(m.apply(&pts[2]), BranchPoint::Infinity);
        let back = m.inverse().compose(&m);
        for v in 0..13 {
            let x = BranchPoint::Finite(f.from_int(v));
            assert_eq!(back.apply(&x), x);
        }
    }

    #[test]
    fn self_and_scaled_equivalence() {
        let data = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        for d in &data {
            assert!(equivalent(d, d).unwrap());
            assert!(equivalent(d, &d.scaled(&d.field().from_int(5))).unwrap());
        }
        // a multiple outside F_p is not a datum and is not equivalent
        let d = &data[0];
        let f = field_make(13, num_integer::lcm(d.field().degree(), 2)).unwrap();
        assert!(!equivalent(d, &d.embed(&f).scaled(&f.generator())).unwrap());
    }

    #[test]
    fn inverse_lambda_data_are_equivalent() {
        // all a equal: x -> x / lambda carries (0,1,4,inf) to (0,10,1,inf)
        let data = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        assert_eq!(data.len(), 2);
        assert!(equivalent(&data[0], &data[1]).unwrap());
        assert_eq!(canonical_key(&data[0]).unwrap(), canonical_key(&data[1]).unwrap());
    }

    #[test]
    fn keys_agree_with_mobius_route() {
        for (p, m, a) in [(13u64, 6u64, [3u64, 1, 1, 1]), (13, 12, [3, 4, 2, 3]), (7, 6, [3, 1, 1, 1]), (11, 10, [3, 2, 2, 3])] {
            let data = enumerate_r4(p, m, &a, EnumerateOptions::default()).unwrap();
            for x in &data {
                for y in &data {
                    let keys = canonical_key(x).unwrap() == canonical_key(y).unwrap();
                    assert_eq!(keys, equivalent(x, y).unwrap(), "p={p} m={m} a={a:?}");
                }
            }
        }
    }

    #[test]
    fn mixed_types_rejected() {
        let d13 = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        let d7 = enumerate_r4(7, 6, &[3, 1, 1, 1], EnumerateOptions::default()).unwrap();
        assert_eq!(equivalent(&d13[0], &d7[0]), Err(DegenError::Incomparable));
    }
}
