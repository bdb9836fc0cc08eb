//! Dense univariate polynomials over a [`Field`].

mod factor;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::ff::{Embedding, Field, FieldElement, Raw};

pub use factor::{
    ddf, edf, factor, is_squarefree, root_of_irreducible, roots_in_extensions, roots_in_field, squarefree_decomposition,
    ExtensionRoot, PolyError,
};

/// Polynomial with coefficients least-degree-first, trailing zeros trimmed.
#[derive(Clone)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Raw>,
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let raw = coeffs
            .into_iter()
            .map(|c| {
                assert!(c.field() == field, "coefficient field mismatch");
                c.into_raw()
            })
            .collect();
        Self::from_raw(field, raw)
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<Raw>) -> Self {
        while coeffs.last().is_some_and(|c| Field::raw_is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    /// Polynomial with prime-field coefficients given as residues.
    pub fn from_prime_coeffs(field: &Field, coeffs: &[u64]) -> Self {
        let raw = coeffs.iter().map(|&c| field.raw_from_prime(c)).collect();
        Self::from_raw(field, raw)
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(&field.one())
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(&field.one(), 1)
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c.raw().clone()])
    }

    pub fn monomial(c: &FieldElement, k: usize) -> Self {
        let f = c.field();
        let mut coeffs = vec![f.raw_zero(); k + 1];
        coeffs[k] = c.raw().clone();
        Self::from_raw(f, coeffs)
    }

    /// `x - a`.
    pub fn linear(a: &FieldElement) -> Self {
        let f = a.field();
        Self::from_raw(f, vec![f.raw_neg(a.raw()), f.raw_one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|c| FieldElement::from_raw(&self.field, c.clone())).collect()
    }

    pub(crate) fn raw_coeffs(&self) -> &[Raw] {
        &self.coeffs
    }

    pub(crate) fn raw_coeff(&self, k: usize) -> Raw {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.raw_zero())
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> FieldElement {
        FieldElement::from_raw(&self.field, self.raw_coeff(k))
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|c| FieldElement::from_raw(&self.field, c.clone()))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c[0] == 1 && c[1..].iter().all(|&v| v == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest power of `x` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Field::raw_is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.raw_zero();
        let coeffs = (0..n)
            .map(|i| f.raw_add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.raw_zero();
        let coeffs = (0..n)
            .map(|i| f.raw_sub(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|c| f.raw_neg(c)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = &self.field;
        if c.is_zero() {
            return Self::zero(f);
        }
        Self::from_raw(f, self.coeffs.iter().map(|a| f.raw_mul(a, c.raw())).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.raw_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        if f.degree() == 1 {
            let p = f.characteristic();
            let mut acc = vec![0u64; out.len()];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a[0] == 0 {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + a[0] * b[0]) % p;
                }
            }
            for (o, v) in out.iter_mut().zip(acc) {
                o[0] = v;
            }
        } else {
            for (i, a) in self.coeffs.iter().enumerate() {
                if Field::raw_is_zero(a) {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    if Field::raw_is_zero(b) {
                        continue;
                    }
                    let t = f.raw_mul(a, b);
                    f.raw_add_assign(&mut out[i + j], &t);
                }
            }
        }
        Self::from_raw(f, out)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.raw_zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_raw(&self.field, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = f.raw_inv(&d.coeffs[dd]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.raw_zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if Field::raw_is_zero(&r[i]) {
                continue;
            }
            let c = f.raw_mul(&r[i], &lead_inv);
            let s = i - dd;
            for (j, dj) in d.coeffs.iter().enumerate() {
                if Field::raw_is_zero(dj) {
                    continue;
                }
                let t = f.raw_mul(&c, dj);
                r[s + j] = f.raw_sub(&r[s + j], &t);
            }
            q[s] = c;
        }
        r.truncate(dd);
        (Self::from_raw(f, q), Self::from_raw(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn make_monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.raw_inv(l).expect("nonzero");
                let f = &self.field;
                Self::from_raw(f, self.coeffs.iter().map(|c| f.raw_mul(c, &inv)).collect())
            }
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic();
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| f.raw_scale(k as u64 % p, c)).collect();
        Self::from_raw(f, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        FieldElement::from_raw(&self.field, self.eval_raw(x.raw()))
    }

    pub(crate) fn eval_raw(&self, x: &[u64]) -> Raw {
        let f = &self.field;
        let mut acc = f.raw_zero();
        for c in self.coeffs.iter().rev() {
            acc = f.raw_mul(&acc, x);
            f.raw_add_assign(&mut acc, c);
        }
        acc
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Self {
        self.powmod(&BigUint::from(e), m)
    }

    /// Applies `c -> c^{p^k}` to every coefficient.
    pub fn frobenius_coeffs(&self, k: i64) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|c| f.raw_frobenius_pow(c, k)).collect())
    }

    /// Image under a field embedding applied coefficientwise.
    pub fn map_embedding(&self, e: &Embedding) -> Self {
        assert!(self.field == *e.source(), "embedding source mismatch");
        Self::from_raw(e.target(), self.coeffs.iter().map(|c| e.apply_raw(c)).collect())
    }

    /// Coefficientwise embedding into `target`.
    pub fn embed(&self, target: &Field) -> Self {
        if self.field == *target {
            return self.clone();
        }
        let e = Embedding::new(&self.field, target).expect("compatible fields");
        self.map_embedding(&e)
    }

    /// Residues of the coefficients when they all lie in `F_p`.
    pub fn prime_coeffs(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| Field::raw_as_prime(c)).collect()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the constant term upward.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.coeffs.len(), &self.coeffs).cmp(&(other.coeffs.len(), &other.coeffs))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Field::raw_is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let e = FieldElement::from_raw(&self.field, c.clone());
            let simple = self.field.degree() == 1 || c[1..].iter().all(|&v| v == 0);
            match (k, simple) {
                (0, _) => write!(f, "{e}")?,
                (_, true) if e.is_one() => {}
                (_, true) => write!(f, "{e}*")?,
                (_, false) => write!(f, "({e})*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `C(n, k) mod p` by Lucas' theorem; zero when `k > n`.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

/// `C(n, k) mod p` for `k <= n < p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * crate::ff::prime::inv_mod(den, p) % p
}

impl Field {
    /// `C(n, k)` as an element of this field.
    pub fn binom(&self, n: u64, k: u64) -> FieldElement {
        self.from_int(binom_mod_p(n, k, self.characteristic()) as i64)
    }
}

/// `prod (x - points[i])^exps[i]`, expanded binomially factor by factor.
pub fn product_of_linear_powers(field: &Field, points: &[FieldElement], exps: &[u64]) -> Polynomial {
    assert_eq!(points.len(), exps.len(), "points and exponents differ in length");
    let mut acc = Polynomial::one(field);
    for (t, &e) in points.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        acc = acc.mul(&linear_power(t, e));
    }
    acc
}

/// `(x - t)^e = sum_j C(e, j) (-t)^{e-j} x^j`.
pub fn linear_power(t: &FieldElement, e: u64) -> Polynomial {
    let f = t.field();
    let p = f.characteristic();
    let neg = f.raw_neg(t.raw());
    let mut pows = Vec::with_capacity(e as usize + 1);
    let mut cur = f.raw_one();
    for _ in 0..=e {
        pows.push(cur.clone());
        cur = f.raw_mul(&cur, &neg);
    }
    let coeffs = (0..=e).map(|j| f.raw_scale(binom_mod_p(e, j, p), &pows[(e - j) as usize])).collect();
    Polynomial::from_raw(f, coeffs)
}

/// Coefficient of `x^k` in `f`.
pub fn coeff(f: &Polynomial, k: usize) -> FieldElement {
    f.coeff(k)
}
