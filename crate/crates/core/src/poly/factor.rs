//! Square-free decomposition, distinct- and equal-degree factorization, and
//! root finding over `F_q`, `q = p^n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Polynomial;
use crate::ff::{field_make, Field, FieldElement, Raw};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ZeroPolynomial,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => f.write_str("the zero polynomial has no roots or factors"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PolyError {}

/// `true` iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &Polynomial) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(f.gcd(&f.derivative()).is_constant())
}

/// Pairs `(g, i)` with `g` monic square-free, pairwise coprime, and
/// `f = lc(f) * prod g^i`.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    sqf_rec(&f.make_monic(), 1, &mut out);
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    Ok(out)
}

fn sqf_rec(f: &Polynomial, mult: usize, out: &mut Vec<(Polynomial, usize)>) {
    if f.is_constant() {
        return;
    }
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !c.is_constant() {
        // c is a polynomial in x^p; take its p-th root
        let deg = c.degree().unwrap();
        let coeffs: Vec<Raw> =
            (0..=deg / p).map(|k| field.raw_frobenius_inv(&c.raw_coeff(k * p))).collect();
        let root = Polynomial::from_raw(&field, coeffs);
        sqf_rec(&root, mult * p, out);
    }
}

/// The `p`-power map on `F_q[x]/(g)`, `y -> y^p`, tabulated through the
/// images of `x^{jp}`.
struct PowerMap {
    g: Polynomial,
    table: Vec<Polynomial>,
}

impl PowerMap {
    fn new(g: &Polynomial) -> Self {
        let field = g.field();
        let p = field.characteristic();
        let deg = g.degree().expect("nonzero modulus");
        let xp = Polynomial::x(field).powmod_u64(p, g);
        let mut table = Vec::with_capacity(deg);
        let mut cur = Polynomial::one(field).rem(g);
        for _ in 0..deg {
            table.push(cur.clone());
            cur = cur.mulmod(&xp, g);
        }
        PowerMap { g: g.clone(), table }
    }

    fn apply(&self, y: &Polynomial) -> Polynomial {
        let field = self.g.field();
        let deg = self.table.len();
        let mut acc = vec![field.raw_zero(); deg];
        for (j, c) in y.raw_coeffs().iter().enumerate() {
            if Field::raw_is_zero(c) {
                continue;
            }
            let s = field.raw_frobenius(c);
            for (k, t) in self.table[j].raw_coeffs().iter().enumerate() {
                let v = field.raw_mul(&s, t);
                field.raw_add_assign(&mut acc[k], &v);
            }
        }
        Polynomial::from_raw(field, acc)
    }

    /// `y^{q}` where `q` is the size of the coefficient field.
    fn apply_q(&self, y: &Polynomial) -> Polynomial {
        let mut cur = y.clone();
        for _ in 0..self.g.field().degree() {
            cur = self.apply(&cur);
        }
        cur
    }
}

/// Distinct-degree factorization of a monic square-free `f`: pairs
/// `(d, g)` where `g` is the product of all irreducible factors of degree `d`.
pub fn ddf(f: &Polynomial) -> Vec<(usize, Polynomial)> {
    let field = f.field().clone();
    let mut out = Vec::new();
    let mut rest = f.make_monic();
    let x = Polynomial::x(&field);
    let mut d = 0usize;
    let pm = PowerMap::new(&rest);
    let mut h = x.rem(&rest);
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((deg, rest.clone()));
            }
            break;
        }
        d += 1;
        // h = x^{q^d} mod f (computed modulo the original f; reduction
        // modulo the shrinking rest is consistent)
        h = pm.apply_q(&h);
        let g = rest.gcd(&h.sub(&x).rem(&rest));
        if !g.is_constant() {
            rest = rest.div_exact(&g).expect("gcd divides");
            out.push((d, g));
        }
    }
    out
}

/// Deterministic stream of pseudo-random residues.
pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn element(&mut self, field: &Field) -> Raw {
        let p = field.characteristic();
        (0..field.degree()).map(|_| self.next_u64() % p).collect()
    }
}

/// Splits a monic square-free `f` whose irreducible factors all have degree
/// `d` into those factors, sorted.
pub fn edf(f: &Polynomial, d: usize) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut rng = SplitMix::new(0x5eed ^ (f.len() as u64));
    edf_rec(&f.make_monic(), d, &mut rng, &mut out);
    out.sort();
    out
}

fn edf_rec(f: &Polynomial, d: usize, rng: &mut SplitMix, out: &mut Vec<Polynomial>) {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return;
    }
    if deg == d {
        out.push(f.clone());
        return;
    }
    let (a, b) = split(f, d, rng);
    edf_rec(&a, d, rng, out);
    edf_rec(&b, d, rng, out);
}

/// A nontrivial factorization `f = a*b` of a product of at least two
/// degree-`d` irreducibles, via the absolute trace to `F_p`.
fn split(f: &Polynomial, d: usize, rng: &mut SplitMix) -> (Polynomial, Polynomial) {
    let field = f.field();
    let p = field.characteristic();
    let deg = f.degree().unwrap();
    let pm = PowerMap::new(f);
    let steps = field.degree() * d;
    loop {
        let a = Polynomial::from_raw(field, (0..deg).map(|_| rng.element(field)).collect());
        if a.is_constant() {
            continue;
        }
        // T = a + a^p + ... + a^{p^{steps-1}}, values in F_p on each factor
        let mut t = a.clone();
        let mut cur = a;
        for _ in 1..steps {
            cur = pm.apply(&cur);
            t = t.add(&cur);
        }
        let candidate = if p == 2 {
            t
        } else {
            t.powmod_u64((p - 1) / 2, f).sub(&Polynomial::one(field))
        };
        let g = f.gcd(&candidate);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < deg {
                let h = f.div_exact(&g).expect("gcd divides");
                return (g, h);
            }
        }
    }
}

/// Monic irreducible factors with multiplicity, sorted by
/// (degree, coefficients).
pub fn factor(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>, PolyError> {
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f)? {
        for (d, part) in ddf(&g) {
            for h in edf(&part, d) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Roots lying in `f`'s own field with multiplicity, sorted by the element
/// order. The zero polynomial has no roots reported.
pub fn roots_in_field(f: &Polynomial) -> Vec<(FieldElement, usize)> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f).expect("nonzero") {
        for r in linear_roots(&g) {
            out.push((r, mult));
        }
    }
    out.sort();
    out
}

/// Roots in the coefficient field of a monic square-free `g`.
fn linear_roots(g: &Polynomial) -> Vec<FieldElement> {
    let field = g.field();
    let x = Polynomial::x(field);
    let deg = match g.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let lin = if deg == 1 {
        g.clone()
    } else {
        let pm = PowerMap::new(g);
        let xq = pm.apply_q(&x.rem(g));
        g.gcd(&xq.sub(&x))
    };
    edf(&lin, 1)
        .into_iter()
        .map(|h| -h.coeff(0))
        .collect()
}

/// A root of `f` in an extension of its coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRoot {
    pub root: FieldElement,
    pub multiplicity: usize,
    /// Degree of `F(root)` over the coefficient field `F` of `f`; `root`
    /// is expressed in the field of degree `n * relative_degree` over `F_p`.
    pub relative_degree: usize,
}

impl ExtensionRoot {
    pub fn field(&self) -> &Field {
        self.root.field()
    }
}

/// All roots of `f` in extensions of relative degree at most `max_deg`
/// (unbounded when `None`). Each root appears once, in the smallest
/// extension of `f`'s field containing it, together with its multiplicity.
/// Sorted by (relative degree, root).
pub fn roots_in_extensions(f: &Polynomial, max_deg: Option<usize>) -> Result<Vec<ExtensionRoot>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let field = f.field();
    let p = field.characteristic();
    let n = field.degree();
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(f)? {
        for (d, part) in ddf(&g) {
            if max_deg.is_some_and(|m| d > m) {
                continue;
            }
            let big = if d == 1 { field.clone() } else { field_make(p, n * d).expect("valid field") };
            for h in edf(&part, d) {
                for r in conjugate_roots(&h, &big) {
                    out.push(ExtensionRoot { root: r, multiplicity: mult, relative_degree: d });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.relative_degree, &a.root).cmp(&(b.relative_degree, &b.root)));
    Ok(out)
}

/// One root of an irreducible `h` over `F` inside `big = F_{q^d}`, where
/// `d = deg h`.
pub fn root_of_irreducible(h: &Polynomial, big: &Field) -> FieldElement {
    let d = h.degree().expect("nonzero");
    let hb = h.embed(big);
    if d == 1 {
        return -hb.make_monic().coeff(0);
    }
    split_to_root(&hb, d)
}

fn split_to_root(hb: &Polynomial, d: usize) -> FieldElement {
    let mut rng = SplitMix::new(0xC0FFEE ^ d as u64);
    let mut cur = hb.make_monic();
    while cur.degree().unwrap() > 1 {
        let (a, b) = split(&cur, 1, &mut rng);
        cur = if a.degree() <= b.degree() { a } else { b };
    }
    -cur.coeff(0)
}

/// All roots of an irreducible `h` over `F` inside `big = F_{q^d}`, found by
/// splitting off one linear factor and taking `q`-power conjugates.
pub(crate) fn conjugate_roots(h: &Polynomial, big: &Field) -> Vec<FieldElement> {
    let d = h.degree().expect("nonzero");
    let hb = h.embed(big);
    if d == 1 {
        return linear_roots(&hb);
    }
    let r0 = split_to_root(&hb, d);
    let n = h.field().degree();
    let mut roots = Vec::with_capacity(d);
    let mut r = r0;
    for _ in 0..d {
        roots.push(r.clone());
        for _ in 0..n {
            r = r.frobenius();
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{embed, field_make};
    use crate::poly::product_of_linear_powers;
    use proptest::prelude::*;

    fn poly(f: &Field, cs: &[i64]) -> Polynomial {
        Polynomial::new(f, cs.iter().map(|&c| f.from_int(c)).collect())
    }

    #[test]
    fn roots_of_x2_minus_1() {
        let f = field_make(13, 1).unwrap();
        let r = roots_in_extensions(&poly(&f, &[-1, 0, 1]), Some(2)).unwrap();
        let vals: Vec<(u64, usize)> = r.iter().map(|e| (e.root.as_prime().unwrap(), e.multiplicity)).collect();
        assert_eq!(vals, [(1, 1), (12, 1)]);
    }

    #[test]
    fn roots_of_quadratic_example() {
        let f = field_make(13, 1).unwrap();
        let phi = poly(&f, &[10, 3, 10]);
        let r = roots_in_extensions(&phi, Some(2)).unwrap();
        let vals: Vec<u64> = r.iter().map(|e| e.root.as_prime().unwrap()).collect();
        assert_eq!(vals, [4, 10]);
        // exhaustive evaluation oracle
        let brute: Vec<u64> =
            f.elements().filter(|x| phi.eval(x).is_zero()).map(|x| x.as_prime().unwrap()).collect();
        assert_eq!(brute, vals);
    }

    #[test]
    fn x2_plus_1_over_f7() {
        let f = field_make(7, 1).unwrap();
        let g = poly(&f, &[1, 0, 1]);
        assert!(roots_in_extensions(&g, Some(1)).unwrap().is_empty());
        let r = roots_in_extensions(&g, Some(2)).unwrap();
        assert_eq!(r.len(), 2);
        for e in &r {
            assert_eq!(e.field().degree(), 2);
            assert!(g.embed(e.field()).eval(&e.root).is_zero());
        }
        assert_ne!(r[0].root, r[1].root);
    }

    #[test]
    fn squarefree_checks() {
        let f = field_make(13, 1).unwrap();
        assert!(is_squarefree(&poly(&f, &[-1, 0, 1])).unwrap());
        assert!(!is_squarefree(&poly(&f, &[1, -2, 1])).unwrap());
        assert_eq!(is_squarefree(&Polynomial::zero(&f)), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn squarefree_decomposition_handles_pth_powers() {
        let f = field_make(3, 2).unwrap();
        let t = f.generator();
        // (x - t)^3 (x - 1)^2 (x + 1)^6
        let g = product_of_linear_powers(&f, &[t.clone(), f.one(), f.from_int(-1)], &[3, 2, 6]);
        let d = squarefree_decomposition(&g).unwrap();
        let mults: Vec<usize> = d.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, [2, 3, 6]);
        let roots = roots_in_field(&g);
        assert_eq!(roots.len(), 3);
        for (r, m) in roots {
            let expected = if r == t { 3 } else if r.is_one() { 2 } else { 6 };
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn factor_over_extension() {
        let f = field_make(5, 2).unwrap();
        // x^4 - 2 over F_25
        let g = poly(&f, &[-2, 0, 0, 0, 1]);
        let fac = factor(&g).unwrap();
        let mut prod = Polynomial::one(&f);
        for (h, m) in &fac {
            assert!(h.is_monic());
            prod = prod.mul(&h.pow(*m as u64));
            // irreducible: no roots in extensions below its degree
            let d = h.degree().unwrap();
            let rs = roots_in_extensions(h, Some(d)).unwrap();
            assert!(rs.iter().all(|r| r.relative_degree == d));
            assert_eq!(rs.len(), d);
        }
        assert_eq!(prod, g);
    }

    fn brute_roots(g: &Polynomial, big: &Field) -> Vec<FieldElement> {
        let gb = g.embed(big);
        big.elements().filter(|x| gb.eval(x).is_zero()).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn roots_divide_exactly(cs in proptest::collection::vec(0u64..5, 2..8)) {
            let f = field_make(5, 1).unwrap();
            let g = Polynomial::new(&f, cs.iter().map(|&c| f.from_int(c as i64)).collect());
            prop_assume!(g.degree().unwrap_or(0) >= 1);
            let rs = roots_in_extensions(&g, Some(3)).unwrap();
            let mut weight = 0;
            for r in &rs {
                let gb = g.embed(r.field());
                let lin = Polynomial::linear(&r.root);
                prop_assert!(gb.div_exact(&lin.pow(r.multiplicity as u64)).is_some());
                prop_assert!(gb.div_exact(&lin.pow(r.multiplicity as u64 + 1)).is_none());
                weight += r.multiplicity;
            }
            prop_assert!(weight <= g.degree().unwrap());
            // every root in F_{5^2} found, compared with exhaustive evaluation
            let big = field_make(5, 2).unwrap();
            let mut expected = brute_roots(&g, &big);
            let mut found: Vec<FieldElement> = rs.iter()
                .filter(|r| r.relative_degree <= 2)
                .map(|r| embed(&r.root, &big).unwrap())
                .collect();
            expected.sort();
            found.sort();
            // roots of relative degree 2 are already expressed in F_25
            prop_assert_eq!(found, expected);
        }
    }
}
