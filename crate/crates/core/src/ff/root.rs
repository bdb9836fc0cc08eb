use alloc::vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{embed, field_make, Field, FieldElement, FieldError};
use crate::linalg::Matrix;
use crate::poly::{roots_in_field, Polynomial};
use alloc::vec::Vec;

/// Smallest `e >= 1` such that `x` has a `k`-th root in the degree-`e`
/// extension of its field. Zero always has a root in the base field.
pub fn kth_root_degree(x: &FieldElement, k: u64) -> Result<usize, FieldError> {
    if k == 0 {
        return Err(FieldError::ZeroRootIndex);
    }
    if x.is_zero() {
        return Ok(1);
    }
    let field = x.field();
    let q = field.order();
    let unit = &q - BigUint::one();
    let kk = BigUint::from(k);
    if (&unit % &kk).bits() == 0 {
        // k | q - 1: with y = x^{(q-1)/k}, x^{(q^e-1)/k} = y^{1 + q + ... + q^{e-1}} = y^e
        let y = x.pow_big(&(&unit / &kk));
        let mut acc = y.clone();
        let mut e = 1usize;
        while !acc.is_one() {
            acc = &acc * &y;
            e += 1;
        }
        return Ok(e);
    }
    let mut big_q = q.clone();
    let mut e = 1usize;
    loop {
        let qm1 = &big_q - BigUint::one();
        let g = kk.gcd(&qm1);
        // x lies in the base field, so its order divides q - 1
        let exp = (&qm1 / &g) % &unit;
        if x.pow_big(&exp).is_one() {
            return Ok(e);
        }
        e += 1;
        big_q *= &q;
    }
}

/// A `k`-th root of `x` in the smallest extension of `x`'s field that
/// contains one, together with that extension. Among all roots there, the
/// least in coordinate order is returned.
pub fn kth_root(x: &FieldElement, k: u64) -> Result<(FieldElement, Field), FieldError> {
    let e = kth_root_degree(x, k)?;
    let base = x.field();
    let target = if e == 1 {
        base.clone()
    } else {
        field_make(base.characteristic(), base.degree() * e)?
    };
    if x.is_zero() {
        return Ok((target.zero(), target));
    }
    let xe = embed(x, &target)?;
    if k == target.characteristic() - 1 {
        return Ok((frobenius_eigenvector(&xe), target));
    }
    // y^k - x
    let mut coeffs = vec![target.zero(); k as usize + 1];
    coeffs[0] = -xe;
    coeffs[k as usize] = target.one();
    let f = Polynomial::new(&target, coeffs);
    let root = roots_in_field(&f).into_iter().next().expect("a root exists at the computed degree").0;
    Ok((root, target))
}

/// The least `y` with `y^{p-1} = c`, assuming one exists. Such `y` are the
/// nonzero solutions of the `F_p`-linear equation `y^p = c y`; they form an
/// `F_p`-line, and the least one has first nonzero coordinate 1.
fn frobenius_eigenvector(c: &FieldElement) -> FieldElement {
    let field = c.field();
    let n = field.degree();
    let prime = field_make(field.characteristic(), 1).expect("prime field");
    let mut m = Matrix::zeros(&prime, n, n);
    for j in 0..n {
        let mut b = field.raw_zero();
        b[j] = 1;
        let img = field.raw_sub(&field.raw_frobenius(&b), &field.raw_mul(c.raw(), &b));
        for (i, v) in img.into_iter().enumerate() {
            m.set_raw(i, j, vec![v]);
        }
    }
    let kernel = m.kernel();
    debug_assert_eq!(kernel.len(), 1);
    let coords: Vec<u64> = kernel[0].iter().map(|v| v.as_prime().unwrap()).collect();
    let lead = coords.iter().copied().find(|&v| v != 0).expect("nonzero kernel vector");
    let p = field.characteristic();
    let scale = super::prime::inv_mod(lead, p);
    field.element(coords.iter().map(|&v| v * scale % p).collect()).expect("length n")
}
