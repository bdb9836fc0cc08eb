//! Linear solves for eigen-differentials with prescribed lower bounds on
//! their orders.

use alloc::vec;
use alloc::vec::Vec;

use super::{divisor_of, euler_characteristic, ram_entry, CoverError, CoverType, EigenDifferential};
use crate::ff::{Field, FieldElement, Raw};
use crate::linalg::Matrix;
use crate::poly::{binom_mod_p, Polynomial};

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Basis of `{h z dx : ord >= bound_i over branch point i, ord >= bound_inf
/// over an unbranched infinity, regular elsewhere}`.
///
/// Each finite branch point gets a generous pole allowance `C_i`; the
/// unknowns are the coefficients of `U` in `h = U / prod (x - tau_i)^{C_i}`,
/// truncated by the bound at infinity, and the bounds at finite points
/// become vanishing conditions on the Taylor coefficients of `U`.
pub fn regular_space(t: &CoverType, bounds: &[i64], bound_inf: i64) -> Result<Vec<EigenDifferential>, CoverError> {
    if bounds.len() != t.r() {
        return Err(CoverError::WrongArity { expected: t.r(), found: bounds.len() });
    }
    let c = t.connected_model();
    let field = c.field().clone();
    let p = field.characteristic();
    let m = c.m() as i64;
    let s = c.finite_exponent_sum() as i64;

    let mut poles = vec![0i64; c.r()];
    let mut vanish = vec![0i64; c.r()];
    for (i, pt) in c.points().iter().enumerate() {
        if pt.is_infinity() {
            continue;
        }
        let e = ram_entry(c.m(), c.a()[i]);
        let (mi, at) = (e.ramification as i64, e.reduced_exponent as i64);
        // v_i(h) >= k_i  <=>  order over tau_i >= bounds[i]
        let k = div_ceil(bounds[i] - at - mi + 1, mi);
        poles[i] = (-k).max(0) + 1;
        vanish[i] = poles[i] + k;
    }
    let sum_c: i64 = poles.iter().sum();
    let max_deg = match c.infinity_index() {
        Some(j) => {
            let e = ram_entry(c.m(), c.a()[j]);
            let mi = e.ramification as i64;
            sum_c - div_ceil(bounds[j] + s * mi / m + mi + 1, mi)
        }
        None => sum_c - s / m - 2 - bound_inf,
    };
    if max_deg < 0 {
        return Ok(Vec::new());
    }
    let unknowns = max_deg as usize + 1;

    // Taylor coefficient j of U at tau: sum_k u_k C(k, j) tau^{k-j}
    let mut rows: Vec<Vec<Raw>> = Vec::new();
    for (i, tau) in c.finite_points() {
        let mut pows: Vec<Raw> = Vec::with_capacity(unknowns);
        let mut cur = field.raw_one();
        for _ in 0..unknowns {
            pows.push(cur.clone());
            cur = field.raw_mul(&cur, tau.raw());
        }
        for j in 0..vanish[i].max(0) as usize {
            let row: Vec<Raw> = (0..unknowns)
                .map(|k| {
                    if k < j {
                        field.raw_zero()
                    } else {
                        field.raw_scale(binom_mod_p(k as u64, j as u64, p), &pows[k - j])
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns)
            .map(|k| {
                let mut v = vec![field.zero(); unknowns];
                v[k] = field.one();
                v
            })
            .collect()
    } else {
        Matrix::from_raw_rows(&field, rows, unknowns).kernel()
    };
    let signed = poles.clone();
    kernel
        .into_iter()
        .map(|v| EigenDifferential::new(t, Polynomial::new(&field, v), &signed))
        .collect()
}

/// Basis of the regular eigen-differentials `h z dx`. For a valid,
/// connected, multiplicative type it has exactly `r - 2` elements; any
/// other count is reported as an error.
pub fn eigen_basis(t: &CoverType) -> Result<Vec<EigenDifferential>, CoverError> {
    t.require_multiplicative_connected()?;
    let basis = regular_space(t, &vec![0; t.r()], 0)?;
    if basis.len() != t.r() - 2 {
        return Err(CoverError::DimensionMismatch { expected: t.r() - 2, found: basis.len() });
    }
    Ok(basis)
}

/// The differential with order exactly `m_i nu_i + a~_i - 1` over every
/// branch point and no other zeros or poles, if one exists.
pub fn eigen_with_divisor(t: &CoverType, nu: &[i64]) -> Result<Option<EigenDifferential>, CoverError> {
    t.require_valid()?;
    if nu.len() != t.r() {
        return Err(CoverError::WrongArity { expected: t.r(), found: nu.len() });
    }
    let c = t.connected_model();
    let targets: Vec<i64> = c
        .a()
        .iter()
        .zip(nu)
        .map(|(&a, &n)| {
            let e = ram_entry(c.m(), a);
            e.ramification as i64 * n + e.reduced_exponent as i64 - 1
        })
        .collect();
    let found: i64 = c
        .a()
        .iter()
        .zip(&targets)
        .map(|(&a, &o)| ram_entry(c.m(), a).fiber_size as i64 * o)
        .sum();
    let expected = euler_characteristic(&c);
    if found != expected {
        return Err(CoverError::DegreeMismatch { expected, found });
    }
    let space = regular_space(t, &targets, 0)?;
    match space.len() {
        0 => Ok(None),
        1 => {
            let w = space.into_iter().next().unwrap();
            Ok(divisor_matches(&w, nu)?.then_some(w))
        }
        n => Err(CoverError::NotUnique { dimension: n }),
    }
}

/// Whether `w` has order exactly `m_i nu_i + a~_i - 1` over every branch
/// point and no other zeros or poles.
pub fn divisor_matches(w: &EigenDifferential, nu: &[i64]) -> Result<bool, CoverError> {
    let t = w.cover();
    if nu.len() != t.r() {
        return Err(CoverError::WrongArity { expected: t.r(), found: nu.len() });
    }
    let c = t.connected_model();
    let div = divisor_of(w)?;
    let exact = c.a().iter().zip(nu).enumerate().all(|(i, (&a, &n))| {
        let e = ram_entry(c.m(), a);
        div.branch_order(i) == Some(e.ramification as i64 * n + e.reduced_exponent as i64 - 1)
    }) && div.fiber_terms().next().is_none()
        && div.infinity_order().map_or(true, |o| o == 0);
    Ok(exact)
}

/// Coordinates of `w` in the span of `basis`, if it lies there.
pub fn coordinates(basis: &[EigenDifferential], w: &EigenDifferential) -> Option<Vec<FieldElement>> {
    let field: Field = w.field().clone();
    if basis.is_empty() {
        return w.is_zero().then(Vec::new);
    }
    let mut exps = w.denom_exps().to_vec();
    for b in basis {
        for (e, c) in exps.iter_mut().zip(b.denom_exps()) {
            *e = (*e).max(*c);
        }
    }
    let nums: Vec<Polynomial> = basis.iter().map(|b| b.numerator_over(&exps)).collect();
    let target = w.numerator_over(&exps);
    let len = nums.iter().map(Polynomial::len).chain(core::iter::once(target.len())).max().unwrap_or(0);
    let rows: Vec<Vec<FieldElement>> =
        (0..len).map(|k| nums.iter().map(|u| u.coeff(k)).collect()).collect();
    let rhs: Vec<FieldElement> = (0..len).map(|k| target.coeff(k)).collect();
    if len == 0 {
        return Some(vec![field.zero(); basis.len()]);
    }
    Matrix::from_rows(&field, rows).solve(&rhs)
}

#[cfg(test)]
mod tests {
    use super::super::tests::cover;
    use super::*;
    use crate::ff::field_make;

    #[test]
    fn basis_sizes() {
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        assert_eq!(eigen_basis(&t).unwrap().len(), 2);
        let t = cover(13, 4, &[Some(0), Some(1), None], &[1, 1, 2]);
        assert_eq!(eigen_basis(&t).unwrap().len(), 1);
        let t = cover(7, 6, &[Some(0), Some(1), Some(3), None], &[3, 1, 1, 1]);
        assert_eq!(eigen_basis(&t).unwrap().len(), 2);
    }

    #[test]
    fn basis_is_regular() {
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), Some(6), None], &[1, 1, 1, 0, 1]);
        assert!(eigen_basis(&t).is_err());
        let t = cover(13, 6, &[Some(0), Some(1), Some(4), Some(6), None], &[1, 1, 2, 1, 1]);
        for w in eigen_basis(&t).unwrap() {
            let d = divisor_of(&w).unwrap();
            assert!(d.terms.iter().all(|term| term.order >= 0));
        }
    }

    #[test]
    fn prescribed_divisor_matches_closed_form() {
        // nu = (1,0,0,0) at (0,1,4,inf): h = c / ((x-1)(x-4))
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        let w = eigen_with_divisor(&t, &[1, 0, 0, 0]).unwrap().unwrap();
        assert_eq!(w.denom_exps(), &[0, 1, 1, 0]);
        assert_eq!(w.numerator().degree(), Some(0));
        let d = divisor_of(&w).unwrap();
        assert_eq!(d.branch_order(0), Some(4));
        for i in 1..4 {
            assert_eq!(d.branch_order(i), Some(0));
        }
    }

    #[test]
    fn degree_mismatch_reported_first() {
        let t = cover(13, 4, &[Some(0), Some(1), Some(4), None], &[1, 1, 1, 1]);
        assert!(matches!(eigen_with_divisor(&t, &[1, 1, 0, 0]), Err(CoverError::DegreeMismatch { .. })));
    }

    #[test]
    fn meromorphic_case_r5() {
        let t = cover(13, 6, &[Some(0), Some(1), Some(4), Some(6), None], &[1, 1, 2, 1, 1]);
        let w = eigen_with_divisor(&t, &[-1, 1, 1, 1, 0]).unwrap().unwrap();
        let d = divisor_of(&w).unwrap();
        assert!(d.branch_order(0).unwrap() < 0);
    }

    #[test]
    fn coordinates_roundtrip() {
        let t = cover(13, 6, &[Some(0), Some(1), Some(4), Some(6), None], &[1, 1, 2, 1, 1]);
        let basis = eigen_basis(&t).unwrap();
        let f = field_make(13, 1).unwrap();
        let combo = basis[0].scale(&f.from_int(3)).add(&basis[2].scale(&f.from_int(5)));
        let c = coordinates(&basis, &combo).unwrap();
        assert_eq!(c, [f.from_int(3), f.zero(), f.from_int(5)]);
    }
}
