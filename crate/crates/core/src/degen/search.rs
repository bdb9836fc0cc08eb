//! Exhaustive search for data with three `nu = 0` points at `0, 1, inf`.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_admissible, check_nu, validate, DegenError, Scaling, SpecialDegenerationDatum};
use crate::cartier::cartier_apply;
use crate::cover::{eigen_with_divisor, BranchPoint, CoverType};
use crate::ff::{field_make, kth_root, kth_root_degree, FieldElement};

/// Largest number of candidate tuples a sweep may visit.
pub const SEARCH_LIMIT: u128 = 10_000_000;

/// Sweeps the `nu = 1` points over tuples of distinct elements of
/// `F_{p^d} - {0, 1}` generating `F_{p^d}`, for `d <= extension_degree`,
/// with the `nu = 0` points (in index order) at `0, 1, inf`. Every hit is a
/// validated datum; `mu` is materialized when its field has degree at most
/// `mu_cap`.
pub fn search_bruteforce(
    p: u64,
    m: u64,
    a: &[u64],
    nu: &[i64],
    extension_degree: usize,
    mu_cap: usize,
) -> Result<Vec<SpecialDegenerationDatum>, DegenError> {
    check_admissible(p, m, a, None)?;
    let r = a.len();
    check_nu(nu, r)?;
    let zeros: Vec<usize> = (0..r).filter(|&i| nu[i] == 0).collect();
    let ones: Vec<usize> = (0..r).filter(|&i| nu[i] == 1).collect();
    let free = ones.len() as u32;
    let total: u128 = (1..=extension_degree).map(|d| (p as u128).pow(d as u32).pow(free)).sum();
    if total > SEARCH_LIMIT {
        return Err(DegenError::SearchTooLarge { candidates: total, limit: SEARCH_LIMIT });
    }
    let mut out = Vec::new();
    for d in 1..=extension_degree {
        if free == 0 && d > 1 {
            break;
        }
        let f = field_make(p, d)?;
        let pool: Vec<FieldElement> = f.elements().filter(|x| !x.is_zero() && !x.is_one()).collect();
        let degrees: Vec<usize> = pool.iter().map(FieldElement::degree_over_prime).collect();
        let mut idx = vec![0usize; ones.len()];
        loop {
            let distinct = (0..idx.len()).all(|i| (0..i).all(|j| idx[i] != idx[j]));
            let joint = idx.iter().fold(1usize, |acc, &i| num_integer::lcm(acc, degrees[i]));
            if distinct && (joint == d || free == 0) {
                let mut points = vec![BranchPoint::Infinity; r];
                points[zeros[0]] = BranchPoint::Finite(f.zero());
                points[zeros[1]] = BranchPoint::Finite(f.one());
                points[zeros[2]] = BranchPoint::Infinity;
                for (k, &i) in ones.iter().enumerate() {
                    points[i] = BranchPoint::Finite(pool[idx[k]].clone());
                }
                let t = CoverType::new(&f, m, points, a.to_vec());
                if let Some(datum) = try_candidate(&t, nu, mu_cap)? {
                    out.push(datum);
                }
            }
            if !advance(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < base {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// `C(w) = s w` with `s != 0` makes `mu w` fixed for `mu^{p-1} = s^p`.
fn try_candidate(t: &CoverType, nu: &[i64], mu_cap: usize) -> Result<Option<SpecialDegenerationDatum>, DegenError> {
    let Some(w) = eigen_with_divisor(t, nu)? else { return Ok(None) };
    let w = w.scale(&w.numerator().leading().unwrap().inv().unwrap());
    let image = cartier_apply(&w);
    let Some(s) = w.ratio_to(&image) else { return Ok(None) };
    if s.is_zero() {
        return Ok(None);
    }
    let p = t.p();
    let radicand = s.frobenius();
    let k = kth_root_degree(&radicand, p - 1)?;
    let datum = if t.field().degree() * k <= mu_cap {
        let (mu, big) = kth_root(&radicand, p - 1)?;
        SpecialDegenerationDatum {
            cover: t.embed(&big),
            nu: nu.to_vec(),
            omega: w.embed(&big).scale(&mu),
            scaling: Scaling::Fixed,
            r4: None,
        }
    } else {
        SpecialDegenerationDatum { cover: t.clone(), nu: nu.to_vec(), omega: w, scaling: Scaling::Radical { radicand }, r4: None }
    };
    debug_assert!(validate(&datum).is_valid());
    Ok(Some(datum))
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_r4, normalized_lambda, EnumerateOptions};
    use super::*;
    use alloc::collections::BTreeSet;

    fn hit_lambdas(hits: &[SpecialDegenerationDatum]) -> BTreeSet<FieldElement> {
        hits.iter().map(|d| normalized_lambda(d, [0, 1, 2, 3]).unwrap()).collect()
    }

    #[test]
    fn r4_hits_match_classifier() {
        let hits = search_bruteforce(13, 4, &[1, 1, 1, 1], &[1, 0, 0, 0], 1, 12).unwrap();
        let f = field_make(13, 1).unwrap();
        let expected: BTreeSet<FieldElement> = [f.from_int(4), f.from_int(10)].into_iter().collect();
        assert_eq!(hit_lambdas(&hits), expected);
        let data = enumerate_r4(13, 4, &[1, 1, 1, 1], EnumerateOptions::default()).unwrap();
        let classified: BTreeSet<FieldElement> = data.iter().map(|d| d.r4.as_ref().unwrap().lambda.descend()).collect();
        assert_eq!(classified, expected);
        for d in &hits {
            assert!(validate(d).is_valid());
        }
    }

    #[test]
    fn no_hits_for_constant_phi() {
        assert!(search_bruteforce(5, 4, &[1, 1, 1, 1], &[1, 0, 0, 0], 2, 12).unwrap().is_empty());
    }

    #[test]
    fn r5_sweep_is_finite() {
        let hits = search_bruteforce(7, 6, &[2, 1, 1, 1, 1], &[1, 1, 0, 0, 0], 1, 12).unwrap();
        for d in &hits {
            assert!(validate(d).is_valid());
        }
        assert!(hits.len() < 5 * 4);
    }

    #[test]
    fn guard_and_preconditions() {
        assert!(matches!(
            search_bruteforce(31, 30, &[1, 1, 1, 1, 1, 25], &[1, 1, 1, 0, 0, 0], 2, 12),
            Err(DegenError::SearchTooLarge { .. })
        ));
        assert!(search_bruteforce(13, 4, &[1, 1, 1, 1], &[1, 1, 0, 0], 1, 12).is_err());
    }
}
