use alloc::vec;
use alloc::vec::Vec;

use super::{prime, Field, FieldElement, FieldError, Raw};
use crate::poly::{roots_in_field, Polynomial};

/// A fixed field embedding `F_{p^a} -> F_{p^b}` with `a | b`.
///
/// The generator of the source is sent to the least root (coordinate order)
/// of the source modulus in the target. Embeddings built this way are
/// deterministic but not compatible across towers: composing
/// `F_{p^a} -> F_{p^b} -> F_{p^c}` need not equal the direct map.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Column `j` holds the image of `t^j`.
    cols: Vec<Raw>,
    /// Row-reduction transform `E` with `E * A = [I; 0]`, where `A` is the
    /// `b x a` matrix of `cols`. Lazily unnecessary for prime sources.
    left: Option<Vec<Vec<u64>>>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self, FieldError> {
        let p = source.characteristic();
        if p != target.characteristic() || target.degree() % source.degree() != 0 {
            return Err(FieldError::IncompatibleFields {
                source: (p, source.degree()),
                target: (target.characteristic(), target.degree()),
            });
        }
        let a = source.degree();
        let image = if a == 1 {
            target.zero()
        } else if source.same(target) {
            target.generator()
        } else {
            let m = Polynomial::from_prime_coeffs(target, source.modulus());
            let roots = roots_in_field(&m);
            roots.into_iter().next().expect("source modulus splits in target").0
        };
        let mut cols = Vec::with_capacity(a);
        let mut cur = target.raw_one();
        for _ in 0..a {
            cols.push(cur.clone());
            cur = target.raw_mul(&cur, image.raw());
        }
        let left = if a == 1 { None } else { Some(left_inverse(&cols, p)) };
        Ok(Embedding { source: source.clone(), target: target.clone(), cols, left })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub(crate) fn apply_raw(&self, x: &[u64]) -> Raw {
        let p = self.target.characteristic();
        if self.source.degree() == 1 {
            return self.target.raw_from_prime(x[0]);
        }
        let mut out = vec![0u64; self.target.degree()];
        for (c, col) in x.iter().zip(&self.cols) {
            if *c == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(col) {
                *o = (*o + c * v) % p;
            }
        }
        out
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field().same(&self.source), "element not in embedding source");
        FieldElement::from_raw(&self.target, self.apply_raw(x.raw()))
    }

    pub(crate) fn preimage_raw(&self, y: &[u64]) -> Option<Raw> {
        let a = self.source.degree();
        match &self.left {
            None => Field::raw_as_prime(y).map(|c| vec![c]),
            Some(e) => {
                let p = self.target.characteristic();
                let z: Vec<u64> = e
                    .iter()
                    .map(|row| row.iter().zip(y).fold(0u64, |acc, (r, v)| (acc + r * v) % p))
                    .collect();
                if z[a..].iter().any(|&c| c != 0) {
                    None
                } else {
                    Some(z[..a].to_vec())
                }
            }
        }
    }

    /// The source element mapping to `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &FieldElement) -> Option<FieldElement> {
        assert!(y.field().same(&self.target), "element not in embedding target");
        self.preimage_raw(y.raw()).map(|c| FieldElement::from_raw(&self.source, c))
    }
}

/// Gauss-Jordan on `[A | I]` for the `b x a` column matrix `A` of full
/// column rank. Returns `E` (`b x b`) with `E*A = [I_a; 0]`.
fn left_inverse(cols: &[Raw], p: u64) -> Vec<Vec<u64>> {
    let a = cols.len();
    let b = cols[0].len();
    let mut m: Vec<Vec<u64>> = (0..b)
        .map(|i| {
            let mut row: Vec<u64> = (0..a).map(|j| cols[j][i]).collect();
            row.extend((0..b).map(|k| u64::from(k == i)));
            row
        })
        .collect();
    for col in 0..a {
        let piv = (col..b).find(|&r| m[r][col] != 0).expect("embedding columns are independent");
        m.swap(col, piv);
        let inv = prime::inv_mod(m[col][col], p);
        for c in m[col].iter_mut() {
            *c = *c * inv % p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (c, v) in row.iter_mut().zip(&pivot_row) {
                    *c = (*c + p - f * v % p) % p;
                }
            }
        }
    }
    m.into_iter().map(|row| row[a..].to_vec()).collect()
}

/// Image of `x` under the fixed embedding into `target`.
pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement, FieldError> {
    if x.field().same(target) {
        return Ok(x.clone());
    }
    Ok(Embedding::new(x.field(), target)?.apply(x))
}

impl FieldElement {
    /// This element rewritten in `F_p(x)`, the smallest subfield containing
    /// it, built with [`super::field_make`].
    pub fn descend(&self) -> FieldElement {
        let d = self.degree_over_prime();
        if d == self.field().degree() {
            return self.clone();
        }
        let small = super::field_make(self.field().characteristic(), d).expect("valid subfield");
        Embedding::new(&small, self.field())
            .expect("subfield divides")
            .preimage(self)
            .expect("element lies in its minimal subfield")
    }
}
