//! Dense matrices over a finite field.

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Field, FieldElement, Raw};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Raw>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.raw_zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.raw_one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.into_iter().map(FieldElement::into_raw));
        }
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub(crate) fn from_raw_rows(field: &Field, rows: Vec<Vec<Raw>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<Raw> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols);
        Matrix { field: field.clone(), rows: r, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        FieldElement::from_raw(&self.field, self.data[i * self.cols + j].clone())
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> &Raw {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FieldElement) {
        self.data[i * self.cols + j] = v.raw().clone();
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: Raw) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.raw(i, k);
                if Field::raw_is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.raw_mul(a, other.raw(k, j));
                    f.raw_add_assign(&mut out.data[i * other.cols + j], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let raw: Vec<Raw> = v.iter().map(|x| x.raw().clone()).collect();
        self.mul_vec_raw(&raw).into_iter().map(|c| FieldElement::from_raw(&self.field, c)).collect()
    }

    pub(crate) fn mul_vec_raw(&self, v: &[Raw]) -> Vec<Raw> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.raw_zero();
                for (j, x) in v.iter().enumerate() {
                    let t = f.raw_mul(self.raw(i, j), x);
                    f.raw_add_assign(&mut acc, &t);
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.raw_sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Applies `c -> c^{p^k}` entrywise.
    pub fn frobenius(&self, k: i64) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|c| f.raw_frobenius_pow(c, k)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !Field::raw_is_zero(m.raw(r, col))) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = f.raw_inv(m.raw(row, col)).expect("nonzero pivot");
            for j in col..m.cols {
                let v = f.raw_mul(m.raw(row, j), &inv);
                m.set_raw(row, j, v);
            }
            let pivot_row: Vec<Raw> = (0..m.cols).map(|j| m.raw(row, j).clone()).collect();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.raw(r, col).clone();
                if Field::raw_is_zero(&factor) {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                    if Field::raw_is_zero(pv) {
                        continue;
                    }
                    let t = f.raw_mul(&factor, pv);
                    let v = f.raw_sub(m.raw(r, j), &t);
                    m.set_raw(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// normalized so the free coordinate is 1.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free);
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.raw_one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !Field::raw_is_zero(m.raw(r, col))) else {
                return f.zero();
            };
            if piv != col {
                m.swap_rows(col, piv);
                det = f.raw_neg(&det);
            }
            let pv = m.raw(col, col).clone();
            det = f.raw_mul(&det, &pv);
            let inv = f.raw_inv(&pv).expect("nonzero");
            for r in col + 1..n {
                let factor = f.raw_mul(m.raw(r, col), &inv);
                if Field::raw_is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let t = f.raw_mul(&factor, m.raw(col, j));
                    let v = f.raw_sub(m.raw(r, j), &t);
                    m.set_raw(r, j, v);
                }
            }
        }
        FieldElement::from_raw(f, det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set_raw(i, j, self.raw(i, j).clone());
            }
            aug.set_raw(i, n + i, f.raw_one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set_raw(i, j, r.raw(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Some solution of `M v = b`, if one exists.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set_raw(i, j, self.raw(i, j).clone());
            }
            aug.set_raw(i, self.cols, b[i].raw().clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = r.get(i, self.cols);
        }
        Some(v)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_raw(j, i, self.raw(i, j).clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;
    use proptest::prelude::*;

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(proptest::collection::vec(0u64..5, 2), n * n).prop_map(move |cs| {
            let f = field_make(5, 2).unwrap();
            let rows = cs.chunks(n).map(|row| row.iter().map(|c| f.element(c.clone()).unwrap()).collect()).collect();
            Matrix::from_rows(&f, rows)
        })
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = field_make(7, 1).unwrap();
        let m = Matrix::from_rows(&f, vec![vec![f.from_int(1), f.from_int(2)], vec![f.from_int(3), f.from_int(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(FieldElement::is_zero));
        assert!(m.det().is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn inverse_and_det(m in arb_matrix(3), k in arb_matrix(3)) {
            let f = m.field().clone();
            let d = m.det();
            match m.inverse() {
                Some(inv) => {
                    prop_assert!(!d.is_zero());
                    prop_assert_eq!(m.mul(&inv), Matrix::identity(&f, 3));
                }
                None => prop_assert!(d.is_zero()),
            }
            prop_assert_eq!(m.mul(&k).det(), m.det() * k.det());
            prop_assert_eq!(m.rank() + m.kernel().len(), 3);
            for v in m.kernel() {
                prop_assert!(m.mul_vec(&v).iter().all(FieldElement::is_zero));
            }
            let b: Vec<FieldElement> = m.column(0);
            let sol = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&sol), b);
        }
    }
}
