//! Dense exact matrices and the Gaussian-elimination kernels everything else
//! is built on.
//!
//! Pivoting is deterministic: within each column the first row (in index
//! order) with a nonzero entry is chosen, so echelon forms, kernel bases and
//! solution vectors are reproducible across runs.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::input("ragged rows".to_string()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| field.from_i64(n)))
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.field.add(self.get(r, c), v);
        self.set(r, c, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let t = f.mul(a, b);
                    out.add_assign_at(i, j, &t);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.add(&out.data[i], &other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.sub(&out.data[i], &other.data[i]);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = f.mul(v, s);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero at or below `row`
            let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let t = f.mul(&factor, m.get(row, c));
                    let v = f.sub(m.get(r, c), &t);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nullspace basis as matrix columns (echelon parametrization of the free
    /// columns, in column order).
    pub fn nullspace(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, f.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, f.neg(r.get(prow, fc)));
            }
        }
        out
    }

    /// Columns of `self` forming a basis of the column space (the columns at
    /// the pivot positions of the rref).
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solve `self · x = b` for a single column vector; `None` when
    /// inconsistent. Free variables are set to zero, so the answer is
    /// deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::input(format!(
                "solve: rhs length {} does not match row count {}",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let bm = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bm);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the rhs column: inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(prow, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self · X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        assert_eq!(self.rows, b.rows());
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let aug = self.hstack(&id);
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let cols: Vec<usize> = (self.cols..2 * self.cols).collect();
        Some(r.select_columns(&cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Indices of columns of `ext` that enlarge the span of `base`
    /// (deterministic: scanned left to right).
    pub fn extend_basis(base: &Matrix, ext: &Matrix) -> Vec<usize> {
        assert_eq!(base.rows, ext.rows);
        let stacked = base.hstack(ext);
        let (_, pivots) = stacked.rref();
        pivots
            .into_iter()
            .filter(|&p| p >= base.cols)
            .map(|p| p - base.cols)
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if f.is_zero(a) || f.is_zero(&v[c]) {
                    continue;
                }
                let t = f.mul(a, &v[c]);
                out[r] = f.add(&out[r], &t);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::new(FieldSpec::prime(3).unwrap())
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = f3();
        let id = Matrix::identity(f, 4);
        let b: Vec<Scalar> = (0..4).map(|i| f.from_i64(i)).collect();
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let f = f3();
        let z = Matrix::zeros(f, 2, 2);
        let b = vec![f.one(), f.zero()];
        assert!(z.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch_is_input_error() {
        let f = f3();
        let z = Matrix::zeros(f, 2, 2);
        assert!(z.solve(&[f.one()]).is_err());
    }

    #[test]
    fn random_f3_systems_recover_solution() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let mut a = Matrix::zeros(f, 5, 5);
            for r in 0..5 {
                for c in 0..5 {
                    a.set(r, c, f.from_i64(rng.gen_range(0..3)));
                }
            }
            let x: Vec<Scalar> = (0..5).map(|_| f.from_i64(rng.gen_range(0..3))).collect();
            let b = a.apply(&x);
            let got = a.solve(&b).unwrap().expect("consistent by construction");
            // The solver may return a different solution; residual must vanish.
            let residual = a.apply(&got);
            assert_eq!(residual, b);
        }
    }

    #[test]
    fn rank_nullity() {
        let f = Field::new(FieldSpec::rational());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let mut a = Matrix::zeros(f, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    a.set(r, c, f.from_i64(rng.gen_range(-2..3)));
                }
            }
            assert_eq!(a.rank() + a.nullspace().cols(), cols);
        }
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let f = f3();
        let a = Matrix::from_i64(f, &[&[1, 2, 0], &[0, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.cols(), 1);
        for j in 0..ns.cols() {
            assert!(a
                .apply(&ns.column(j))
                .iter()
                .all(|v| f.is_zero(v)));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(FieldSpec::rational());
        let a = Matrix::from_i64(f, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
    }
}
