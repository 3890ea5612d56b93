use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
///
/// Zero-row and zero-column shapes are ordinary values; every routine here
/// accepts them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major residues (values are reduced mod p).
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        let p = field.p();
        let data = data.into_iter().map(|x| x % p).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| field.from_i64(x)));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let p = field.p();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single column built from `v`.
    pub fn column(field: PrimeField, v: &[u64]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    /// A single row built from `v`.
    pub fn row_vector(field: PrimeField, v: &[u64]) -> Self {
        Self::from_vec(field, 1, v.len(), v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix product. Panics when inner dimensions disagree.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let p = f.p();
        let mut out = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        Matrix {
            field: f,
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul(rhs))
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.field;
        let c = c % f.p();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        self.with_data(data)
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        self.with_data(data)
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Matrix, c: u64) {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    fn with_data(&self, data: Vec<u64>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> u64 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
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

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i, j - self.cols)
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stacks many blocks vertically; `cols` fixes the width when `blocks` is empty.
    pub fn vstack_all(field: PrimeField, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let src = block.row(i);
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + block.cols].copy_from_slice(src);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    /// Reduced row echelon form. Pivots are taken leftmost-column first, and
    /// within a column the smallest remaining row index is used.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let p = f.p();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = m.data[idx] * inv % p;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for j in c..m.cols {
                    let v = m.data[r * m.cols + j];
                    if v != 0 {
                        let idx = i * m.cols + j;
                        m.data[idx] = (m.data[idx] + neg * v) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Rows form a basis of the right null space `{v : self * v^T = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            k.set(bi, fc, 1);
            for (ri, &pc) in rr.pivots.iter().enumerate() {
                let v = rr.matrix.get(ri, fc);
                if v != 0 {
                    k.set(bi, pc, f.neg(v));
                }
            }
        }
        k
    }

    /// Columns form a basis of the column space (pivot columns of `self`).
    pub fn column_space(&self) -> Matrix {
        let rr = self.rref();
        self.select_cols(&rr.pivots)
    }

    /// Some `X` with `self * X = b`, or `None` when `b` leaves the column space.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: A is {}x{} but B has {} rows",
                self.rows, self.cols, b.rows
            )));
        }
        let aug = self.hstack(b);
        let rr = aug.rref();
        if rr.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (ri, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rr.matrix.get(ri, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let rr = self.hstack(&Matrix::identity(self.field, n)).rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] >= n {
            return None;
        }
        Some(rr.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Flattened entries, row-major.
    pub fn to_vec(&self) -> Vec<u64> {
        self.data.clone()
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low degree first.
    /// Uses reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<u64> {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        // Hessenberg reduction by similarity transforms.
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if piv != c + 1 {
                for j in 0..n {
                    let (a, b) = (h.get(piv, j), h.get(c + 1, j));
                    h.set(piv, j, b);
                    h.set(c + 1, j, a);
                }
                for i in 0..n {
                    let (a, b) = (h.get(i, piv), h.get(i, c + 1));
                    h.set(i, piv, b);
                    h.set(i, c + 1, a);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for i in c + 2..n {
                let t = f.mul(h.get(i, c), inv);
                if t == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(t, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, c + 1), f.mul(t, h.get(k, i)));
                    h.set(k, c + 1, v);
                }
            }
        }
        // Recurrence on leading principal minors of xI - H.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let mut next = poly_shift_sub(f, &polys[k], h.get(k, k));
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coeff = f.mul(prod, h.get(i, k));
                if coeff != 0 {
                    let term = &polys[i];
                    for (d, &c) in term.iter().enumerate() {
                        next[d] = f.sub(next[d], f.mul(coeff, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// `(x - a) * poly`
fn poly_shift_sub(f: PrimeField, poly: &[u64], a: u64) -> Vec<u64> {
    let mut out = vec![0u64; poly.len() + 1];
    for (d, &c) in poly.iter().enumerate() {
        out[d + 1] = f.add(out[d + 1], c);
        out[d] = f.sub(out[d], f.mul(a, c));
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Matrix[{}x{} mod {}]", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            write!(fm, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_empty() {
        let f = gf(7);
        let id = Matrix::identity(f, 4);
        let rr = id.rref();
        assert_eq!(rr.matrix, id);
        assert_eq!(rr.rank(), 4);

        let empty = Matrix::zeros(f, 0, 3);
        let rr = empty.rref();
        assert_eq!(rr.matrix.shape(), (0, 3));
        assert_eq!(rr.rank(), 0);
        assert_eq!(empty.kernel_basis().shape(), (3, 3));
        assert_eq!(Matrix::zeros(f, 3, 0).kernel_basis().shape(), (0, 0));
    }

    #[test]
    fn rref_rank_one_over_gf5() {
        let f = gf(5);
        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
        let rr = a.rref();
        assert_eq!(rr.rank(), 1);
        assert_eq!(rr.pivots, vec![0]);
    }

    #[test]
    fn kernel_of_single_equation_over_gf5() {
        let f = gf(5);
        let k = Matrix::from_i64_rows(f, &[&[1, 2]]).kernel_basis();
        assert_eq!(k.rows(), 1);
        // proportional to (3, 1)
        let (x, y) = (k.get(0, 0), k.get(0, 1));
        assert_eq!(f.mul(x, 1), f.mul(y, 3));
        assert!(y != 0);
    }

    #[test]
    fn kernel_trivial_and_full() {
        let f = gf(11);
        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.kernel_basis().rows(), 0);
        assert_eq!(Matrix::zeros(f, 3, 3).kernel_basis().rows(), 3);
    }

    #[test]
    fn solve_cases() {
        let f = gf(5);
        let b = Matrix::from_i64_rows(f, &[&[1, 4], &[2, 0]]);
        let x = Matrix::identity(f, 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);

        let z = Matrix::zeros(f, 2, 2);
        assert!(z.solve(&b).unwrap().is_none());

        let a = Matrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
        let rhs = Matrix::from_i64_rows(f, &[&[3], &[6]]);
        let x = a.solve(&rhs).unwrap().unwrap();
        assert_eq!(f.add(x.get(0, 0), f.mul(2, x.get(1, 0))), 3);
        assert_eq!(a.mul(&x), rhs);

        assert!(matches!(
            a.solve(&Matrix::zeros(f, 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_and_charpoly() {
        let f = gf(101);
        let a = Matrix::from_i64_rows(f, &[&[2, 1, 0], &[0, 3, 4], &[5, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 3));
        // Cayley-Hamilton
        let cp = a.charpoly();
        assert_eq!(cp.len(), 4);
        assert_eq!(cp[3], 1);
        let mut acc = Matrix::zeros(f, 3, 3);
        for (d, &c) in cp.iter().enumerate() {
            acc.add_scaled(&a.pow(d as u64), c);
        }
        assert!(acc.is_zero());
        assert_eq!(Matrix::zeros(f, 0, 0).inverse().unwrap().shape(), (0, 0));
    }
}
