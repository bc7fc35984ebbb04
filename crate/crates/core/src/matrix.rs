use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Dense matrix over a local factor ring, row-major, entries canonical.
///
/// Throughout the crate vectors are rows and matrices act on the right:
/// a map `R^m -> R^n` is an `m x n` matrix, and "first `f`, then `g`" is the
/// product `F * G`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn diagonal(ring: Ring, diag: &[i64]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(ring, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from raw row-major entries, reducing each entry.
    pub fn from_entries(ring: Ring, rows: usize, cols: usize, entries: &[i64]) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { ring, rows, cols, data: entries.iter().map(|&a| ring.from_int(a)).collect() })
    }

    /// Builds a matrix from already-canonical entries.
    pub fn from_canonical(ring: Ring, rows: usize, cols: usize, data: Vec<i64>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&a| !ring.is_canonical(a)) {
            return Err(Error::ShapeMismatch(format!("entry {bad} is not canonical in {ring}")));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: Ring, cols: usize, rows: &[Vec<i64>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().copied());
        }
        Matrix { ring, rows: rows.len(), cols, data }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Matrix {
        Matrix { ring: self.ring, rows: 1, cols: self.cols, data: self.row(i).to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = r.add(out.data[idx], r.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        let r = self.ring;
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if b != 0 {
                    *o = r.add(*o, r.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.add(a, b)).collect();
        Matrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| r.sub(a, b)).collect();
        Matrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.ring.neg(1))
    }

    pub fn scale(&self, c: i64) -> Matrix {
        let r = self.ring;
        let data = self.data.iter().map(|&a| r.mul(c, a)).collect();
        Matrix { ring: r, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(ring: Ring, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix { ring, rows, cols, data }
    }

    /// Places matrices side by side.
    pub fn hstack(ring: Ring, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.paste(0, off, p);
            off += p.cols;
        }
        out
    }

    pub fn block_diag(ring: Ring, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.paste(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { ring: self.ring, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Kronecker product, `(i, j)` pairs ordered as `i * n + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * other.rows + k, j * other.cols + l, r.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let v = r.add(self.get(dst, j), r.mul(c, s));
                self.set(dst, j, v);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let v = r.add(self.get(i, dst), r.mul(c, s));
                self.set(i, dst, v);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: i64) {
        let r = self.ring;
        for j in 0..self.cols {
            let v = r.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: i64) {
        let r = self.ring;
        for i in 0..self.rows {
            let v = r.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}](", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&a| self.ring.format_elem(a)).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}
