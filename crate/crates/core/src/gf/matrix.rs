use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field. Entries are element codes of
/// [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix {}x{} over {:?} [",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { ", [" })?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&self.field.format(self.get(i, j)))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced into the field (`% q` of the code).
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch {
                op: "from_rows",
                left: (r, c),
                right: (r, 0),
            });
        }
        let q = field.order();
        let data = rows.iter().flatten().map(|&x| x % q).collect();
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
            field: field.clone(),
        })
    }

    pub fn from_data(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                axpy(f, out_row, a, b_row);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "sub", |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        g: impl Fn(&Field, u32, u32) -> u32,
    ) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| g(&self.field, a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                op: "pow",
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product: entry `(i·rows_b + i', j·cols_b + j') = a[i,j]·b[i',j']`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Matrix::zero(f, self.rows * rb, self.cols * cb);
        let oc = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for i2 in 0..rb {
                    let dst = (i * rb + i2) * oc + j * cb;
                    for j2 in 0..cb {
                        out.data[dst + j2] = f.mul(a, other.data[i2 * cb + j2]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let mut out = Matrix::zero(&self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r + i) * self.cols + c;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zero(&self.field, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        Ok(out)
    }

    /// Submatrix of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    /// Reduced row echelon form. Pivot columns are returned in increasing order.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Echelon { rref: m, pivots }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("nonzero pivot");
            if inv != 1 {
                for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *x = f.mul(*x, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for other in before
                .chunks_exact_mut(cols)
                .chain(after.chunks_exact_mut(cols))
            {
                let factor = other[c];
                if factor != 0 {
                    axpy(&f, &mut other[c..], f.neg(factor), &pivot_row[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space as the columns of a `cols × (cols − rank)`
    /// matrix. Column `k` has a 1 at the `k`-th free column (free columns in
    /// increasing order) and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { rref, pivots } = self.echelon();
        let free = free_columns(self.cols, &pivots);
        let f = &self.field;
        let mut k = Matrix::zero(f, self.cols, free.len());
        for (col, &fc) in free.iter().enumerate() {
            k.set(fc, col, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, f.neg(rref.get(r, fc)));
            }
        }
        k
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&rref.row(i)[n..]);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entry-wise image in another field of the same characteristic. Only
    /// prime-field entries can be embedded.
    pub fn embed(&self, target: &Field) -> Result<Matrix> {
        if target.p() != self.field.p() {
            return Err(Error::FieldMismatch);
        }
        if self.field == *target {
            return Ok(self.clone());
        }
        if !self.field.is_prime_field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            field: target.clone(),
            ..self.clone()
        })
    }
}

pub(crate) fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// `dst += a · src`.
#[inline]
pub(crate) fn axpy(f: &Field, dst: &mut [u32], a: u32, src: &[u32]) {
    if a == 0 {
        return;
    }
    if f.is_prime_field() {
        let p = f.p() as u64;
        if p == 2 {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        } else {
            let a = a as u64;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u64 + a * s as u64) % p) as u32;
            }
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = f.add(*d, f.mul(a, s));
            }
        }
    }
}
