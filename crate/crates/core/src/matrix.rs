//! Dense exact matrices and coordinate vectors.
//!
//! Linear maps use the column convention: the j-th column of a matrix is the
//! image of the j-th basis vector, so `m.apply(v)` is the usual M·v. The
//! row-major vectorization `vec(D)[i*cols + j] = D[i][j]` is the coordinate
//! system every endomorphism subspace lives in.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

/// Adds `c · rhs` into `lhs` entrywise.
pub fn vec_add_scaled(lhs: &mut [Scalar], c: &Scalar, rhs: &[Scalar]) {
    assert_eq!(lhs.len(), rhs.len(), "vector length mismatch");
    for (a, b) in lhs.iter_mut().zip(rhs) {
        *a = a.add(&c.mul(b));
    }
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn zero_vector(field: Field, len: usize) -> Vector {
    vec![field.zero(); len]
}

/// Standard basis vector e_i.
pub fn basis_vector(field: Field, len: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, len);
    v[i] = field.one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must share a length.
    pub fn from_rows(field: Field, rows: Vec<Vector>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in &r {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, field, data })
    }

    /// Parses a matrix from entry strings (outer = rows).
    pub fn parse(field: Field, entries: &[Vec<String>], rows: usize, cols: usize) -> Result<Matrix> {
        if entries.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows} rows, got {}",
                entries.len()
            )));
        }
        let mut m = Matrix::zero(field, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i}: expected {cols} entries, got {}",
                    row.len()
                )));
            }
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, field.parse(s)?);
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column j as a vector — the image of basis vector e_j.
    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row-major flattening; the coordinate system for endomorphism spaces.
    pub fn to_flat(&self) -> Vector {
        self.data.clone()
    }

    /// Inverse of `to_flat` for square-ish shapes.
    pub fn from_flat(field: Field, rows: usize, cols: usize, flat: Vector) -> Matrix {
        assert_eq!(flat.len(), rows * cols, "flat length mismatch");
        Matrix { rows, cols, field, data: flat }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// M·v with v a coordinate column.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "apply: dimension mismatch");
        let mut out = zero_vector(self.field, self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] = out[i].add(&a.mul(x));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Non-negative power by iterated multiplication (exponents stay small).
    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
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

    pub fn commutes_with(&self, rhs: &Matrix) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    /// AB − BA.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Entry strings in the document format (outer = rows).
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::render).collect())
            .collect()
    }
}
