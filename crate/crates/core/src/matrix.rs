//! Dense matrices over an exact field, with rank and Jordan-type extraction.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = alloc::vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-major rows of entries.
    pub fn to_rows(&self) -> Vec<Vec<K::Elem>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.rows {
            return Err(Error::Dimension("inner dimensions differ in product"));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shapes differ in subtraction"));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<Matrix<K>> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(self.field.clone(), n);
        let mut base = self.clone();
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

    pub fn commutes_with(&self, other: &Matrix<K>) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !f.is_zero(&a[r * cols + c])) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(&a[rank * cols + c]);
            for j in c..cols {
                a[rank * cols + j] = f.mul(&a[rank * cols + j], &inv);
            }
            for r in rank + 1..rows {
                let factor = a[r * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(&factor, &a[rank * cols + j]);
                    a[r * cols + j] = f.sub(&a[r * cols + j], &t);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Checks `self^n = 0` by squaring until the exponent reaches `n`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut exp = 1usize;
        while exp < n {
            m = m.mul(&m)?;
            exp *= 2;
        }
        Ok(n == 0 || m.is_zero())
    }

    /// `rank(M^0), rank(M^1), ...` up to and including the first zero.
    pub fn power_ranks(&self) -> Result<Vec<usize>> {
        let n = self.require_square()?;
        let mut ranks = alloc::vec![n];
        let mut power = self.clone();
        let mut i = 1;
        while *ranks.last().unwrap() > 0 {
            let r = power.rank();
            if r == *ranks.last().unwrap() {
                return Err(Error::NotNilpotent { power: i, rank: r });
            }
            ranks.push(r);
            power = power.mul(self)?;
            i += 1;
        }
        Ok(ranks)
    }

    /// Jordan type of a nilpotent matrix: the conjugate of the rank-drop sequence.
    pub fn jordan_type(&self) -> Result<Partition> {
        let ranks = self.power_ranks()?;
        let drops = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        Ok(Partition::new(drops).conjugate())
    }
}

/// Block-diagonal nilpotent Jordan matrix `J_P` with upper-triangular blocks,
/// largest block first.
pub fn jordan_matrix<K: Field>(field: K, partition: &Partition) -> Matrix<K> {
    let n = partition.total();
    let mut m = Matrix::zeros(field, n, n);
    let mut offset = 0;
    for &p in partition.parts() {
        for i in 0..p - 1 {
            let one = m.field.one();
            m.set(offset + i, offset + i + 1, one);
        }
        offset += p;
    }
    m
}

/// `rank(J_n^k)`: `n` for `k = 0`, otherwise `max(n - k, 0)`.
pub fn jordan_power_rank(n: usize, k: usize) -> usize {
    n.saturating_sub(k)
}
