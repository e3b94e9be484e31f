//! Small dense integer matrices.
//!
//! Everything here is exact. Products use checked arithmetic and report
//! overflow instead of wrapping; the matrices this crate handles are at most
//! a few dozen rows, so no attempt is made at asymptotically fast routines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::RaggedMatrix {
                row: i,
                expected: ncols,
                found: r.len(),
            });
        }
        let data = rows.into_iter().flatten().collect();
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// `self * rhs`, or `None` if an entry leaves the `i64` range.
    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += i128::from(self.get(i, k)) * i128::from(rhs.get(k, j));
                }
                out.set(i, j, i64::try_from(acc).ok()?);
            }
        }
        Some(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                let acc: i128 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| i128::from(a) * i128::from(b))
                    .sum();
                i64::try_from(acc).map_err(|_| Error::Overflow)
            })
            .collect()
    }

    /// The bilinear form `u^T self v`.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> Result<i64> {
        let sv = self.apply(v)?;
        let acc: i128 = u
            .iter()
            .zip(&sv)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum();
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn block_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> i128 {
        (0..self.rows.min(self.cols))
            .map(|i| i128::from(self.get(i, i)))
            .sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| i128::from(x)).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow)
    }

    /// Coefficients `[c_0, c_1, ..., c_n]` of `det(xI - self) = sum c_i x^i`,
    /// computed with the Faddeev-LeVerrier recursion. All divisions are exact
    /// for integer input.
    pub fn characteristic_polynomial(&self) -> Result<Vec<i64>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![0i64; n + 1];
        coeffs[n] = 1;
        let mut aux = Self::identity(n);
        for k in 1..=n {
            let am = self.mul(&aux)?;
            let c = -am.trace() / k as i128;
            let c = i64::try_from(c).map_err(|_| Error::Overflow)?;
            coeffs[n - k] = c;
            aux = am;
            for i in 0..n {
                let v = aux.get(i, i).checked_add(c).ok_or(Error::Overflow)?;
                aux.set(i, i, v);
            }
        }
        Ok(coeffs)
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<i128>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| i128::from(x)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..self.rows {
                if a[r][col] == 0 {
                    continue;
                }
                let (f, g) = (a[rank][col], a[r][col]);
                let d = gcd_i128(f, g);
                let (f, g) = (f / d, g / d);
                let pivot = a[rank].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x = *x * f - y * g;
                }
                let row_gcd = a[r].iter().fold(0, |acc, &x| gcd_i128(acc, x));
                if row_gcd > 1 {
                    a[r].iter_mut().for_each(|x| *x /= row_gcd);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
