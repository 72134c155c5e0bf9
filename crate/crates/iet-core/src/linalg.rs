//! Exact linear algebra over the rationals: rank, inversion, basis
//! completion, and decomposition of antisymmetric matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<QMatrix> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<QMatrix> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * q).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| clear_denominators(self.row(i)))
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let num = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                    m[i][j] = num / &prev; // exact by the Bareiss identity
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a.get(i, col).is_zero())?;
            for j in 0..n {
                let tmp = a.get(pivot, j).clone();
                *a.get_mut(pivot, j) = a.get(col, j).clone();
                *a.get_mut(col, j) = tmp;
                let tmp = inv.get(pivot, j).clone();
                *inv.get_mut(pivot, j) = inv.get(col, j).clone();
                *inv.get_mut(col, j) = tmp;
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                *a.get_mut(col, j) = a.get(col, j) / &p;
                *inv.get_mut(col, j) = inv.get(col, j) / &p;
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in 0..n {
                    let update = a.get(col, j) * &factor;
                    *a.get_mut(i, j) = a.get(i, j) - update;
                    let update = inv.get(col, j) * &factor;
                    *inv.get_mut(i, j) = inv.get(i, j) - update;
                }
            }
        }
        Some(inv)
    }
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in row {
        lcm = lcm.lcm(q.denom());
    }
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Invertible change-of-basis matrix whose first column is `v`; the other
/// columns are the standard unit vectors at every index except the pivot
/// (first nonzero) position of `v`, in index order.
pub fn complete_basis_with_first(v: &[Rational]) -> Result<QMatrix> {
    let n = v.len();
    let pivot = v.iter().position(|q| !q.is_zero()).ok_or(Error::ZeroVector)?;
    let mut t = QMatrix::zeros(n, n);
    for i in 0..n {
        *t.get_mut(i, 0) = v[i].clone();
    }
    let mut col = 1;
    for i in 0..n {
        if i == pivot {
            continue;
        }
        *t.get_mut(i, col) = Rational::one();
        col += 1;
    }
    Ok(t)
}

/// Basis completion that tries candidate unit vectors in the caller's order,
/// keeping each one that enlarges the span. Produces a different (equally
/// valid) completion than [`complete_basis_with_first`] for most inputs.
pub fn complete_basis_with_first_ordered(
    v: &[Rational],
    unit_order: &[usize],
) -> Result<QMatrix> {
    let n = v.len();
    if v.iter().all(Rational::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut chosen: Vec<Vec<Rational>> = vec![v.to_vec()];
    for &i in unit_order {
        if chosen.len() == n {
            break;
        }
        let mut unit = vec![Rational::zero(); n];
        unit[i] = Rational::one();
        let mut candidate = chosen.clone();
        candidate.push(unit);
        let mat = QMatrix::from_rows(candidate.clone())?;
        if mat.rank() == candidate.len() {
            chosen = candidate;
        }
    }
    if chosen.len() != n {
        return Err(Error::DimensionMismatch);
    }
    let mut t = QMatrix::zeros(n, n);
    for (c, col_vec) in chosen.iter().enumerate() {
        for i in 0..n {
            *t.get_mut(i, c) = col_vec[i].clone();
        }
    }
    Ok(t)
}

/// Result of decomposing an antisymmetric matrix as a single wedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntisymDecomposition {
    /// p = u wedge v in coordinates: p_ij = u_i v_j - u_j v_i.
    Decomposable { u: Vec<Rational>, v: Vec<Rational> },
    /// Rank exceeds 2; no single wedge reproduces p.
    NotDecomposable,
}

/// Decompose an antisymmetric rational matrix as a single coordinate wedge
/// when its rank is at most 2.
pub fn antisym_decompose(p: &QMatrix) -> Result<AntisymDecomposition> {
    if !p.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let n = p.rows();
    if p.is_zero() {
        return Ok(AntisymDecomposition::Decomposable {
            u: vec![Rational::zero(); n],
            v: vec![Rational::zero(); n],
        });
    }
    let rank = p.rank();
    debug_assert!(rank % 2 == 0, "antisymmetric matrices have even rank");
    if rank > 2 {
        return Ok(AntisymDecomposition::NotDecomposable);
    }
    let (a, b) = first_nonzero_upper(p).expect("nonzero matrix has a nonzero entry");
    let alpha = p.get(a, b).clone();
    let u: Vec<Rational> = (0..n).map(|j| -(p.get(b, j) / &alpha)).collect();
    let v: Vec<Rational> = (0..n).map(|j| p.get(a, j).clone()).collect();
    debug_assert!(
        (0..n).all(|i| (0..n).all(|j| &u[i] * &v[j] - &u[j] * &v[i] == *p.get(i, j))),
        "rank-2 antisymmetric matrix must equal the reconstructed wedge"
    );
    Ok(AntisymDecomposition::Decomposable { u, v })
}

fn first_nonzero_upper(p: &QMatrix) -> Option<(usize, usize)> {
    for i in 0..p.rows() {
        for j in i + 1..p.cols() {
            if !p.get(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}
