//! Dense exact linear algebra: matrices, reduced row echelon form, rank,
//! kernels and linear solves over any [`Field`].
//!
//! Pivoting is fixed: the first column with a nonzero entry at or below the
//! current row, and within it the first such row. With exact arithmetic no
//! pivoting heuristics are needed, and the rule makes all outputs canonical.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(s)).collect(),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &a.mul_ref(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(F::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.mul_ref(b)
                    }
                })
            })
            .collect())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a.mul_ref(other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let x = m.get(row, c).mul_ref(&inv);
                m.set(row, c, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = factor.mul_ref(pv);
                    m.data[r * m.cols + c] -= &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Rank together with the canonical null-space basis: one vector per
    /// free column, carrying 1 there and minus the echelon entries at the pivots.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<F>>) {
        let ech = self.rref();
        let kernel = ech.kernel_basis();
        (ech.pivots.len(), kernel)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let ech = aug.rref();
        if ech.pivots.len() < n || (n > 0 && ech.pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.reduced.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); cols];
                v[free] = F::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    let x = self.reduced.get(r, free);
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Solves `a · x = b`; the particular solution has every free variable set to zero.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows
        )));
    }
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let ech = aug.rref();
    if ech.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); a.cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.reduced.get(r, a.cols).clone();
    }
    Ok(Some(x))
}

/// A subspace of `F^dim` grown one vector at a time, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` modulo the span.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor.mul_ref(r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v.to_vec()).iter().all(F::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x -= &factor.mul_ref(r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis in reduced echelon form, ordered by pivot column.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycScalar;
    use num_traits::{One, Zero};

    type M = Matrix<CycScalar>;

    fn c(n: i64) -> CycScalar {
        CycScalar::from(n)
    }

    #[test]
    fn identity_has_full_rank() {
        let (rank, ker) = M::identity(2).rank_and_kernel();
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let (rank, ker) = M::zeros(2, 2).rank_and_kernel();
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn hermitian_rank_one() {
        let i = CycScalar::i();
        let m = M::from_rows(vec![vec![c(1), i.clone()], vec![-i, c(1)]]).unwrap();
        let (rank, ker) = m.rank_and_kernel();
        assert_eq!(rank, 1);
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn empty_matrices() {
        let (rank, ker) = M::zeros(0, 3).rank_and_kernel();
        assert_eq!((rank, ker.len()), (0, 3));
        let (rank, ker) = M::zeros(3, 0).rank_and_kernel();
        assert_eq!((rank, ker.len()), (0, 0));
    }

    #[test]
    fn solve_examples() {
        let i = CycScalar::i();
        let x = solve_linear(&M::identity(2), &[c(1), i.clone()]).unwrap();
        assert_eq!(x, Some(vec![c(1), i]));

        assert_eq!(solve_linear(&M::zeros(2, 2), &[c(1), c(0)]).unwrap(), None);

        let a = M::from_rows(vec![vec![c(1), c(1)], vec![c(0), c(0)]]).unwrap();
        assert_eq!(solve_linear(&a, &[c(2), c(0)]).unwrap(), Some(vec![c(2), c(0)]));

        assert!(solve_linear(&a, &[c(1)]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let s = CycScalar::inv_sqrt2();
        let i = CycScalar::i();
        let l = M::from_rows(vec![
            vec![s.clone(), -i.mul_ref(&s)],
            vec![s.clone(), i.mul_ref(&s)],
        ])
        .unwrap();
        let inv = l.inverse().unwrap();
        assert_eq!(l.mul(&inv).unwrap(), M::identity(2));
        let singular = M::from_rows(vec![vec![c(1), c(2)], vec![c(2), c(4)]]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(M::zeros(0, 0).inverse(), Some(M::zeros(0, 0)));
    }

    #[test]
    fn echelon_span_tracks_rank() {
        let mut span = EchelonSpan::new(3);
        assert!(span.insert(vec![c(1), c(2), c(3)]));
        assert!(!span.insert(vec![c(2), c(4), c(6)]));
        assert!(span.insert(vec![c(0), c(1), c(0)]));
        assert!(span.contains(&[c(1), c(0), c(3)]));
        assert!(!span.contains(&[c(0), c(0), c(1)]));
        assert_eq!(span.rank(), 2);
        assert_eq!(span.basis()[0], vec![c(1), c(0), c(3)]);
        assert_eq!(span.basis()[1], vec![c(0), CycScalar::one(), c(0)]);
    }

    #[test]
    fn kron_of_pauli() {
        let x = M::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        let k = x.kron(&M::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 2), &c(1));
        assert_eq!(k.get(2, 0), &c(1));
        assert_eq!(k.get(0, 1), &c(0));
    }
}
