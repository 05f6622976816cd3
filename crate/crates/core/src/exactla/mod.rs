//! Exact dense linear algebra over any [`Field`].
//!
//! Every rank, kernel and solve first splits the matrix into connected
//! row/column components and eliminates each one independently (in parallel).
//! Kernel vectors and solutions are re-multiplied before being returned, and
//! rank + nullity = columns is asserted on every kernel computation.

mod bareiss;
mod elim;
mod plu;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;

pub use bareiss::{clear_denominators, poly_det, poly_rank};
pub use plu::Plu;

/// Row-major dense matrix.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.fmt_elem(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    /// Rows must share one length; an empty list gives a `0 × cols` matrix.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { field: field.clone(), rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch { expected: rows, got: bad.len() });
        }
        Ok(Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let data: Vec<F::Elem> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut acc = vec![f.zero(); other.cols];
                for (k, a) in self.row(r).iter().enumerate() {
                    if !f.is_zero(a) {
                        f.axpy(&mut acc, a, other.row(k));
                    }
                }
                acc
            })
            .collect();
        Ok(Self { field: f.clone(), rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_assign(&mut acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect())
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: row.len() });
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Entrywise image under a map into another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn blocks(&self) -> (Vec<elim::Block>, Vec<usize>) {
        elim::components(self.rows, self.cols, &self.data, |e| self.field.is_zero(e))
    }

    fn dense_block(&self, b: &elim::Block, extra: impl Fn(usize) -> Vec<F::Elem>) -> Vec<Vec<F::Elem>> {
        b.rows
            .iter()
            .map(|&r| {
                let mut row: Vec<F::Elem> = b.cols.iter().map(|&c| self.get(r, c).clone()).collect();
                row.extend(extra(r));
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let (blocks, _) = self.blocks();
        let rank = blocks
            .par_iter()
            .map(|b| elim::echelon(&self.field, self.dense_block(b, |_| Vec::new()), b.cols.len(), false).rank())
            .sum();
        #[cfg(feature = "audit")]
        {
            let plu = Plu::new(self);
            assert!(plu.reconstructs(self), "PLU bookkeeping does not reproduce the matrix");
            assert_eq!(plu.rank(), rank, "block and PLU ranks disagree");
        }
        rank
    }

    /// Basis of the right kernel, ordered by the free column that carries each vector's 1.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (blocks, zero_cols) = self.blocks();
        let per_block: Vec<(usize, Vec<(usize, Vec<F::Elem>)>)> = blocks
            .par_iter()
            .map(|b| {
                let ech = elim::echelon(f, self.dense_block(b, |_| Vec::new()), b.cols.len(), true);
                let mut is_pivot = vec![false; b.cols.len()];
                for &pc in &ech.pivot_cols {
                    is_pivot[pc] = true;
                }
                let vecs = (0..b.cols.len())
                    .filter(|&c| !is_pivot[c])
                    .map(|free| {
                        let mut v = vec![f.zero(); self.cols];
                        v[b.cols[free]] = f.one();
                        // Characteristic 2: -a = a.
                        for (r, &pc) in ech.pivot_cols.iter().enumerate() {
                            v[b.cols[pc]] = ech.rows[r][free].clone();
                        }
                        (b.cols[free], v)
                    })
                    .collect();
                (ech.rank(), vecs)
            })
            .collect();
        let rank: usize = per_block.iter().map(|(r, _)| r).sum();
        let mut all: Vec<(usize, Vec<F::Elem>)> = per_block.into_iter().flat_map(|(_, v)| v).collect();
        for c in zero_cols {
            let mut v = vec![f.zero(); self.cols];
            v[c] = f.one();
            all.push((c, v));
        }
        all.sort_by_key(|(c, _)| *c);
        assert_eq!(rank + all.len(), self.cols, "rank-nullity");
        let basis: Vec<Vec<F::Elem>> = all.into_iter().map(|(_, v)| v).collect();
        for v in &basis {
            let image = self.mul_vec(v).expect("kernel vector length");
            assert!(image.iter().all(|e| f.is_zero(e)), "kernel vector is not annihilated");
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// For each right-hand side `v`, some `u` with `self · u = v`, or `None`.
    /// Solutions set every free variable to zero and are re-verified.
    pub fn solve_many(&self, rhs: &[Vec<F::Elem>]) -> Result<Vec<Option<Vec<F::Elem>>>> {
        if let Some(bad) = rhs.iter().find(|v| v.len() != self.rows) {
            return Err(Error::DimensionMismatch { expected: self.rows, got: bad.len() });
        }
        let f = &self.field;
        let k = rhs.len();
        let (blocks, _) = self.blocks();
        let mut in_block = vec![false; self.rows];
        for b in &blocks {
            for &r in &b.rows {
                in_block[r] = true;
            }
        }
        let mut ok: Vec<bool> = (0..k)
            .map(|j| (0..self.rows).all(|r| in_block[r] || f.is_zero(&rhs[j][r])))
            .collect();
        let partial: Vec<(Vec<bool>, Vec<(usize, usize, F::Elem)>)> = blocks
            .par_iter()
            .map(|b| {
                let width = b.cols.len();
                let dense = self.dense_block(b, |r| rhs.iter().map(|v| v[r].clone()).collect());
                let ech = elim::echelon(f, dense, width, true);
                let consistent: Vec<bool> = (0..k)
                    .map(|j| ech.rows[ech.rank()..].iter().all(|row| f.is_zero(&row[width + j])))
                    .collect();
                let mut entries = Vec::new();
                for (r, &pc) in ech.pivot_cols.iter().enumerate() {
                    for j in 0..k {
                        entries.push((j, b.cols[pc], ech.rows[r][width + j].clone()));
                    }
                }
                (consistent, entries)
            })
            .collect();
        let mut sols: Vec<Vec<F::Elem>> = vec![vec![f.zero(); self.cols]; k];
        for (consistent, entries) in partial {
            for (j, c) in consistent.iter().enumerate() {
                ok[j] &= c;
            }
            for (j, c, v) in entries {
                sols[j][c] = v;
            }
        }
        let mut out = Vec::with_capacity(k);
        for (j, sol) in sols.into_iter().enumerate() {
            if !ok[j] {
                out.push(None);
                continue;
            }
            let check = self.mul_vec(&sol)?;
            assert!(check == rhs[j], "solution does not reproduce the right-hand side");
            out.push(Some(sol));
        }
        Ok(out)
    }

    /// `Some(u)` with `self · u = v` when `v` is in the column space.
    pub fn in_image(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        Ok(self.solve_many(&[v.to_vec()])?.pop().flatten())
    }
}
