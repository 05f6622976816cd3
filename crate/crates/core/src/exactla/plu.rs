//! `P·M = L·U` factorization, kept for auditing the block eliminator.

use super::Matrix;
use crate::field::Field;

/// `perm[i]` is the input row placed at position `i`; `lower` is unit lower
/// triangular (`rows × rows`), `upper` is in row echelon form.
#[derive(Debug, Clone)]
pub struct Plu<F: Field> {
    pub perm: Vec<usize>,
    pub lower: Matrix<F>,
    pub upper: Matrix<F>,
    rank: usize,
}

impl<F: Field> Plu<F> {
    pub fn new(m: &Matrix<F>) -> Self {
        let f = m.field();
        let (n, w) = (m.nrows(), m.ncols());
        let mut u: Vec<Vec<F::Elem>> = (0..n).map(|r| m.row(r).to_vec()).collect();
        let mut l = vec![vec![f.zero(); n]; n];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rank = 0;
        for c in 0..w {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&r| !f.is_zero(&u[r][c])) else { continue };
            u.swap(rank, p);
            perm.swap(rank, p);
            l.swap(rank, p);
            let inv = f.inv(&u[rank][c]).expect("nonzero pivot");
            let (top, rest) = u.split_at_mut(rank + 1);
            for (i, row) in rest.iter_mut().enumerate() {
                if f.is_zero(&row[c]) {
                    continue;
                }
                let factor = f.mul(&row[c], &inv);
                f.axpy(&mut row[c..], &factor, &top[rank][c..]);
                l[rank + 1 + i][rank] = factor;
            }
            rank += 1;
        }
        for (i, row) in l.iter_mut().enumerate() {
            row[i] = f.one();
        }
        let lower = Matrix::from_rows(f, n, l).expect("square");
        let upper = Matrix::from_rows(f, w, u).expect("same width");
        Self { perm, lower, upper, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Checks `P·M = L·U` by re-multiplication.
    pub fn reconstructs(&self, m: &Matrix<F>) -> bool {
        let lu = self.lower.mul(&self.upper).expect("conformable");
        (0..m.nrows()).all(|i| lu.row(i) == m.row(self.perm[i]))
    }
}
