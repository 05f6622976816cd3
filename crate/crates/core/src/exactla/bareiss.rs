//! Fraction-free elimination over `F2[t]`.
//!
//! Every intermediate entry is a minor of the input, so divisions are exact
//! and degrees stay bounded by the minor degrees.

use super::Matrix;
use crate::error::{Error, Result};
use crate::field::{F2Poly, Field, RatElem, RatFunc};

/// Runs Bareiss elimination in place; returns the rank and, when square and
/// nonsingular, the determinant (the last pivot).
fn bareiss(mut a: Vec<Vec<F2Poly>>, ncols: usize) -> (usize, F2Poly) {
    let n = a.len();
    let mut prev = F2Poly::one();
    let mut rank = 0;
    let mut last = F2Poly::zero();
    for c in 0..ncols {
        if rank == n {
            break;
        }
        let pivot = (rank..n)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| a[r][c].degree());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            for j in c + 1..ncols {
                let t = row[j].mul(&prow[c]).add(&row[c].mul(&prow[j]));
                row[j] = t.div_exact(&prev);
            }
            row[c] = F2Poly::zero();
        }
        // Columns skipped earlier are zero below `rank`, so the invariant holds.
        prev = prow[c].clone();
        last = prev.clone();
        rank += 1;
    }
    (rank, last)
}

/// Rank of a polynomial matrix (equal to its rank over `F2(t)`).
pub fn poly_rank(rows: &[Vec<F2Poly>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    bareiss(rows.to_vec(), ncols).0
}

/// Determinant of a square polynomial matrix.
pub fn poly_det(rows: &[Vec<F2Poly>]) -> Result<F2Poly> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    if n == 0 {
        return Ok(F2Poly::one());
    }
    let (rank, last) = bareiss(rows.to_vec(), n);
    Ok(if rank == n { last } else { F2Poly::zero() })
}

/// Multiplies each row by the lcm of its denominators. Returns the polynomial
/// rows and the product of the multipliers.
pub fn clear_denominators(m: &Matrix<RatFunc>) -> (Vec<Vec<F2Poly>>, F2Poly) {
    let mut scale = F2Poly::one();
    let rows = (0..m.nrows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(F2Poly::one(), |acc, e: &RatElem| {
                let g = acc.gcd(e.den());
                acc.mul(&e.den().div_exact(&g))
            });
            scale = scale.mul(&lcm);
            row.iter().map(|e| e.num().mul(&lcm.div_exact(e.den()))).collect()
        })
        .collect();
    (rows, scale)
}

impl Matrix<RatFunc> {
    /// Determinant over `F2(t)` via fraction-free elimination.
    pub fn det(&self) -> Result<RatElem> {
        let (rows, scale) = clear_denominators(self);
        let d = poly_det(&rows)?;
        Ok(self.field().mul(&RatElem::from_poly(d), &self.field().inv(&RatElem::from_poly(scale)).expect("nonzero")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u8]) -> F2Poly {
        F2Poly::from_coeffs(c)
    }

    #[test]
    fn two_by_two() {
        // det [[t, 1], [1, t]] = t^2 + 1
        let rows = vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(poly_det(&rows).unwrap(), p(&[1, 0, 1]));
        assert_eq!(poly_rank(&rows), 2);
        let sing = vec![vec![p(&[0, 1]), p(&[0, 0, 1])], vec![p(&[1]), p(&[0, 1])]];
        assert!(poly_det(&sing).unwrap().is_zero());
        assert_eq!(poly_rank(&sing), 1);
    }

    #[test]
    fn matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        fn cofactor(m: &[Vec<F2Poly>]) -> F2Poly {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = F2Poly::zero();
            for c in 0..m.len() {
                let minor: Vec<Vec<F2Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| e.clone()).collect())
                    .collect();
                acc = acc.add(&m[0][c].mul(&cofactor(&minor)));
            }
            acc
        }
        for n in 1..=5 {
            for _ in 0..10 {
                let m: Vec<Vec<F2Poly>> =
                    (0..n).map(|_| (0..n).map(|_| F2Poly::from_u64(rng.gen_range(0..8))).collect()).collect();
                assert_eq!(poly_det(&m).unwrap(), cofactor(&m));
            }
        }
    }

    #[test]
    fn rational_determinant() {
        let f = RatFunc::new("t");
        let t = f.indeterminate();
        let inv = f.inv(&t).unwrap();
        // det [[1/t, 1], [1, t]] = 1 + 1 = 0; det [[1/t, 0], [0, t^2]] = t.
        let m = Matrix::from_rows(&f, 2, vec![vec![inv.clone(), f.one()], vec![f.one(), t.clone()]]).unwrap();
        assert!(f.is_zero(&m.det().unwrap()));
        let m = Matrix::from_rows(&f, 2, vec![vec![inv, f.zero()], vec![f.zero(), f.square(&t)]]).unwrap();
        assert_eq!(m.det().unwrap(), t);
    }
}
