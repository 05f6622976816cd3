//! Gauss–Jordan elimination kernels.
//!
//! Matrices are first split into the connected components of their
//! row/column incidence graph; each component is eliminated densely. The
//! multiplication maps handled here are homogeneous for a `Z/3` grading
//! (`x ↦ 1`, `y ↦ 2`, `z ↦ 0`), so the split alone cuts elimination cost by
//! roughly an order of magnitude.

use rayon::prelude::*;

use crate::field::Field;

/// Rows × width below which row updates stay sequential.
const PAR_THRESHOLD: usize = 1 << 16;

/// One connected component: original row and column indices, ascending.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Components of a row-major `rows × cols` matrix. Columns touching no
/// nonzero entry are returned separately; rows touching none are omitted.
pub(crate) fn components<E>(
    rows: usize,
    cols: usize,
    data: &[E],
    is_zero: impl Fn(&E) -> bool,
) -> (Vec<Block>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut touched = vec![false; rows + cols];
    for r in 0..rows {
        for c in 0..cols {
            if !is_zero(&data[r * cols + c]) {
                touched[r] = true;
                touched[rows + c] = true;
                let (ra, rb) = (find(&mut parent, r), find(&mut parent, rows + c));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Block> = Default::default();
    let mut zero_cols = Vec::new();
    for c in 0..cols {
        if !touched[rows + c] {
            zero_cols.push(c);
            continue;
        }
        let root = find(&mut parent, rows + c);
        by_root.entry(root).or_insert_with(|| Block { rows: Vec::new(), cols: Vec::new() }).cols.push(c);
    }
    for r in 0..rows {
        if touched[r] {
            let root = find(&mut parent, r);
            by_root.get_mut(&root).expect("row joined to a column").rows.push(r);
        }
    }
    let mut blocks: Vec<Block> = by_root.into_values().collect();
    blocks.sort_by_key(|b| b.cols[0]);
    (blocks, zero_cols)
}

/// Result of eliminating a dense matrix whose first `ncols` columns are
/// pivot candidates and whose remaining columns ride along.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<E> {
    /// All rows after elimination. The first `pivot_cols.len()` rows are
    /// pivot rows with pivot entry 1; the remaining rows vanish on the first
    /// `ncols` columns.
    pub rows: Vec<Vec<E>>,
    pub pivot_cols: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Row reduction. With `full`, entries above pivots are cleared as well (RREF).
pub(crate) fn echelon<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize, full: bool) -> Echelon<F::Elem> {
    if field.is_prime_field() {
        return echelon_bits(field, rows, ncols, full);
    }
    let n = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut rows = rows;
    let mut pivot_cols = Vec::new();
    let par = n * width >= PAR_THRESHOLD;
    let mut rank = 0;
    for c in 0..ncols {
        if rank == n {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate().skip(rank) {
            if !field.is_zero(&row[c]) {
                let w = field.pivot_weight(&row[c]);
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, r));
                    if w == 0 {
                        break;
                    }
                }
            }
        }
        let Some((_, p)) = best else { continue };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][c]).expect("pivot is nonzero");
        field.scale_slice(&mut rows[rank][c..], &inv);

        let (top, rest) = rows.split_at_mut(rank + 1);
        let (above, pivot) = top.split_at_mut(rank);
        let pivot = &pivot[0][c..];
        let update = |row: &mut Vec<F::Elem>| {
            if !field.is_zero(&row[c]) {
                let factor = row[c].clone();
                field.axpy(&mut row[c..], &factor, pivot);
            }
        };
        if par {
            rest.par_iter_mut().for_each(update);
            if full {
                above.par_iter_mut().for_each(update);
            }
        } else {
            rest.iter_mut().for_each(update);
            if full {
                above.iter_mut().for_each(update);
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    Echelon { rows, pivot_cols }
}

/// Bit-packed elimination over F2: rows become `u64` words, updates are word-wide XOR.
fn echelon_bits<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize, full: bool) -> Echelon<F::Elem> {
    let n = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let words = width.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut w = vec![0u64; words];
            for (j, e) in row.iter().enumerate() {
                if field.as_bit(e).expect("prime field element") {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    drop(rows);
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    let par = n * words >= PAR_THRESHOLD / 8;
    for c in 0..ncols {
        if rank == n {
            break;
        }
        let (wi, mask) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..n).find(|&r| bits[r][wi] & mask != 0) else { continue };
        bits.swap(rank, p);
        let (top, rest) = bits.split_at_mut(rank + 1);
        let (above, pivot) = top.split_at_mut(rank);
        let pivot = &pivot[0][wi..];
        let update = |row: &mut Vec<u64>| {
            if row[wi] & mask != 0 {
                for (d, s) in row[wi..].iter_mut().zip(pivot) {
                    *d ^= s;
                }
            }
        };
        if par {
            rest.par_iter_mut().for_each(update);
            if full {
                above.par_iter_mut().for_each(update);
            }
        } else {
            rest.iter_mut().for_each(update);
            if full {
                above.iter_mut().for_each(update);
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    let rows = bits
        .into_iter()
        .map(|w| (0..width).map(|j| field.from_bit(w[j / 64] >> (j % 64) & 1 == 1)).collect())
        .collect();
    Echelon { rows, pivot_cols }
}
