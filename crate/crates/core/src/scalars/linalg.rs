//! Dense Gaussian elimination over any [`Field`]: echelon forms, rank and
//! kernels. Used on the small blocks produced by the sparse front ends.

use super::field::Field;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::Result;

/// Brings `rows` to row echelon form in place and returns the pivot columns.
///
/// With `reduce` set, the result is the reduced echelon form with unit pivots.
/// Rows beyond the returned rank are zero afterwards.
pub fn echelon<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], reduce: bool) -> Result<Vec<usize>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !f.is_zero(&row[c]) {
                let w = f.weight(&row[c]);
                if best.is_none_or(|b| w < b.1) {
                    best = Some((i, w));
                    if w <= 1 {
                        break;
                    }
                }
            }
        }
        let Some((p, _)) = best else { continue };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c])?;
        if reduce {
            for x in rows[r][c..].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let (above, pivot) = head.split_at_mut(r);
        let pivot_row = &pivot[0];
        let eliminate = |row: &mut Vec<F::Elem>| {
            if f.is_zero(&row[c]) {
                return;
            }
            let factor = if reduce { f.neg(&row[c]) } else { f.neg(&f.mul(&row[c], &inv)) };
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(y) {
                    *x = f.mul_add(x, &factor, y);
                }
            }
        };
        tail.iter_mut().for_each(eliminate);
        if reduce {
            above.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn dense_rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> Result<usize> {
    // eliminate along the shorter dimension
    if let Some(first) = rows.first() {
        if first.len() > rows.len() * 2 {
            rows = transpose_dense(f, &rows);
        }
    }
    Ok(echelon(f, &mut rows, false)?.len())
}

pub fn transpose_dense<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut out = vec![vec![f.zero(); nrows]; ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.clone();
        }
    }
    out
}

/// Basis of the right kernel `{ v : M v = 0 }` as dense vectors.
pub fn nullspace_dense<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Vec<Vec<F::Elem>>> {
    let mut work: Vec<Vec<F::Elem>> = rows.to_vec();
    let pivots = echelon(f, &mut work, true)?;
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&work[i][free]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Kernel of a sparse matrix, returned as sparse vectors.
pub fn nullspace<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Result<Vec<SparseVec<F::Elem>>> {
    let dense = m.to_dense(f);
    let kernel = nullspace_dense(f, &dense, m.ncols())?;
    Ok(kernel.into_iter().map(|v| dense_to_sparse(f, &v)).collect())
}

pub fn dense_to_sparse<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(f: &F, v: &SparseVec<F::Elem>, n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

/// Rank of a list of sparse vectors of length `dim` (treated as columns).
pub fn span_rank<F: Field>(f: &F, vecs: &[SparseVec<F::Elem>], dim: usize) -> Result<usize> {
    let m = SparseMatrix::from_columns(dim, vecs.to_vec());
    super::rank::rank_in_field(f, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::field::ExactField;
    use crate::scalars::modular::ModField;
    use crate::scalars::scalar::Scalar;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let f = ExactField;
        let q = Scalar::q();
        let rows = vec![vec![q.clone(), Scalar::one()], vec![&q * &q, q.clone()]];
        let ker = nullspace_dense(&f, &rows, 2).unwrap();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!((&(&q * &v[0]) + &v[1]).is_zero());
    }

    #[test]
    fn modular_rank() {
        let f = ModField::new(13, 2).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(dense_rank(&f, rows).unwrap(), 2);
    }
}
