use super::field::{ExactField, Field};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Column-major sparse matrix. Each column is a [`SparseVec`] of row entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from already-clean columns (sorted, zero-free). Checked in debug builds.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<E>>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|e| (e.0 as usize) < nrows)));
        SparseMatrix { nrows, ncols: cols.len(), cols }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates and
    /// dropping zeros.
    pub fn from_triplets<F, I>(f: &F, nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (usize, usize, E)>,
    {
        let mut cols: Vec<Vec<(u32, E)>> = vec![Vec::new(); ncols];
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r}, {c}) outside {nrows}x{ncols} matrix"
                )));
            }
            cols[c].push((r as u32, v));
        }
        let cols = cols.into_iter().map(|c| compress(f, c)).collect();
        Ok(SparseMatrix { nrows, ncols, cols })
    }

    /// Builds from a dense row-major array, dropping zeros.
    pub fn from_dense<F: Field<Elem = E>>(f: &F, rows: &[Vec<E>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !f.is_zero(v) {
                    cols[j].push((i as u32, v.clone()));
                }
            }
        }
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &SparseVec<E> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec<E>> {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        let col = &self.cols[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).ok().map(|i| &col[i].1)
    }

    /// Iterates `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r as usize].push((c as u32, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols }
    }

    /// Dense row-major copy.
    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut rows = vec![vec![f.zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            rows[r][c] = v.clone();
        }
        rows
    }

    /// Maps every entry through a fallible conversion, dropping zeros.
    pub fn try_map<G: Field>(&self, g: &G, mut conv: impl FnMut(&E) -> Result<G::Elem>) -> Result<SparseMatrix<G::Elem>> {
        let mut cols = Vec::with_capacity(self.ncols);
        for col in &self.cols {
            let mut out = Vec::with_capacity(col.len());
            for (r, v) in col {
                let w = conv(v)?;
                if !g.is_zero(&w) {
                    out.push((*r, w));
                }
            }
            cols.push(out);
        }
        Ok(SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols })
    }

    /// Matrix-vector product with a sparse vector.
    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut acc = DenseAccumulator::new(f, self.nrows);
        for (j, x) in v {
            for (r, a) in &self.cols[*j as usize] {
                acc.add_mul(f, *r, a, x);
            }
        }
        acc.drain(f)
    }

    /// Product `self * rhs`.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, rhs: &SparseMatrix<E>) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::DegreeMismatch(self.ncols, rhs.nrows));
        }
        let mut acc = DenseAccumulator::new(f, self.nrows);
        let mut cols = Vec::with_capacity(rhs.ncols);
        for col in &rhs.cols {
            for (j, x) in col {
                for (r, a) in &self.cols[*j as usize] {
                    acc.add_mul(f, *r, a, x);
                }
            }
            cols.push(acc.drain(f));
        }
        Ok(SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, cols })
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, rhs: &SparseMatrix<E>) -> Result<Self> {
        self.lin_comb(f, &f.one(), rhs, &f.one())
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, rhs: &SparseMatrix<E>) -> Result<Self> {
        self.lin_comb(f, &f.one(), rhs, &f.neg(&f.one()))
    }

    /// `a * self + b * rhs`
    pub fn lin_comb<F: Field<Elem = E>>(&self, f: &F, a: &E, rhs: &SparseMatrix<E>, b: &E) -> Result<Self> {
        if self.nrows != rhs.nrows || self.ncols != rhs.ncols {
            return Err(Error::DegreeMismatch(self.nrows * self.ncols, rhs.nrows * rhs.ncols));
        }
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(x, y)| sparse_lin_comb(f, a, x, b, y))
            .collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zeros(self.nrows, self.ncols);
        }
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, f.mul(c, v))).filter(|e| !f.is_zero(&e.1)).collect())
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

impl SparseMatrix<Scalar> {
    /// Convenience constructor for exact matrices.
    pub fn from_scalar_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        Self::from_triplets(&ExactField, nrows, ncols, triplets)
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i as u32, Scalar::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, cols }
    }
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn compress<F: Field>(f: &F, mut v: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(&last.1, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !f.is_zero(&e.1));
    out
}

/// `a * x + b * y` for sparse vectors.
pub fn sparse_lin_comb<F: Field>(
    f: &F,
    a: &F::Elem,
    x: &SparseVec<F::Elem>,
    b: &F::Elem,
    y: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (idx, v) = if take_x {
            i += 1;
            (x[i - 1].0, f.mul(a, &x[i - 1].1))
        } else if take_y {
            j += 1;
            (y[j - 1].0, f.mul(b, &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, f.add(&f.mul(a, &x[i - 1].1), &f.mul(b, &y[j - 1].1)))
        };
        if !f.is_zero(&v) {
            out.push((idx, v));
        }
    }
    out
}

/// Scatter/gather accumulator for building one sparse vector at a time.
pub struct DenseAccumulator<E> {
    vals: Vec<E>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl<E: Clone> DenseAccumulator<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        DenseAccumulator { vals: vec![f.zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    #[inline]
    pub fn add_mul<F: Field<Elem = E>>(&mut self, f: &F, i: u32, a: &E, b: &E) {
        let k = i as usize;
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(i);
            self.vals[k] = f.mul(a, b);
        } else {
            self.vals[k] = f.mul_add(&self.vals[k], a, b);
        }
    }

    #[inline]
    pub fn add<F: Field<Elem = E>>(&mut self, f: &F, i: u32, a: &E) {
        let k = i as usize;
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(i);
            self.vals[k] = a.clone();
        } else {
            self.vals[k] = f.add(&self.vals[k], a);
        }
    }

    /// Returns the accumulated vector and resets the accumulator.
    pub fn drain<F: Field<Elem = E>>(&mut self, f: &F) -> SparseVec<E> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let k = i as usize;
            self.mark[k] = false;
            let v = std::mem::replace(&mut self.vals[k], f.zero());
            if !f.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_scalar_triplets(
            2,
            2,
            vec![(0, 0, Scalar::q()), (0, 0, -Scalar::q()), (1, 0, Scalar::one()), (1, 1, Scalar::qhat())],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        assert!(m.get(0, 0).is_none());
        assert!(SparseMatrix::from_scalar_triplets(1, 1, vec![(1, 0, Scalar::one())]).is_err());
    }

    #[test]
    fn product_with_identity() {
        let f = ExactField;
        let m = SparseMatrix::from_scalar_triplets(2, 2, vec![(0, 1, Scalar::q()), (1, 0, Scalar::qcheck())]).unwrap();
        let i = SparseMatrix::identity(2);
        assert_eq!(m.mul(&f, &i).unwrap(), m);
        assert_eq!(i.mul(&f, &m).unwrap(), m);
        let mm = m.mul(&f, &m).unwrap();
        let expect = &Scalar::q() * &Scalar::qcheck();
        assert_eq!(mm.get(0, 0), Some(&expect));
        assert_eq!(mm.get(1, 1), Some(&expect));
        assert_eq!(m.transpose().transpose(), m);
    }
}
