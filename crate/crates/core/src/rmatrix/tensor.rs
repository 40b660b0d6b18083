use crate::error::{Error, Result};
use crate::scalars::sparse::{DenseAccumulator, SparseMatrix, SparseVec};
use crate::scalars::{ExactField, Field, Scalar};

/// Linear operator on `V^{⊗m}`, `V = K^N`.
///
/// Basis vectors `e_{i_1} ⊗ ... ⊗ e_{i_m}` (0-based digits) are numbered in
/// base `N` with leg 1 most significant. The matrix maps input index (column)
/// to output index (row).
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOp<E = Scalar> {
    n: usize,
    legs: usize,
    mat: SparseMatrix<E>,
}

pub fn encode(n: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

pub fn decode(n: usize, legs: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

impl<E: Clone> TensorOp<E> {
    pub fn new(n: usize, legs: usize, mat: SparseMatrix<E>) -> Result<Self> {
        let d = n.pow(legs as u32);
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::DegreeMismatch(d, mat.nrows()));
        }
        Ok(TensorOp { n, legs, mat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.mat.ncols()
    }

    pub fn matrix(&self) -> &SparseMatrix<E> {
        &self.mat
    }

    pub fn into_matrix(self) -> SparseMatrix<E> {
        self.mat
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize, legs: usize) -> Self {
        let d = n.pow(legs as u32);
        let cols = (0..d).map(|i| vec![(i as u32, f.one())]).collect();
        TensorOp { n, legs, mat: SparseMatrix::from_columns(d, cols) }
    }

    pub fn zero(n: usize, legs: usize) -> Self {
        let d = n.pow(legs as u32);
        TensorOp { n, legs, mat: SparseMatrix::zeros(d, d) }
    }

    /// Builds from a function of (output digits, input digits). Intended for
    /// small operators only: it visits every matrix entry.
    pub fn from_fn<F: Field<Elem = E>>(f: &F, n: usize, legs: usize, entry: impl Fn(&[usize], &[usize]) -> E) -> Self {
        let d = n.pow(legs as u32);
        let digits: Vec<Vec<usize>> = (0..d).map(|i| decode(n, legs, i)).collect();
        let cols = (0..d)
            .map(|c| {
                (0..d)
                    .filter_map(|r| {
                        let v = entry(&digits[r], &digits[c]);
                        (!f.is_zero(&v)).then_some((r as u32, v))
                    })
                    .collect()
            })
            .collect();
        TensorOp { n, legs, mat: SparseMatrix::from_columns(d, cols) }
    }

    /// Entry for given output and input digit strings.
    pub fn entry(&self, out: &[usize], inp: &[usize]) -> Option<&E> {
        self.mat.get(encode(self.n, out), encode(self.n, inp))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.legs != other.legs {
            return Err(Error::DegreeMismatch(self.legs, other.legs));
        }
        Ok(())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TensorOp { n: self.n, legs: self.legs, mat: self.mat.mul(f, &other.mat)? })
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TensorOp { n: self.n, legs: self.legs, mat: self.mat.add(f, &other.mat)? })
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TensorOp { n: self.n, legs: self.legs, mat: self.mat.sub(f, &other.mat)? })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        TensorOp { n: self.n, legs: self.legs, mat: self.mat.scale(f, c) }
    }

    /// `a * self + b * other`
    pub fn lin_comb<F: Field<Elem = E>>(&self, f: &F, a: &E, other: &Self, b: &E) -> Result<Self> {
        self.check(other)?;
        Ok(TensorOp { n: self.n, legs: self.legs, mat: self.mat.lin_comb(f, a, &other.mat, b)? })
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> SparseVec<E> {
        self.mat.mul_vec(f, v)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// `I^{⊗(at-1)} ⊗ self ⊗ I^{⊗(legs-at-span+1)}` on `legs` legs, where
    /// `self` acts on legs `at .. at+span-1` (1-based).
    pub fn embed(&self, at: usize, legs: usize) -> Result<Self> {
        let span = self.legs;
        if at == 0 || at + span - 1 > legs {
            return Err(Error::InvalidArgument(format!("cannot place {span} legs at {at} of {legs}")));
        }
        let n = self.n;
        let after = n.pow((legs + 1 - at - span) as u32);
        let block = n.pow(span as u32);
        let d = n.pow(legs as u32);
        let mut cols = Vec::with_capacity(d);
        for c in 0..d {
            let lo = c % after;
            let mid = (c / after) % block;
            let hi = c / (after * block);
            let base = hi * block * after + lo;
            cols.push(self.mat.col(mid).iter().map(|(r, v)| ((base + *r as usize * after) as u32, v.clone())).collect());
        }
        Ok(TensorOp { n, legs, mat: SparseMatrix::from_columns(d, cols) })
    }

    /// Applies `self`, placed at leg `at`, to a vector on `legs` legs.
    pub fn apply_at<F: Field<Elem = E>>(
        &self,
        f: &F,
        at: usize,
        legs: usize,
        v: &SparseVec<E>,
        acc: &mut DenseAccumulator<E>,
    ) -> SparseVec<E> {
        let n = self.n;
        let span = self.legs;
        let after = n.pow((legs + 1 - at - span) as u32);
        let block = n.pow(span as u32);
        for (c, x) in v {
            let c = *c as usize;
            let lo = c % after;
            let mid = (c / after) % block;
            let hi = c / (after * block);
            let base = hi * block * after + lo;
            for (r, a) in self.mat.col(mid) {
                acc.add_mul(f, (base + *r as usize * after) as u32, a, x);
            }
        }
        acc.drain(f)
    }

    /// Conjugates the leg order: the operator `P ∘ self ∘ P^{-1}` where `P`
    /// sends leg `j` to leg `perm[j]` (0-based).
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let legs = self.legs;
        let map = |idx: usize| {
            let d = decode(n, legs, idx);
            let mut out = vec![0; legs];
            for (j, &p) in perm.iter().enumerate() {
                out[p] = d[j];
            }
            encode(n, &out)
        };
        let dim = self.dim();
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); dim];
        for c in 0..dim {
            let mut col: SparseVec<E> = self.mat.col(c).iter().map(|(r, v)| (map(*r as usize) as u32, v.clone())).collect();
            col.sort_by_key(|e| e.0);
            cols[map(c)] = col;
        }
        TensorOp { n, legs, mat: SparseMatrix::from_columns(dim, cols) }
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let d2 = other.dim();
        let legs = self.legs + other.legs;
        let d = self.dim() * d2;
        let mut cols = Vec::with_capacity(d);
        for c1 in 0..self.dim() {
            for c2 in 0..d2 {
                let mut col = Vec::new();
                for (r1, a) in self.mat.col(c1) {
                    for (r2, b) in other.mat.col(c2) {
                        let v = f.mul(a, b);
                        if !f.is_zero(&v) {
                            col.push(((*r1 as usize * d2 + *r2 as usize) as u32, v));
                        }
                    }
                }
                cols.push(col);
            }
        }
        Ok(TensorOp { n: self.n, legs, mat: SparseMatrix::from_columns(d, cols) })
    }
}

impl TensorOp<Scalar> {
    /// Image of an exact operator in another field.
    pub fn specialize<F: Field>(&self, f: &F) -> Result<TensorOp<F::Elem>> {
        Ok(TensorOp { n: self.n, legs: self.legs, mat: self.mat.try_map(f, |x| f.from_scalar(x))? })
    }

    pub fn exact_identity(n: usize, legs: usize) -> Self {
        Self::identity(&ExactField, n, legs)
    }
}

/// Sequentially applies placed local operators (rightmost first) to a vector.
pub fn apply_chain<F: Field>(
    f: &F,
    ops: &[(&TensorOp<F::Elem>, usize)],
    legs: usize,
    v: &SparseVec<F::Elem>,
    acc: &mut DenseAccumulator<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut cur = v.clone();
    for (op, at) in ops.iter().rev() {
        cur = op.apply_at(f, *at, legs, &cur, acc);
    }
    cur
}
