//! The braiding `σ_τ` on `Γ ⊗ Γ`, Woronowicz antisymmetrizers and the
//! corresponding objects inside `H_k ⊗ H_k`.
//!
//! Two layouts of `V^{⊗2k}` appear. In the interleaved layout the legs are
//! `(i_1 j_1 i_2 j_2 ...)` and `σ_i` occupies legs `2i-1 .. 2i+2`. In the
//! block layout the legs are `(i_1 .. i_k j_1 .. j_k)` and the braid generator
//! acts as `Ř^{-τ}` on legs `i, i+1` together with `R̂^{τ}` on legs `k+i, k+i+1`.



mod hh;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rmatrix::{build_family, Tau, TensorOp};
use crate::scalars::sparse::{DenseAccumulator, SparseVec};
use crate::scalars::{ExactField, Field, FieldBuild, Scalar, SparseMatrix};
use crate::symgroup::{all_perms, longest_element, reduced_word};

pub use hh::{abstract_antisym, pi_lambda, pi_lambda_unnormalized, rho_tau, HHElt, RhoTauBuild};



#[derive(Clone, Debug)]
pub struct BraidingOp {
    pub tau: Tau,
    pub n: usize,
    pub sigma: TensorOp,
}

static SIGMAS: Lazy<Mutex<HashMap<(usize, Tau), Arc<BraidingOp>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `σ_τ = R̃τ_{23} Ř^{-τ}_{12} R̂^{τ}_{34} (R̃τ_{23})^{-1}` on `V^{⊗4}`.
pub fn build_sigma(tau: Tau, n: usize) -> Result<Arc<BraidingOp>> {
    if let Some(s) = SIGMAS.lock().unwrap().get(&(n, tau)) {
        return Ok(s.clone());
    }
    let fam = build_family(n)?;
    let f = ExactField;
    let t = tau.sign();
    let factors = [
        fam.rtilde(tau).embed(2, 4)?,
        fam.rcheck_pow(-t).embed(1, 4)?,
        fam.rhat_pow(t).embed(3, 4)?,
        fam.rgrave(tau.flip()).embed(2, 4)?,
    ];
    let mut sigma = factors[0].clone();
    for x in &factors[1..] {
        sigma = sigma.compose(&f, x)?;
    }
    let op = Arc::new(BraidingOp { tau, n, sigma });
    SIGMAS.lock().unwrap().entry((n, tau)).or_insert(op.clone());
    Ok(op)
}

/// `θ = Σ_i q^{-2i} e_i ⊗ e_i`, the bi-invariant element of `V ⊗ V`.
pub fn theta_vector(n: usize) -> SparseVec<Scalar> {
    theta_vector_in(&ExactField, n)
}

pub fn theta_vector_in<F: Field>(f: &F, n: usize) -> SparseVec<F::Elem> {
    (0..n).map(|i| ((i * n + i) as u32, f.q_pow(-2 * (i as i64 + 1)))).collect()
}

/// Generators `g_1 .. g_{k-1}` of a braid group action on `V^{⊗2k}`.
#[derive(Clone, Debug)]
pub struct BraidGens<E> {
    k: usize,
    n: usize,
    kind: GensKind<E>,
}

#[derive(Clone, Debug)]
enum GensKind<E> {
    Interleaved(TensorOp<E>),
    Block { dual: TensorOp<E>, vector: TensorOp<E> },
}

impl<E: Clone + Send + Sync> BraidGens<E> {
    /// `σ_i` placed on legs `2i-1 .. 2i+2`.
    pub fn interleaved(sigma: TensorOp<E>, k: usize) -> Self {
        BraidGens { k, n: sigma.n(), kind: GensKind::Interleaved(sigma) }
    }

    /// `dual_i ∘ vector_{k+i}` in the block layout.
    pub fn block(dual: TensorOp<E>, vector: TensorOp<E>, k: usize) -> Self {
        BraidGens { k, n: dual.n(), kind: GensKind::Block { dual, vector } }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        2 * self.k
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.legs() as u32)
    }

    pub fn accumulator<F: Field<Elem = E>>(&self, f: &F) -> DenseAccumulator<E> {
        DenseAccumulator::new(f, self.dim())
    }

    /// `g_i v`
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, i: usize, v: &SparseVec<E>, acc: &mut DenseAccumulator<E>) -> SparseVec<E> {
        let legs = self.legs();
        match &self.kind {
            GensKind::Interleaved(s) => s.apply_at(f, 2 * i - 1, legs, v, acc),
            GensKind::Block { dual, vector } => {
                let w = vector.apply_at(f, self.k + i, legs, v, acc);
                dual.apply_at(f, i, legs, &w, acc)
            }
        }
    }

    /// `g_{l_1} g_{l_2} ... g_{l_m} v` for the word `l`.
    pub fn apply_word<F: Field<Elem = E>>(&self, f: &F, word: &[usize], v: &SparseVec<E>, acc: &mut DenseAccumulator<E>) -> SparseVec<E> {
        let mut cur = v.clone();
        for &i in word.iter().rev() {
            cur = self.apply(f, i, &cur, acc);
        }
        cur
    }

    /// `A_m v` for `m <= k`, acting on the first `m` slots: the recursion
    /// `A_m = (Σ_j (-1)^j g_{m-j} ⋯ g_{m-1}) (A_{m-1} ⊗ I)`.
    pub fn antisym<F: Field<Elem = E>>(&self, f: &F, m: usize, v: &SparseVec<E>, acc: &mut DenseAccumulator<E>) -> SparseVec<E> {
        let mut cur = v.clone();
        for level in 2..=m {
            // Σ_j (-1)^j c_j with c_j = g_{level-j} c_{j-1}
            let mut term = cur.clone();
            for (x, e) in &term {
                acc.add(f, *x, e);
            }
            let mut sum = acc.drain(f);
            for j in 1..level {
                term = self.apply(f, level - j, &term, acc);
                let sign = if j % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                for (x, e) in &sum {
                    acc.add(f, *x, e);
                }
                for (x, e) in &term {
                    acc.add_mul(f, *x, &sign, e);
                }
                sum = acc.drain(f);
            }
            cur = sum;
        }
        cur
    }

    /// `Σ_{w ∈ S_k} (-1)^{ℓ(w)} g_w v` term by term.
    pub fn antisym_brute<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>, acc: &mut DenseAccumulator<E>) -> SparseVec<E> {
        let mut sum: SparseVec<E> = Vec::new();
        let minus = f.neg(&f.one());
        for w in all_perms(self.k) {
            let word = reduced_word(&w).letters;
            let t = self.apply_word(f, &word, v, acc);
            let c = if word.len() % 2 == 0 { f.one() } else { minus.clone() };
            for (x, e) in &sum {
                acc.add(f, *x, e);
            }
            for (x, e) in &t {
                acc.add_mul(f, *x, &c, e);
            }
            sum = acc.drain(f);
        }
        sum
    }

    /// `g_{w_0}` along the canonical reduced word of the longest element.
    pub fn w0<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>, acc: &mut DenseAccumulator<E>) -> SparseVec<E> {
        let word = reduced_word(&longest_element(self.k)).letters;
        self.apply_word(f, &word, v, acc)
    }

    /// Materializes `op` as a matrix, one basis vector per column.
    pub fn matrix<F, G>(&self, f: &F, op: G) -> TensorOp<E>
    where
        F: Field<Elem = E>,
        G: Fn(&Self, &SparseVec<E>, &mut DenseAccumulator<E>) -> SparseVec<E> + Sync,
    {
        let d = self.dim();
        let cols: Vec<SparseVec<E>> = (0..d)
            .into_par_iter()
            .map_init(|| self.accumulator(f), |acc, c| op(self, &vec![(c as u32, f.one())], acc))
            .collect();
        TensorOp::new(self.n, self.legs(), SparseMatrix::from_columns(d, cols)).expect("square by construction")
    }
}

/// The Woronowicz generators `σ_i` (interleaved layout) over `f`.
pub fn sigma_gens<F: Field>(f: &F, tau: Tau, n: usize, k: usize) -> Result<BraidGens<F::Elem>> {
    let s = build_sigma(tau, n)?;
    Ok(BraidGens::interleaved(s.sigma.specialize(f)?, k))
}

/// The images `ρ_τ(T_i^{-1} ⊗ T_i)` (block layout) over `f`.
pub fn block_gens<F: Field>(f: &F, tau: Tau, n: usize, k: usize) -> Result<BraidGens<F::Elem>> {
    let fam = build_family(n)?;
    let t = tau.sign();
    Ok(BraidGens::block(fam.rcheck_pow(-t).specialize(f)?, fam.rhat_pow(t).specialize(f)?, k))
}

/// `A_k = Σ_w (-1)^{ℓ(w)} σ_w` on `V^{⊗2k}` via the shuffle recursion.
pub fn woronowicz_antisym(k: usize, sigma: &BraidingOp) -> TensorOp {
    let f = ExactField;
    let g = BraidGens::interleaved(sigma.sigma.clone(), k);
    g.matrix(&f, |g, v, acc| g.antisym(&ExactField, k, v, acc))
}

/// `σ_{w_0}` on `V^{⊗2k}`.
pub fn sigma_w0(k: usize, sigma: &BraidingOp) -> TensorOp {
    let f = ExactField;
    let g = BraidGens::interleaved(sigma.sigma.clone(), k);
    g.matrix(&f, |g, v, acc| g.w0(&ExactField, v, acc))
}

/// Leg positions of the `R̃τ` factors of `Θ_k`, leftmost factor first:
/// `R̃_{2k-2} (R̃_{2k-4} R̃_{2k-3}) ⋯ (R̃_{2i} ⋯ R̃_{k+i-1}) ⋯ (R̃_2 ⋯ R̃_k)`.
pub fn theta_positions(k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for i in (1..k).rev() {
        out.extend(2 * i..=k + i - 1);
    }
    out
}

/// `Θ_k` applied to a vector in the block layout, giving the interleaved layout.
pub fn theta_apply<F: Field>(
    f: &F,
    rtilde: &TensorOp<F::Elem>,
    k: usize,
    v: &SparseVec<F::Elem>,
    acc: &mut DenseAccumulator<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut cur = v.clone();
    for &at in theta_positions(k).iter().rev() {
        cur = rtilde.apply_at(f, at, 2 * k, &cur, acc);
    }
    cur
}

/// The intertwiner `Θ_k` on `V^{⊗2k}`.
pub fn theta_iso(k: usize, tau: Tau, n: usize) -> Result<TensorOp> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let fam = build_family(n)?;
    let f = ExactField;
    let g = BraidGens::interleaved(TensorOp::exact_identity(n, 4), k);
    let rt = fam.rtilde(tau).clone();
    Ok(g.matrix(&f, |_, v, acc| theta_apply(&ExactField, &rt, k, v, acc)))
}

/// Which antisymmetrizer to materialize for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntisymLayout {
    /// `A_k` built from `σ_τ`.
    Interleaved,
    /// `a_k = ρ_τ(𝔄_k)`.
    Block,
}

/// `A_k` or `a_k` as a [`FieldBuild`], so large cases can be built mod p.
#[derive(Clone, Copy, Debug)]
pub struct AntisymBuild {
    pub k: usize,
    pub n: usize,
    pub tau: Tau,
    pub layout: AntisymLayout,
}

impl FieldBuild for AntisymBuild {
    fn build<F: Field>(&self, f: &F) -> Result<SparseMatrix<F::Elem>> {
        if self.k == 0 {
            return Ok(SparseMatrix::from_columns(1, vec![vec![(0, f.one())]]));
        }
        let g = match self.layout {
            AntisymLayout::Interleaved => sigma_gens(f, self.tau, self.n, self.k)?,
            AntisymLayout::Block => block_gens(f, self.tau, self.n, self.k)?,
        };
        let k = self.k;
        Ok(g.matrix(f, |g, v, acc| g.antisym(f, k, v, acc)).into_matrix())
    }
}
