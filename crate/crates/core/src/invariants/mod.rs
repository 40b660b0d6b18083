//! Invariant vectors of `(u^c)^{⊗k} ⊗ u^{⊗k}` through the dual action of
//! `U_q(gl_N)`, and the checks on bi-invariant forms built on them.
//!
//! On `V` the generators act by `E_i e_{i+1} = e_i`, `F_i e_i = e_{i+1}`,
//! `K_j e_a = q^{δ_ja} e_a`; on the dual module by `E_i e^i = -q^{-1} e^{i+1}`,
//! `F_i e^{i+1} = -q e^i`, `K_j e^a = q^{-δ_ja} e^a`. Tensor products use
//! `Δ(E) = E ⊗ 1 + K ⊗ E` and `Δ(F) = F ⊗ K^{-1} + 1 ⊗ F` with `K = K_i K_{i+1}^{-1}`.
//! With these choices the invariant line of `u^c ⊗ u` is spanned by `θ`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braiding::{block_gens, sigma_gens, theta_apply, theta_vector_in, BraidGens};
use crate::error::{Error, Result};
use crate::rmatrix::{build_family, decode, encode, Tau};
use crate::scalars::linalg::{nullspace_dense, span_rank};
use crate::scalars::rank::modular_trials;
use crate::scalars::sparse::{DenseAccumulator, SparseVec};
use crate::scalars::{ExactField, Field, RankMode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LegKind {
    Dual,
    Vector,
}

/// The `U_q(gl_N)` action on a tensor product of `V` and its dual.
#[derive(Clone, Debug)]
pub struct UqModuleAction {
    pub n: usize,
    pub legs: Vec<LegKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
}

/// One-leg matrix element: image of basis index `a` (0-based) as `(b, q-power, sign)`.
fn one_leg(g: Generator, kind: LegKind, a: usize) -> Option<(usize, i64, i64)> {
    match (g, kind) {
        (Generator::E(i), LegKind::Vector) => (a == i).then_some((i - 1, 0, 1)),
        (Generator::F(i), LegKind::Vector) => (a == i - 1).then_some((i, 0, 1)),
        (Generator::E(i), LegKind::Dual) => (a == i - 1).then_some((i, -1, -1)),
        (Generator::F(i), LegKind::Dual) => (a == i).then_some((i - 1, 1, -1)),
        (Generator::K(j), LegKind::Vector) => Some((a, (a + 1 == j) as i64, 1)),
        (Generator::K(j), LegKind::Dual) => Some((a, -((a + 1 == j) as i64), 1)),
    }
}

/// Exponent of `q` in `K_i K_{i+1}^{-1}` on basis index `a`.
fn k_root(i: usize, kind: LegKind, a: usize) -> i64 {
    let e = (a + 1 == i) as i64 - (a == i) as i64;
    match kind {
        LegKind::Vector => e,
        LegKind::Dual => -e,
    }
}

impl UqModuleAction {
    pub fn new(n: usize, legs: Vec<LegKind>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("N must be at least 2, got {n}")));
        }
        Ok(UqModuleAction { n, legs })
    }

    /// First `k` legs dual, last `k` legs vector.
    pub fn block(n: usize, k: usize) -> Result<Self> {
        let mut legs = vec![LegKind::Dual; k];
        legs.extend(vec![LegKind::Vector; k]);
        Self::new(n, legs)
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.legs.len() as u32)
    }

    /// Image of the basis vector with index `c`.
    pub fn apply_basis<F: Field>(&self, f: &F, g: Generator, c: usize, acc: &mut DenseAccumulator<F::Elem>) -> SparseVec<F::Elem> {
        let n = self.n;
        let m = self.legs.len();
        let d = decode(n, m, c);
        match g {
            Generator::K(_) => {
                let mut e = 0;
                for (l, &a) in d.iter().enumerate() {
                    e += one_leg(g, self.legs[l], a).unwrap().1;
                }
                vec![(c as u32, f.q_pow(e))]
            }
            Generator::E(i) | Generator::F(i) => {
                let is_e = matches!(g, Generator::E(_));
                for l in 0..m {
                    let Some((b, qe, sign)) = one_leg(g, self.legs[l], d[l]) else { continue };
                    // E: K on the legs before l; F: K^{-1} on the legs after l
                    let twist: i64 = if is_e {
                        (0..l).map(|j| k_root(i, self.legs[j], d[j])).sum()
                    } else {
                        -(l + 1..m).map(|j| k_root(i, self.legs[j], d[j])).sum::<i64>()
                    };
                    let mut out = d.clone();
                    out[l] = b;
                    let x = f.mul(&f.from_int(sign), &f.q_pow(qe + twist));
                    acc.add(f, encode(n, &out) as u32, &x);
                }
                acc.drain(f)
            }
        }
    }

    pub fn apply<F: Field>(&self, f: &F, g: Generator, v: &SparseVec<F::Elem>, acc: &mut DenseAccumulator<F::Elem>) -> SparseVec<F::Elem> {
        let mut parts: Vec<(u32, F::Elem)> = Vec::new();
        for (c, x) in v {
            for (r, y) in self.apply_basis(f, g, *c as usize, acc) {
                parts.push((r, f.mul(x, &y)));
            }
        }
        for (r, y) in &parts {
            acc.add(f, *r, y);
        }
        acc.drain(f)
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in 1..self.n {
            out.push(Generator::E(i));
            out.push(Generator::F(i));
        }
        out
    }

    /// Basis indices of weight zero: every index occurs as often on dual
    /// legs as on vector legs.
    pub fn weight_zero(&self) -> Vec<usize> {
        let n = self.n;
        let m = self.legs.len();
        (0..self.dim())
            .filter(|&c| {
                let mut w = vec![0i64; n];
                for (l, a) in decode(n, m, c).into_iter().enumerate() {
                    w[a] += if self.legs[l] == LegKind::Vector { 1 } else { -1 };
                }
                w.iter().all(|&x| x == 0)
            })
            .collect()
    }

    /// Convention self-test: the `U_q(sl_2)` relations on `V`, `V^*`, `V^* ⊗ V`
    /// and `V ⊗ V`, and the invariant line of `V^* ⊗ V` spanned by `θ`.
    pub fn self_test(n: usize) -> Result<()> {
        let f = ExactField;
        let qhat = Scalar::qhat();
        let layouts = [
            vec![LegKind::Vector],
            vec![LegKind::Dual],
            vec![LegKind::Dual, LegKind::Vector],
            vec![LegKind::Vector, LegKind::Vector],
        ];
        for legs in layouts {
            let act = UqModuleAction::new(n, legs.clone())?;
            let mut acc = DenseAccumulator::new(&f, act.dim());
            for i in 1..n {
                for c in 0..act.dim() {
                    let v = vec![(c as u32, Scalar::one())];
                    // K_i K_{i+1}^{-1} raised to the power s
                    let kk = |_: &mut DenseAccumulator<Scalar>, v: &SparseVec<Scalar>, s: i64| -> SparseVec<Scalar> {
                        v.iter()
                            .map(|(c, x)| {
                                let d = decode(n, legs.len(), *c as usize);
                                let p: i64 = d.iter().enumerate().map(|(l, &a)| k_root(i, legs[l], a)).sum();
                                (*c, x * &Scalar::q_pow(s * p))
                            })
                            .collect()
                    };
                    let ev = act.apply(&f, Generator::E(i), &v, &mut acc);
                    let fv = act.apply(&f, Generator::F(i), &v, &mut acc);
                    let ef = act.apply(&f, Generator::E(i), &fv, &mut acc);
                    let fe = act.apply(&f, Generator::F(i), &ev, &mut acc);
                    let mut lhs = BTreeMap::new();
                    for (r, x) in ef {
                        crate::hecke::add_into(&mut lhs, r, &x);
                    }
                    for (r, x) in fe {
                        crate::hecke::add_into(&mut lhs, r, &-x);
                    }
                    let mut rhs = BTreeMap::new();
                    for (r, x) in kk(&mut acc, &v, 1) {
                        crate::hecke::add_into(&mut rhs, r, &x.checked_div(&qhat)?);
                    }
                    for (r, x) in kk(&mut acc, &v, -1) {
                        crate::hecke::add_into(&mut rhs, r, &-x.checked_div(&qhat)?);
                    }
                    if lhs != rhs {
                        return Err(Error::ConventionSelfTest(format!("[E_{i}, F_{i}] on {legs:?}, basis vector {c}")));
                    }
                    // K E K^{-1} = q^2 E
                    let ke = kk(&mut acc, &ev, 1);
                    let ek: Vec<(u32, Scalar)> = act
                        .apply(&f, Generator::E(i), &kk(&mut acc, &v, 1), &mut acc)
                        .into_iter()
                        .map(|(r, x)| (r, &x * &Scalar::q_pow(2)))
                        .collect();
                    if ke != ek {
                        return Err(Error::ConventionSelfTest(format!("K E K^-1 = q^2 E on {legs:?}")));
                    }
                }
            }
        }
        let inv = invariant_subspace_in(&f, &UqModuleAction::block(n, 1)?)?;
        let theta = theta_vector_in(&f, n);
        if inv.len() != 1 || span_rank(&f, &[inv[0].clone(), theta], n * n)? != 1 {
            return Err(Error::ConventionSelfTest(format!(
                "invariants of the dual tensor vector module are not the theta line (dimension {})",
                inv.len()
            )));
        }
        Ok(())
    }
}

/// Builds the action on `(u^c)^{⊗k} ⊗ u^{⊗k}` after running the convention self-test.
pub fn build_uq_action(n: usize, k: usize) -> Result<UqModuleAction> {
    UqModuleAction::self_test(n)?;
    UqModuleAction::block(n, k)
}

#[derive(Clone, Debug)]
pub struct InvariantBasis<E = Scalar> {
    pub k: usize,
    pub n: usize,
    pub vectors: Vec<SparseVec<E>>,
}

/// Joint kernel of all `E_i`, `F_i` on the weight-zero subspace.
pub fn invariant_subspace_in<F: Field>(f: &F, action: &UqModuleAction) -> Result<Vec<SparseVec<F::Elem>>> {
    let cols = action.weight_zero();
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let mut acc = DenseAccumulator::new(f, action.dim());
    // rows are (generator, output index) pairs, renumbered densely
    let mut row_ids: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (gi, g) in action.generators().into_iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            for (r, x) in action.apply_basis(f, g, c, &mut acc) {
                let next = row_ids.len();
                let id = *row_ids.entry((gi, r)).or_insert(next);
                entries.push((id, j, x));
            }
        }
    }
    let mut dense = vec![vec![f.zero(); cols.len()]; row_ids.len()];
    for (r, c, x) in entries {
        dense[r][c] = f.add(&dense[r][c], &x);
    }
    let kernel = nullspace_dense(f, &dense, cols.len())?;
    Ok(kernel
        .into_iter()
        .map(|v| {
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(j, x)| (cols[j] as u32, x))
                .collect()
        })
        .collect())
}

pub fn invariant_subspace(action: &UqModuleAction) -> Result<InvariantBasis> {
    let vectors = invariant_subspace_in(&ExactField, action)?;
    Ok(InvariantBasis { k: action.legs.len() / 2, n: action.n, vectors })
}

/// Bi-invariant vectors in `im a_k`, `a_k = ρ_τ(𝔄_k)` (block layout):
/// the images of the invariant basis, reduced to a basis.
pub fn biinvariant_vectors_in<F: Field>(f: &F, k: usize, n: usize, tau: Tau) -> Result<Vec<SparseVec<F::Elem>>> {
    if k == 0 {
        return Ok(vec![vec![(0, f.one())]]);
    }
    let inv = invariant_subspace_in(f, &UqModuleAction::block(n, k)?)?;
    let g = block_gens(f, tau, n, k)?;
    let mut acc = g.accumulator(f);
    let images: Vec<SparseVec<F::Elem>> = inv.iter().map(|v| g.antisym(f, k, v, &mut acc)).collect();
    independent_subset(f, images, g.dim())
}

/// A maximal linearly independent subset, in order.
fn independent_subset<F: Field>(f: &F, vecs: Vec<SparseVec<F::Elem>>, dim: usize) -> Result<Vec<SparseVec<F::Elem>>> {
    let mut out: Vec<SparseVec<F::Elem>> = Vec::new();
    for v in vecs {
        if f.is_exact() && v.is_empty() {
            continue;
        }
        let mut trial = out.clone();
        trial.push(v);
        if span_rank(f, &trial, dim)? == trial.len() {
            out = trial;
        }
    }
    Ok(out)
}

/// Result of a computation that may run at several modular points.
#[derive(Clone, Debug, Serialize)]
pub struct Computed<T> {
    pub value: T,
    pub exact: bool,
    /// `(p, q0)` for each modular run
    pub points: Vec<(u64, u64)>,
    /// every modular run produced the same value
    pub consistent: bool,
}

/// Runs `job` exactly or at the modular points of `mode`. Modular runs are
/// combined with `combine` (for instance `max` for ranks).
pub fn run_mode<T, J, C>(mode: &RankMode, job: J, combine: C) -> Result<Computed<T>>
where
    T: Clone + PartialEq + Send,
    J: Fn(&dyn DynField) -> Result<T> + Sync,
    C: Fn(&[T]) -> T,
{
    match mode {
        RankMode::Exact => Ok(Computed { value: job(&DynExact)?, exact: true, points: Vec::new(), consistent: true }),
        RankMode::Modular { primes, trials, seed } => {
            let runs = modular_trials(*primes, *trials, *seed, |mf| job(&DynMod(*mf)))?;
            let values: Vec<T> = runs.iter().map(|r| r.1.clone()).collect();
            let consistent = values.windows(2).all(|w| w[0] == w[1]);
            Ok(Computed {
                value: combine(&values),
                exact: false,
                points: runs.iter().map(|r| (r.0.p, r.0.q0)).collect(),
                consistent,
            })
        }
    }
}

/// Object-safe handle that lets one closure run over either backend.
pub trait DynField: Sync {
    fn with_exact(&self) -> Option<&ExactField>;
    fn with_mod(&self) -> Option<&crate::scalars::ModField>;
}

struct DynExact;
struct DynMod(crate::scalars::ModField);

impl DynField for DynExact {
    fn with_exact(&self) -> Option<&ExactField> {
        Some(&ExactField)
    }
    fn with_mod(&self) -> Option<&crate::scalars::ModField> {
        None
    }
}

impl DynField for DynMod {
    fn with_exact(&self) -> Option<&ExactField> {
        None
    }
    fn with_mod(&self) -> Option<&crate::scalars::ModField> {
        Some(&self.0)
    }
}

/// Dispatches a generic computation over the backend held by a [`DynField`].
#[macro_export]
macro_rules! dispatch {
    ($df:expr, |$f:ident| $body:expr) => {
        if let Some($f) = $df.with_exact() {
            $body
        } else {
            let $f = $df.with_mod().expect("one backend is present");
            $body
        }
    };
}

/// Dimension of the invariant subspace of `(u^c)^{⊗k} ⊗ u^{⊗k}`.
pub fn invariant_dim(k: usize, n: usize, mode: &RankMode) -> Result<Computed<usize>> {
    if k == 0 {
        return Ok(Computed { value: 1, exact: mode.is_exact(), points: Vec::new(), consistent: true });
    }
    let action = UqModuleAction::block(n, k)?;
    // a nullity can only grow at a bad point
    run_mode(mode, |df| dispatch!(df, |f| Ok(invariant_subspace_in(f, &action)?.len())), |v| *v.iter().min().unwrap())
}

/// `dim (im a_k)^φ`, the number of bi-invariant `k`-forms.
pub fn biinvariant_dim(k: usize, n: usize, tau: Tau, mode: &RankMode) -> Result<Computed<usize>> {
    run_mode(mode, |df| dispatch!(df, |f| Ok(biinvariant_vectors_in(f, k, n, tau)?.len())), majority)
}

fn majority(v: &[usize]) -> usize {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in v {
        *counts.entry(*x).or_default() += 1;
    }
    counts.into_iter().max_by_key(|(x, c)| (*c, *x)).map(|(x, _)| x).unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub k: usize,
    pub n: usize,
    pub tau: Tau,
    pub vectors: usize,
    pub expected: i64,
    /// `g_{w_0} v = ±v` on the representatives themselves
    pub representative: bool,
    /// `a_k (g_{w_0} v ∓ v) = 0`
    pub quotient: bool,
}

impl EigenReport {
    pub fn pass(&self) -> bool {
        self.vectors > 0 && self.representative && self.quotient
    }
}

/// Checks `ρ_τ(b_{w_0}) v = (-1)^{k(k-1)/2} v` for bi-invariant `v ∈ im a_k`.
pub fn w0_eigenvalue_check(k: usize, n: usize, tau: Tau) -> Result<EigenReport> {
    let f = ExactField;
    let expected: i64 = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let vecs = biinvariant_vectors_in(&f, k, n, tau)?;
    let mut representative = true;
    let mut quotient = true;
    if k >= 1 {
        let g = block_gens(&f, tau, n, k)?;
        let mut acc = g.accumulator(&f);
        let e = Scalar::from_int(expected);
        for v in &vecs {
            let w = g.w0(&f, v, &mut acc);
            for (r, x) in &w {
                acc.add(&f, *r, x);
            }
            for (r, x) in v {
                acc.add(&f, *r, &-(&e * x));
            }
            let diff = acc.drain(&f);
            representative &= diff.is_empty();
            quotient &= g.antisym(&f, k, &diff, &mut acc).is_empty();
        }
    }
    Ok(EigenReport { k, n, tau, vectors: vecs.len(), expected, representative, quotient })
}

/// Bi-invariant forms moved to the interleaved layout by `Θ_k`.
pub fn interleaved_biinvariants(k: usize, n: usize, tau: Tau) -> Result<Vec<SparseVec<Scalar>>> {
    let f = ExactField;
    let vecs = biinvariant_vectors_in(&f, k, n, tau)?;
    if k <= 1 {
        return Ok(vecs);
    }
    let fam = build_family(n)?;
    let rt = fam.rtilde(tau);
    let mut acc = DenseAccumulator::new(&f, n.pow(2 * k as u32));
    Ok(vecs.iter().map(|v| theta_apply(&f, rt, k, v, &mut acc)).collect())
}

fn tensor_vec(u: &SparseVec<Scalar>, v: &SparseVec<Scalar>, dim_v: usize) -> SparseVec<Scalar> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for (i, a) in u {
        for (j, b) in v {
            out.push(((*i as usize * dim_v + *j as usize) as u32, a * b));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AnticommReport {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub tau: Tau,
    pub pairs: usize,
    pub vanishing: bool,
}

impl AnticommReport {
    pub fn pass(&self) -> bool {
        self.pairs > 0 && self.vanishing
    }
}

/// `A_{k+m}(u ⊗ v - (-1)^{km} v ⊗ u) = 0` for bi-invariant `u` of degree `k`
/// and `v` of degree `m` (interleaved layout).
pub fn anticommutativity_check(k: usize, m: usize, n: usize, tau: Tau) -> Result<AnticommReport> {
    let f = ExactField;
    let us = interleaved_biinvariants(k, n, tau)?;
    let vs = interleaved_biinvariants(m, n, tau)?;
    let g: BraidGens<Scalar> = sigma_gens(&f, tau, n, k + m)?;
    let mut acc = g.accumulator(&f);
    let sign = Scalar::from_int(if (k * m) % 2 == 0 { 1 } else { -1 });
    let (du, dv) = (n.pow(2 * k as u32), n.pow(2 * m as u32));
    let mut vanishing = true;
    let mut pairs = 0;
    for u in &us {
        for v in &vs {
            for (r, x) in tensor_vec(u, v, dv) {
                acc.add(&f, r, &x);
            }
            for (r, x) in tensor_vec(v, u, du) {
                acc.add(&f, r, &-(&sign * &x));
            }
            let w = acc.drain(&f);
            vanishing &= g.antisym(&f, k + m, &w, &mut acc).is_empty();
            pairs += 1;
        }
    }
    Ok(AnticommReport { k, m, n, tau, pairs, vanishing })
}
