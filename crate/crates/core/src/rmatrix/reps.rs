use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::tensor::{decode, TensorOp};
use super::build_family;
use crate::error::{Error, Result};
use crate::hecke::{central_idempotent, HeckeElt, HeckeTables};
use crate::partitions::{MultiPoly, Partition};
use crate::scalars::sparse::SparseVec;
use crate::scalars::{rank, ExactField, RankMode, Scalar, SparseMatrix};

/// Which generator image: `ρ(T_i) = R̂_{i,i+1}` or `ρ_c(T_i) = Ř_{i,i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    Rho,
    RhoC,
}

type BasisKey = (usize, usize, RepKind);

static BASES: Lazy<Mutex<HashMap<BasisKey, Arc<Vec<TensorOp>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Images of all `T_w`, indexed like [`HeckeTables::perms`].
pub fn rho_basis(k: usize, n: usize, kind: RepKind) -> Result<Arc<Vec<TensorOp>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let key = (k, n, kind);
    if let Some(b) = BASES.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let fam = build_family(n)?;
    let gen = match kind {
        RepKind::Rho => &fam.rhat,
        RepKind::RhoC => &fam.rcheck,
    };
    let gens: Vec<TensorOp> = (1..k).map(|i| gen.embed(i, k)).collect::<Result<_>>()?;
    let t = HeckeTables::get(k);
    let mut out: Vec<Option<TensorOp>> = vec![None; t.size()];
    out[0] = Some(TensorOp::exact_identity(n, k));
    let mut order: Vec<usize> = (0..t.size()).collect();
    order.sort_by_key(|&w| t.lengths[w]);
    for w in order.into_iter().skip(1) {
        let last = *t.words[w].last().unwrap();
        let prev = t.right[last - 1][w] as usize;
        let m = out[prev].as_ref().unwrap().compose(&ExactField, &gens[last - 1])?;
        out[w] = Some(m);
    }
    let basis = Arc::new(out.into_iter().map(|m| m.unwrap()).collect::<Vec<_>>());
    BASES.lock().unwrap().entry(key).or_insert(basis.clone());
    Ok(basis)
}

fn rep(k: usize, h: &HeckeElt, n: usize, kind: RepKind) -> Result<TensorOp> {
    if h.degree() != k {
        return Err(Error::DegreeMismatch(k, h.degree()));
    }
    let basis = rho_basis(k, n, kind)?;
    let mut acc = TensorOp::zero(n, k);
    for (&w, c) in h.raw() {
        acc = acc.lin_comb(&ExactField, &Scalar::one(), &basis[w as usize], c)?;
    }
    Ok(acc)
}

/// `ρ(h)` on `V^{⊗k}`, with `ρ(T_i) = R̂_{i,i+1}`.
pub fn rep_rho(k: usize, h: &HeckeElt, n: usize) -> Result<TensorOp> {
    rep(k, h, n, RepKind::Rho)
}

/// `ρ_c(h)` on `V^{⊗k}`, with `ρ_c(T_i) = Ř_{i,i+1}`.
pub fn rep_rho_c(k: usize, h: &HeckeElt, n: usize) -> Result<TensorOp> {
    rep(k, h, n, RepKind::RhoC)
}

/// Content of a basis vector: how often each of the `N` indices occurs.
pub fn content_of(digits: &[usize], n: usize) -> Vec<u32> {
    let mut c = vec![0u32; n];
    for &d in digits {
        c[d] += 1;
    }
    c
}

/// All compositions of `k` into `n` non-negative parts, lexicographically.
pub fn compositions(k: usize, n: usize) -> Vec<Vec<u32>> {
    fn go(k: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(k);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=k {
            cur.push(first);
            go(k - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(k as u32, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct ContentProjector {
    pub composition: Vec<u32>,
    pub projector: TensorOp,
}

/// `E_c`: the diagonal projection onto basis vectors of content `c`.
pub fn content_projector(c: &[u32], n: usize) -> Result<ContentProjector> {
    if c.len() != n {
        return Err(Error::DegreeMismatch(n, c.len()));
    }
    let k: usize = c.iter().map(|&x| x as usize).sum();
    let d = n.pow(k as u32);
    let cols = (0..d)
        .map(|i| {
            if content_of(&decode(n, k, i), n) == c {
                vec![(i as u32, Scalar::one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    Ok(ContentProjector {
        composition: c.to_vec(),
        projector: TensorOp::new(n, k, SparseMatrix::from_columns(d, cols))?,
    })
}

fn diagonal_trace(op: &TensorOp) -> MultiPoly {
    let (n, k) = (op.n(), op.legs());
    let mut out = MultiPoly::zero(n);
    for (r, c, v) in op.matrix().entries() {
        if r == c {
            out.add_term(content_of(&decode(n, k, r), n), v.clone());
        }
    }
    out
}

/// `TR(h) = Σ_c x^c tr(E_c ρ(h))`.
pub fn trace_functional(k: usize, h: &HeckeElt, n: usize) -> Result<MultiPoly> {
    Ok(diagonal_trace(&rep_rho(k, h, n)?))
}

/// Same functional computed with `ρ_c`.
pub fn trace_functional_c(k: usize, h: &HeckeElt, n: usize) -> Result<MultiPoly> {
    Ok(diagonal_trace(&rep_rho_c(k, h, n)?))
}

/// Dimension of `span{ρ(T_w)}` and the partitions `λ ⊢ k` with `ρ(z_λ) = 0`.
pub fn schur_weyl_dims(k: usize, n: usize) -> Result<(usize, Vec<Partition>)> {
    let basis = rho_basis(k, n, RepKind::Rho)?;
    let d = n.pow(k as u32);
    // each operator flattened into one column of length d^2
    let cols: Vec<SparseVec<Scalar>> = basis
        .iter()
        .map(|op| {
            let mut v: SparseVec<Scalar> =
                op.matrix().entries().map(|(r, c, x)| ((c * d + r) as u32, x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    let m = SparseMatrix::from_columns(d * d, cols);
    let span = rank(&m, &RankMode::Exact)?;
    let mut vanishing = Vec::new();
    for l in Partition::all(k) {
        if rep_rho(k, &central_idempotent(&l)?, n)?.is_zero() {
            vanishing.push(l);
        }
    }
    Ok((span, vanishing))
}
