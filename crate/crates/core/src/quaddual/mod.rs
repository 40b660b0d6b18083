//! Degree-two duality between the exterior algebra of `Γ_{-τ}` and the
//! reflection equation algebra `B(R^τ)`.
//!
//! The forms side is `ker(I - σ)` on `Γ ⊗ Γ = V^{⊗4}` (interleaved layout). The
//! dual side is spanned by the entries of `L₂R̂L₂R̂ - R̂L₂R̂L₂` with `R̂ = R̂^τ`,
//! rewritten through `L^a_b = q^{2b} Y_{ab}` in the basis `Y ⊗ Y` dual to
//! `θ ⊗ θ`. The two sides are paired coordinatewise.

use serde::Serialize;

use crate::braiding::build_sigma;
use crate::error::Result;
use crate::invariants::{run_mode, Computed, DynField};
use crate::rmatrix::{build_family, encode, Tau};
use crate::scalars::linalg::{nullspace, span_rank};
use crate::scalars::sparse::{DenseAccumulator, SparseVec};
use crate::scalars::{Field, RankMode, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Forms,
    Dual,
}

#[derive(Clone, Debug)]
pub struct QuadraticRelationSpace<E> {
    pub n: usize,
    pub side: Side,
    /// the `τ` of the R-matrix that built this side
    pub tau: Tau,
    pub vectors: Vec<SparseVec<E>>,
}

/// Basis of `ker(I - σ_τ)` on `V^{⊗4}`.
pub fn forms_relations<F: Field>(f: &F, n: usize, tau: Tau) -> Result<QuadraticRelationSpace<F::Elem>> {
    let sigma = build_sigma(tau, n)?.sigma.specialize(f)?;
    let d = n.pow(4);
    let id = SparseMatrix::from_columns(d, (0..d).map(|i| vec![(i as u32, f.one())]).collect());
    let m = id.sub(f, sigma.matrix())?;
    Ok(QuadraticRelationSpace { n, side: Side::Forms, tau, vectors: nullspace(f, &m)? })
}

/// The `N^4` reflection-equation relations for `R̂^τ`, as vectors over `Y ⊗ Y`.
pub fn dual_relations<F: Field>(f: &F, n: usize, tau: Tau) -> Result<QuadraticRelationSpace<F::Elem>> {
    let fam = build_family(n)?;
    let r = fam.rhat_pow(tau.sign()).specialize(f)?;
    let rr = |a: usize, b: usize, c: usize, d: usize| r.entry(&[a, b], &[c, d]).cloned();
    // L^x_y L^z_w = q^{2y+2w} Y_{xy} ⊗ Y_{zw}, 1-based exponents
    let weight = |y: usize, w: usize| f.q_pow(2 * (y as i64 + 1) + 2 * (w as i64 + 1));
    let idx = |x: usize, y: usize, z: usize, w: usize| encode(n, &[x, y, z, w]) as u32;
    let minus = f.neg(&f.one());
    let mut acc = DenseAccumulator::new(f, n.pow(4));
    let mut vectors = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    // (L₂R̂L₂R̂)^{ab}_{cd} = Σ L^b_f L^h_j R̂^{af}_{gh} R̂^{gj}_{cd}
                    for fi in 0..n {
                        for g in 0..n {
                            for h in 0..n {
                                let Some(r1) = rr(a, fi, g, h) else { continue };
                                for j in 0..n {
                                    let Some(r2) = rr(g, j, c, d) else { continue };
                                    let x = f.mul(&f.mul(&r1, &r2), &weight(fi, j));
                                    acc.add(f, idx(b, fi, h, j), &x);
                                }
                            }
                        }
                    }
                    // (R̂L₂R̂L₂)^{ab}_{cd} = Σ R̂^{ab}_{ef} L^f_h R̂^{eh}_{cj} L^j_d
                    for e in 0..n {
                        for fi in 0..n {
                            let Some(r1) = rr(a, b, e, fi) else { continue };
                            for h in 0..n {
                                for j in 0..n {
                                    let Some(r2) = rr(e, h, c, j) else { continue };
                                    let x = f.mul(&f.mul(&r1, &r2), &f.mul(&weight(h, d), &minus));
                                    acc.add(f, idx(fi, h, j, d), &x);
                                }
                            }
                        }
                    }
                    vectors.push(acc.drain(f));
                }
            }
        }
    }
    Ok(QuadraticRelationSpace { n, side: Side::Dual, tau, vectors })
}

fn pairing<F: Field>(f: &F, a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>) -> F::Elem {
    let (mut i, mut j) = (0, 0);
    let mut s = f.zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s = f.mul_add(&s, &a[i].1, &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityOutcome {
    pub forms_dim: usize,
    pub dual_dim: usize,
    /// number of (dual relation, form) pairs with nonzero pairing
    pub nonzero_pairings: usize,
    pub pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub n: usize,
    /// `τ` of the calculus `Γ_τ` on the forms side
    pub calculus_tau: Tau,
    /// `τ` of `R̂^τ` in the reflection equation algebra
    pub algebra_tau: Tau,
    pub outcome: Computed<DualityOutcome>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        let o = &self.outcome.value;
        let n4 = self.n.pow(4);
        let nn = self.n * self.n;
        o.nonzero_pairings == 0
            && o.forms_dim + o.dual_dim == n4
            && o.dual_dim == nn * (nn - 1) / 2
            && self.outcome.consistent
    }
}

pub fn duality_outcome<F: Field>(f: &F, n: usize, calculus_tau: Tau) -> Result<DualityOutcome> {
    let forms = forms_relations(f, n, calculus_tau)?;
    let dual = dual_relations(f, n, calculus_tau.flip())?;
    let mut nonzero = 0;
    for r in &dual.vectors {
        for x in &forms.vectors {
            if !f.is_zero(&pairing(f, r, x)) {
                nonzero += 1;
            }
        }
    }
    Ok(DualityOutcome {
        forms_dim: forms.vectors.len(),
        dual_dim: span_rank(f, &dual.vectors, n.pow(4))?,
        nonzero_pairings: nonzero,
        pairs: dual.vectors.len() * forms.vectors.len(),
    })
}

/// Pairs `ker(I - σ_τ)` of `Γ_τ` against the relations of `B(R^{-τ})`.
pub fn duality_check(n: usize, calculus_tau: Tau, mode: &RankMode) -> Result<DualityReport> {
    let outcome = run_mode(
        mode,
        |df: &dyn DynField| crate::dispatch!(df, |f| duality_outcome(f, n, calculus_tau)),
        |v: &[DualityOutcome]| v.iter().max_by_key(|o| (o.nonzero_pairings, o.dual_dim)).unwrap().clone(),
    )?;
    Ok(DualityReport { n, calculus_tau, algebra_tau: calculus_tau.flip(), outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactField;

    #[test]
    fn dimensions_n2() {
        let f = ExactField;
        for tau in Tau::both() {
            assert_eq!(forms_relations(&f, 2, tau).unwrap().vectors.len(), 10);
            let d = dual_relations(&f, 2, tau).unwrap();
            assert_eq!(span_rank(&f, &d.vectors, 16).unwrap(), 6);
        }
    }

    #[test]
    fn theta_squared_is_a_form() {
        let f = ExactField;
        let th = crate::braiding::theta_vector(2);
        let mut tt: SparseVec<crate::Scalar> = Vec::new();
        for (i, a) in &th {
            for (j, b) in &th {
                tt.push(((*i as usize * 4 + *j as usize) as u32, a * b));
            }
        }
        for tau in Tau::both() {
            let forms = forms_relations(&f, 2, tau).unwrap();
            let mut with = forms.vectors.clone();
            with.push(tt.clone());
            assert_eq!(span_rank(&f, &with, 16).unwrap(), 10);
        }
    }

    #[test]
    fn diagonal_relations_vanish() {
        // both products reduce to q(q L^1_1 L^1_1 + q̂ L^1_2 L^2_1) at (11, 11)
        let f = ExactField;
        for tau in Tau::both() {
            let d = dual_relations(&f, 2, tau).unwrap();
            let zero: Vec<usize> = (0..16).filter(|&i| d.vectors[i].is_empty()).collect();
            assert_eq!(zero, vec![0, 3, 12, 15]);
        }
    }

    #[test]
    fn duality_n2() {
        for tau in Tau::both() {
            let r = duality_check(2, tau, &RankMode::Exact).unwrap();
            assert!(r.pass(), "{:?}", r.outcome);
        }
    }
}
