//! The R-matrix of `GL_q(N)`, its projectors and reindexed variants, and the
//! representations `ρ`, `ρ_c` of `H_k` on `V^{⊗k}`.
//!
//! Operators map input multi-indices (columns) to output multi-indices (rows);
//! upper indices in `X^{ab}_{rs}` are outputs.

mod reps;
mod tensor;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{ExactField, Scalar};

pub use reps::{
    compositions, content_of, content_projector, rep_rho, rep_rho_c, rho_basis, schur_weyl_dims, trace_functional, trace_functional_c,
    ContentProjector, RepKind,
};
pub use tensor::{apply_chain, decode, encode, TensorOp};

/// Sign label `τ ∈ {+, -}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tau {
    Plus,
    Minus,
}

impl Tau {
    pub fn sign(self) -> i64 {
        match self {
            Tau::Plus => 1,
            Tau::Minus => -1,
        }
    }

    pub fn flip(self) -> Tau {
        match self {
            Tau::Plus => Tau::Minus,
            Tau::Minus => Tau::Plus,
        }
    }

    pub fn both() -> [Tau; 2] {
        [Tau::Plus, Tau::Minus]
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tau::Plus => "+",
            Tau::Minus => "-",
        })
    }
}

impl std::str::FromStr for Tau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Tau> {
        match s {
            "+" | "plus" | "p" | "1" | "+1" => Ok(Tau::Plus),
            "-" | "−" | "minus" | "m" | "-1" => Ok(Tau::Minus),
            _ => Err(Error::InvalidArgument(format!("tau must be + or -, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RMatrixFamily {
    pub n: usize,
    pub rhat: TensorOp,
    pub rhat_inv: TensorOp,
    pub rcheck: TensorOp,
    pub rcheck_inv: TensorOp,
    pub rtilde_plus: TensorOp,
    pub rtilde_minus: TensorOp,
    pub rgrave_plus: TensorOp,
    pub rgrave_minus: TensorOp,
    pub p_plus: TensorOp,
    pub p_minus: TensorOp,
    pub p0: TensorOp,
    pub p1: TensorOp,
    /// `q^{-2} + ... + q^{-2N}`
    pub sbar: Scalar,
}

/// `R̂^{ab}_{rs}` with 0-based indices: `R̂(e_r ⊗ e_s) = q^{δ_rs} e_s ⊗ e_r + [s > r] q̂ e_r ⊗ e_s`.
fn rhat_entry(a: usize, b: usize, r: usize, s: usize) -> Scalar {
    let mut x = Scalar::zero();
    if a == s && b == r {
        x = if r == s { Scalar::q() } else { Scalar::one() };
    }
    if s > r && a == r && b == s {
        x = &x + &Scalar::qhat();
    }
    x
}

fn rhat_inv_entry(a: usize, b: usize, r: usize, s: usize) -> Scalar {
    let x = rhat_entry(a, b, r, s);
    if a == r && b == s {
        &x - &Scalar::qhat()
    } else {
        x
    }
}

fn rhat_pow_entry(sign: i64, a: usize, b: usize, r: usize, s: usize) -> Scalar {
    if sign > 0 {
        rhat_entry(a, b, r, s)
    } else {
        rhat_inv_entry(a, b, r, s)
    }
}

static FAMILIES: Lazy<Mutex<HashMap<usize, Arc<RMatrixFamily>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The family for `V = K^N`, memoized per `N`.
pub fn build_family(n: usize) -> Result<Arc<RMatrixFamily>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N must be at least 2, got {n}")));
    }
    if let Some(fam) = FAMILIES.lock().unwrap().get(&n) {
        return Ok(fam.clone());
    }
    let fam = Arc::new(RMatrixFamily::construct(n));
    FAMILIES.lock().unwrap().entry(n).or_insert(fam.clone());
    Ok(fam)
}

impl RMatrixFamily {
    fn construct(n: usize) -> Self {
        let f = ExactField;
        let op = |g: &dyn Fn(usize, usize, usize, usize) -> Scalar| {
            TensorOp::from_fn(&f, n, 2, |o, i| g(o[0], o[1], i[0], i[1]))
        };
        let rhat = op(&rhat_entry);
        let rhat_inv = op(&rhat_inv_entry);
        let rcheck = op(&|a, b, r, s| rhat_entry(b, a, s, r));
        let rcheck_inv = op(&|a, b, r, s| rhat_inv_entry(b, a, s, r));
        let tilde = |sign: i64| op(&move |a, b, r, s| rhat_pow_entry(sign, r, a, s, b));
        let grave = |sign: i64| {
            op(&move |a, b, r, s| {
                &Scalar::q_pow(2 * s as i64 - 2 * a as i64) * &rhat_pow_entry(sign, b, s, a, r)
            })
        };
        let id = TensorOp::exact_identity(n, 2);
        let qc_inv = Scalar::qcheck().inv().expect("q + q^-1 is nonzero");
        let proj = |sign: i64| {
            let base = id.scale(&f, &Scalar::q_pow(-sign));
            let r = rhat.scale(&f, &Scalar::from_int(sign));
            base.add(&f, &r).expect("same shape").scale(&f, &qc_inv)
        };
        let sbar = (1..=n as i64).fold(Scalar::zero(), |acc, i| &acc + &Scalar::q_pow(-2 * i));
        let sbar_inv = sbar.inv().expect("sbar is nonzero");
        // P0^{ab}_{rs} = q^{-2a} δ_ab δ_rs / sbar with 1-based a
        let p0 = op(&|a, b, r, s| {
            if a == b && r == s {
                &sbar_inv * &Scalar::q_pow(-2 * (a as i64 + 1))
            } else {
                Scalar::zero()
            }
        });
        let p1 = id.sub(&f, &p0).expect("same shape");
        RMatrixFamily {
            n,
            p_plus: proj(1),
            p_minus: proj(-1),
            rhat,
            rhat_inv,
            rcheck,
            rcheck_inv,
            rtilde_plus: tilde(1),
            rtilde_minus: tilde(-1),
            rgrave_plus: grave(1),
            rgrave_minus: grave(-1),
            p0,
            p1,
            sbar,
        }
    }

    /// `R̂^{±1}`
    pub fn rhat_pow(&self, sign: i64) -> &TensorOp {
        if sign > 0 {
            &self.rhat
        } else {
            &self.rhat_inv
        }
    }

    /// `Ř^{±1}`
    pub fn rcheck_pow(&self, sign: i64) -> &TensorOp {
        if sign > 0 {
            &self.rcheck
        } else {
            &self.rcheck_inv
        }
    }

    pub fn rtilde(&self, tau: Tau) -> &TensorOp {
        match tau {
            Tau::Plus => &self.rtilde_plus,
            Tau::Minus => &self.rtilde_minus,
        }
    }

    pub fn rgrave(&self, tau: Tau) -> &TensorOp {
        match tau {
            Tau::Plus => &self.rgrave_plus,
            Tau::Minus => &self.rgrave_minus,
        }
    }

    pub fn projector(&self, tau: Tau) -> &TensorOp {
        match tau {
            Tau::Plus => &self.p_plus,
            Tau::Minus => &self.p_minus,
        }
    }

    /// `s̄₊ = 1 + s̄ + q^{-2N-2}` and `s̄₋ = s̄ - q^{-2} - q^{-2N}`.
    pub fn sbar_tau(&self, tau: Tau) -> Scalar {
        let n = self.n as i64;
        match tau {
            Tau::Plus => &(&Scalar::one() + &self.sbar) + &Scalar::q_pow(-2 * n - 2),
            Tau::Minus => &(&self.sbar - &Scalar::q_pow(-2)) - &Scalar::q_pow(-2 * n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rank::rank_in_field;

    const F: ExactField = ExactField;

    fn on3(op: &TensorOp, at: usize) -> TensorOp {
        op.embed(at, 3).unwrap()
    }

    fn prod(ops: &[&TensorOp]) -> TensorOp {
        let mut it = ops.iter();
        let first = (*it.next().unwrap()).clone();
        it.fold(first, |acc, x| acc.compose(&F, x).unwrap())
    }

    #[test]
    fn rhat_entries_n2() {
        let fam = build_family(2).unwrap();
        let r = &fam.rhat;
        let e = |a: usize, b: usize, c: usize, d: usize| r.entry(&[a - 1, b - 1], &[c - 1, d - 1]).cloned();
        assert_eq!(e(1, 1, 1, 1), Some(Scalar::q()));
        assert_eq!(e(2, 2, 2, 2), Some(Scalar::q()));
        assert_eq!(e(1, 2, 2, 1), Some(Scalar::one()));
        assert_eq!(e(2, 1, 1, 2), Some(Scalar::one()));
        assert_eq!(e(1, 2, 1, 2), Some(Scalar::qhat()));
        assert_eq!(e(2, 1, 2, 1), None);
        assert_eq!(r.matrix().nnz(), 5);
    }

    #[test]
    fn projectors() {
        for n in 2..=3 {
            let fam = build_family(n).unwrap();
            let id = TensorOp::exact_identity(n, 2);
            assert_eq!(fam.p_plus.add(&F, &fam.p_minus).unwrap(), id);
            for p in [&fam.p_plus, &fam.p_minus, &fam.p0] {
                assert_eq!(&p.compose(&F, p).unwrap(), p);
            }
            let spectral = fam
                .p_plus
                .lin_comb(&F, &Scalar::q(), &fam.p_minus, &-Scalar::q_pow(-1))
                .unwrap();
            assert_eq!(spectral, fam.rhat);
            assert_eq!(fam.rhat.compose(&F, &fam.rhat_inv).unwrap(), id);
            assert_eq!(fam.rcheck.compose(&F, &fam.rcheck_inv).unwrap(), id);
            assert_eq!(fam.p1, id.sub(&F, &fam.p0).unwrap());
        }
        let fam = build_family(2).unwrap();
        assert_eq!(rank_in_field(&F, fam.p_minus.matrix()).unwrap(), 1);
        assert_eq!(rank_in_field(&F, fam.p_plus.matrix()).unwrap(), 3);
        let fam = build_family(3).unwrap();
        assert_eq!(rank_in_field(&F, fam.p_minus.matrix()).unwrap(), 3);
        assert_eq!(rank_in_field(&F, fam.p0.matrix()).unwrap(), 1);
    }

    #[test]
    fn tilde_grave_are_inverse() {
        for n in 2..=3 {
            let fam = build_family(n).unwrap();
            let id = TensorOp::exact_identity(n, 2);
            for tau in Tau::both() {
                let t = fam.rtilde(tau);
                let g = fam.rgrave(tau.flip());
                assert_eq!(t.compose(&F, g).unwrap(), id, "N = {n}, tau = {tau}");
                assert_eq!(g.compose(&F, t).unwrap(), id, "N = {n}, tau = {tau}");
            }
        }
    }

    #[test]
    fn braid_relation() {
        for n in 2..=3 {
            let fam = build_family(n).unwrap();
            for r in [&fam.rhat, &fam.rcheck] {
                let (a, b) = (on3(r, 1), on3(r, 2));
                assert_eq!(prod(&[&a, &b, &a]), prod(&[&b, &a, &b]));
            }
        }
    }

    #[test]
    fn morphism_identities() {
        for n in 2..=3 {
            let fam = build_family(n).unwrap();
            for tau in Tau::both() {
                let t12 = on3(fam.rtilde(tau), 1);
                let t23 = on3(fam.rtilde(tau), 2);
                let (r12, r23) = (on3(&fam.rhat, 1), on3(&fam.rhat, 2));
                assert_eq!(prod(&[&t23, &t12, &r23]), prod(&[&r12, &t23, &t12]));
                let (c12, c23) = (on3(&fam.rcheck, 1), on3(&fam.rcheck, 2));
                assert_eq!(prod(&[&t12, &t23, &c12]), prod(&[&c23, &t12, &t23]));
            }
        }
    }

    /// `Σ_{i,j} q^{2s-2j} X(i,n,j,m) X(j,s,i,r)` for all `(n, m, s, r)`.
    fn contraction(n: usize, x: impl Fn(usize, usize, usize, usize) -> Scalar) -> Vec<Scalar> {
        let mut out = Vec::new();
        for nn in 0..n {
            for m in 0..n {
                for s in 0..n {
                    for r in 0..n {
                        let mut acc = Scalar::zero();
                        for i in 0..n {
                            for j in 0..n {
                                let w = Scalar::q_pow(2 * s as i64 - 2 * j as i64);
                                acc = &acc + &(&w * &(&x(i, nn, j, m) * &x(j, s, i, r)));
                            }
                        }
                        out.push(acc);
                    }
                }
            }
        }
        out
    }

    /// `q̌^{-2}(c(n, s) δ_nr δ_ms + s̄_τ q^{2s} δ_nm δ_rs)` in the same order.
    fn contraction_rhs(n: usize, sbar: &Scalar, c: impl Fn(usize, usize) -> Scalar) -> Vec<Scalar> {
        let qc2 = Scalar::qcheck().pow(-2).unwrap();
        let mut out = Vec::new();
        for nn in 0..n {
            for m in 0..n {
                for s in 0..n {
                    for r in 0..n {
                        let mut x = Scalar::zero();
                        if nn == r && m == s {
                            x = c(nn, s);
                        }
                        if nn == m && r == s {
                            x = &x + &(sbar * &Scalar::q_pow(2 * (s as i64 + 1)));
                        }
                        out.push(&qc2 * &x);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn projector_contraction() {
        for n in 2..=3 {
            let fam = build_family(n).unwrap();
            for tau in Tau::both() {
                let p = fam.projector(tau);
                let s_tau = fam.sbar_tau(tau);
                let get = |a, b, c, d| p.entry(&[a, b], &[c, d]).cloned().unwrap_or_else(Scalar::zero);
                // the crossing term carries q^{2s-2n}, which is 1 only when n = s
                let lhs = contraction(n, get);
                let rhs = contraction_rhs(n, &s_tau, |nn, s| Scalar::q_pow(2 * s as i64 - 2 * nn as i64));
                assert_eq!(lhs, rhs, "N = {n}, tau = {tau}");
                // with the second leg of P read transposed the crossing term is exactly δ_nr δ_ms
                let get_t = |a, b, c, d| p.entry(&[a, d], &[c, b]).cloned().unwrap_or_else(Scalar::zero);
                let lhs = contraction(n, get_t);
                let rhs = contraction_rhs(n, &s_tau, |_, _| Scalar::one());
                assert_eq!(lhs, rhs, "N = {n}, tau = {tau}");
            }
        }
    }
}
