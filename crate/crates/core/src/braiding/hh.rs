use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hecke::{add_into, central_idempotent, HeckeElt, HeckeTables};
use crate::partitions::{t_lambda, Partition};
use crate::rmatrix::{rho_basis, RepKind, Tau, TensorOp};
use crate::scalars::{Field, FieldBuild, Scalar, SparseMatrix};
use crate::symgroup::Perm;

/// Element of `H_k ⊗ H_k` in the basis `T_v ⊗ T_w`.
#[derive(Clone)]
pub struct HHElt {
    tables: Arc<HeckeTables>,
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl PartialEq for HHElt {
    fn eq(&self, other: &Self) -> bool {
        self.tables.k == other.tables.k && self.coeffs == other.coeffs
    }
}

impl Eq for HHElt {}

impl HHElt {
    pub fn zero(k: usize) -> Self {
        HHElt { tables: HeckeTables::get(k), coeffs: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::tensor(&HeckeElt::one(k), &HeckeElt::one(k)).expect("same degree")
    }

    /// `a ⊗ b`
    pub fn tensor(a: &HeckeElt, b: &HeckeElt) -> Result<Self> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        let mut coeffs = BTreeMap::new();
        for (&v, c) in a.raw() {
            for (&w, d) in b.raw() {
                add_into(&mut coeffs, (v, w), &(c * d));
            }
        }
        Ok(HHElt { tables: a.tables().clone(), coeffs })
    }

    pub fn degree(&self) -> usize {
        self.tables.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Perm, &Scalar)> + '_ {
        let p = &self.tables.perms;
        self.coeffs.iter().map(move |((v, w), c)| (&p[*v as usize], &p[*w as usize], c))
    }

    pub(crate) fn raw(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, v: &Perm, w: &Perm) -> Scalar {
        let key = (self.tables.idx(v), self.tables.idx(w));
        self.coeffs.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_same(&self, other: &HHElt) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    pub fn add(&self, other: &HHElt) -> Result<HHElt> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (key, c) in &other.coeffs {
            add_into(&mut coeffs, *key, c);
        }
        Ok(HHElt { tables: self.tables.clone(), coeffs })
    }

    pub fn sub(&self, other: &HHElt) -> Result<HHElt> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> HHElt {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(key, v)| (*key, v * c)).collect()
        };
        HHElt { tables: self.tables.clone(), coeffs }
    }

    /// Groups terms by the first factor: `self = Σ_v T_v ⊗ B_v`.
    fn rows(&self) -> BTreeMap<u32, HeckeElt> {
        let mut rows: BTreeMap<u32, BTreeMap<u32, Scalar>> = BTreeMap::new();
        for ((v, w), c) in &self.coeffs {
            rows.entry(*v).or_default().insert(*w, c.clone());
        }
        rows.into_iter().map(|(v, m)| (v, HeckeElt::from_map(self.tables.clone(), m))).collect()
    }

    /// Factorwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &HHElt) -> Result<HHElt> {
        self.check_same(other)?;
        let t = &self.tables;
        let left = self.rows();
        let right = other.rows();
        let mut out = HHElt::zero(self.degree());
        for (v, a) in &left {
            let tv = HeckeElt::from_index(t.clone(), *v, Scalar::one());
            for (w, b) in &right {
                let first = tv.mul(&HeckeElt::from_index(t.clone(), *w, Scalar::one()))?;
                let second = a.mul(b)?;
                out = out.add(&HHElt::tensor(&first, &second)?)?;
            }
        }
        Ok(out)
    }

    /// `self ⊗`-swap: `a ⊗ b -> b ⊗ a`.
    pub fn flip(&self) -> HHElt {
        let coeffs = self.coeffs.iter().map(|((v, w), c)| ((*w, *v), c.clone())).collect();
        HHElt { tables: self.tables.clone(), coeffs }
    }
}

impl fmt::Debug for HHElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HHElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (v, w, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})T{v}⊗T{w}")?;
        }
        Ok(())
    }
}

/// `𝔄_k = Σ_w prime(T_w) ⊗ star(T_w)`.
pub fn abstract_antisym(k: usize) -> Result<HHElt> {
    let t = HeckeTables::get(k);
    let mut acc = HHElt::zero(k);
    for w in 0..t.size() as u32 {
        let tw = HeckeElt::from_index(t.clone(), w, Scalar::one());
        acc = acc.add(&HHElt::tensor(&tw.prime(), &tw.star())?)?;
    }
    Ok(acc)
}

/// `𝔄_k (z_{λ'} ⊗ z_λ)`, which is `t_λ π_λ`.
pub fn pi_lambda_unnormalized(k: usize, shape: &Partition) -> Result<HHElt> {
    if shape.weight() != k {
        return Err(Error::WeightMismatch { partition: shape.weight(), k });
    }
    let z = HHElt::tensor(&central_idempotent(&shape.conjugate())?, &central_idempotent(shape)?)?;
    abstract_antisym(k)?.mul(&z)
}

/// `π_λ = t_λ^{-1} 𝔄_k (z_{λ'} ⊗ z_λ)`.
pub fn pi_lambda(k: usize, shape: &Partition) -> Result<HHElt> {
    let tl = t_lambda(shape, k)?;
    let inv = tl.inv().map_err(|_| Error::Singular(format!("t_lambda vanishes for {shape}")))?;
    Ok(pi_lambda_unnormalized(k, shape)?.scale(&inv))
}

/// `ρ_τ(h)` on `V^{⊗2k}` in the block layout: `ρ₊ = ρ_c ⊗ ρ` and
/// `ρ₋(a ⊗ b) = ρ_c(b) ⊗ ρ(a)`.
pub fn rho_tau(tau: Tau, h: &HHElt, n: usize) -> Result<TensorOp> {
    let m = RhoTauBuild { tau, h: h.clone(), n }.build(&crate::scalars::ExactField)?;
    TensorOp::new(n, 2 * h.degree(), m)
}

/// [`rho_tau`] as a [`FieldBuild`].
#[derive(Clone)]
pub struct RhoTauBuild {
    pub tau: Tau,
    pub h: HHElt,
    pub n: usize,
}

impl FieldBuild for RhoTauBuild {
    fn build<F: Field>(&self, f: &F) -> Result<SparseMatrix<F::Elem>> {
        let k = self.h.degree();
        let n = self.n;
        let dual = rho_basis(k, n, RepKind::RhoC)?;
        let vect = rho_basis(k, n, RepKind::Rho)?;
        let dual: Vec<TensorOp<F::Elem>> = dual.iter().map(|x| x.specialize(f)).collect::<Result<_>>()?;
        let vect: Vec<TensorOp<F::Elem>> = vect.iter().map(|x| x.specialize(f)).collect::<Result<_>>()?;
        let mut acc = TensorOp::<F::Elem>::zero(n, 2 * k);
        for ((v, w), c) in self.h.raw() {
            let (a, b) = match self.tau {
                Tau::Plus => (*v as usize, *w as usize),
                Tau::Minus => (*w as usize, *v as usize),
            };
            let term = dual[a].kron(f, &vect[b])?;
            acc = acc.lin_comb(f, &f.one(), &term, &f.from_scalar(c)?)?;
        }
        Ok(acc.into_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{block_gens, build_sigma, theta_iso, woronowicz_antisym};
    use crate::partitions::{delta, part};
    use crate::rmatrix::build_family;
    use crate::scalars::rank::rank_in_field;
    use crate::scalars::ExactField;
    use num_traits::ToPrimitive;

    const F: ExactField = ExactField;

    fn gen(k: usize, i: usize) -> HeckeElt {
        HeckeElt::generator(k, i)
    }

    #[test]
    fn antisym_k2() {
        let t = gen(2, 1);
        let tinv = t.sub(&HeckeElt::scalar(2, Scalar::qhat())).unwrap();
        let expected = HHElt::one(2).sub(&HHElt::tensor(&tinv, &t).unwrap()).unwrap();
        assert_eq!(abstract_antisym(2).unwrap(), expected);
    }

    #[test]
    fn relianti() {
        for k in 2..=3 {
            let a = abstract_antisym(k).unwrap();
            for i in 1..k {
                let h = gen(k, i);
                let lhs = a.mul(&HHElt::tensor(&HeckeElt::one(k), &h).unwrap()).unwrap();
                let rhs = a.mul(&HHElt::tensor(&h.prime(), &HeckeElt::one(k)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn spectral_decomposition_k2() {
        let k = 2;
        let a = abstract_antisym(k).unwrap();
        let mut sum = HHElt::zero(k);
        let pis: Vec<HHElt> = Partition::all(k).iter().map(|l| pi_lambda(k, l).unwrap()).collect();
        for (l, p) in Partition::all(k).iter().zip(&pis) {
            sum = sum.add(&p.scale(&t_lambda(l, k).unwrap())).unwrap();
            assert_eq!(&p.mul(p).unwrap(), p);
        }
        assert!(pis[0].mul(&pis[1]).unwrap().is_zero());
        assert_eq!(sum, a);
    }

    #[test]
    fn rho_tau_generators() {
        let fam = build_family(2).unwrap();
        let x = HHElt::tensor(&HeckeElt::one(2), &gen(2, 1)).unwrap();
        let id = TensorOp::exact_identity(2, 2);
        assert_eq!(rho_tau(Tau::Plus, &x, 2).unwrap(), id.kron(&F, &fam.rhat).unwrap());
        assert_eq!(rho_tau(Tau::Minus, &x, 2).unwrap(), fam.rcheck.kron(&F, &id).unwrap());
    }

    #[test]
    fn rho_tau_of_antisym_is_block_recursion() {
        for tau in Tau::both() {
            for k in 1..=3 {
                let a = rho_tau(tau, &abstract_antisym(k).unwrap(), 2).unwrap();
                let g = block_gens(&F, tau, 2, k).unwrap();
                let b = g.matrix(&F, |g, v, acc| g.antisym(&F, k, v, acc));
                assert_eq!(a, b, "tau = {tau}, k = {k}");
            }
        }
    }

    #[test]
    fn intertwining() {
        for (n, k) in [(2, 2), (2, 3), (3, 2)] {
            for tau in Tau::both() {
                let th = theta_iso(k, tau, n).unwrap();
                let a = rho_tau(tau, &abstract_antisym(k).unwrap(), n).unwrap();
                let big = woronowicz_antisym(k, &build_sigma(tau, n).unwrap());
                assert_eq!(th.compose(&F, &a).unwrap(), big.compose(&F, &th).unwrap());
            }
        }
    }

    #[test]
    fn pi_ranks_n2() {
        for tau in Tau::both() {
            let mut total = 0;
            for l in Partition::all(2) {
                let m = rho_tau(tau, &pi_lambda_unnormalized(2, &l).unwrap(), 2).unwrap();
                let r = rank_in_field(&F, m.matrix()).unwrap();
                let expected = (delta(&l.conjugate(), 2) * delta(&l, 2)).to_usize().unwrap();
                assert_eq!(r, expected, "{l}");
                total += r;
            }
            assert_eq!(total, 6);
        }
        let _ = part(&[2]);
    }
}
