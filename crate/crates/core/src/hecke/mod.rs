//! The Iwahori-Hecke algebra `H_k` in the basis `{T_w}`, with
//! `T_s T_w = T_{sw}` when the length goes up and `q̂ T_w + T_{sw}` otherwise.

mod idempotents;
mod seminormal;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::symgroup::Perm;

pub use idempotents::{central_idempotent, minimal_idempotents, t_lambda_direct};
pub use seminormal::{character, seminormal, trace as matrix_trace, Mat, SeminormalRep};
pub use tables::HeckeTables;

/// Largest degree supported in exact mode.
pub const MAX_K: usize = 5;

#[derive(Clone)]
pub struct HeckeElt {
    tables: Arc<HeckeTables>,
    coeffs: BTreeMap<u32, Scalar>,
}

impl PartialEq for HeckeElt {
    fn eq(&self, other: &Self) -> bool {
        self.tables.k == other.tables.k && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElt {}

impl HeckeElt {
    pub fn zero(k: usize) -> Self {
        HeckeElt { tables: HeckeTables::get(k), coeffs: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::from_index(HeckeTables::get(k), 0, Scalar::one())
    }

    pub fn scalar(k: usize, c: Scalar) -> Self {
        Self::from_index(HeckeTables::get(k), 0, c)
    }

    /// The basis element `T_w`.
    pub fn basis(w: &Perm) -> Self {
        let t = HeckeTables::get(w.degree());
        let i = t.idx(w);
        Self::from_index(t, i, Scalar::one())
    }

    /// The generator `T_i = T_{s_i}`.
    pub fn generator(k: usize, i: usize) -> Self {
        Self::basis(&Perm::simple(k, i))
    }

    pub(crate) fn from_index(tables: Arc<HeckeTables>, i: u32, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(i, c);
        }
        HeckeElt { tables, coeffs }
    }

    pub(crate) fn from_map(tables: Arc<HeckeTables>, mut coeffs: BTreeMap<u32, Scalar>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        HeckeElt { tables, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.tables.k
    }

    pub fn tables(&self) -> &Arc<HeckeTables> {
        &self.tables
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u32, Scalar> {
        &self.coeffs
    }

    /// Iterates `(w, coefficient)` over the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Scalar)> + '_ {
        self.coeffs.iter().map(|(i, c)| (&self.tables.perms[*i as usize], c))
    }

    pub fn coeff(&self, w: &Perm) -> Scalar {
        self.coeffs.get(&self.tables.idx(w)).cloned().unwrap_or_else(Scalar::zero)
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

    fn check_same(&self, other: &HeckeElt) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_same(other)?;
        let mut out = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            add_into(&mut out, *i, c);
        }
        Ok(HeckeElt { tables: self.tables.clone(), coeffs: out })
    }

    pub fn sub(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElt {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(i, v)| (*i, v * c)).collect()
        };
        HeckeElt { tables: self.tables.clone(), coeffs }
    }

    /// `T_i * self`
    pub fn left_mul_gen(&self, i: usize) -> HeckeElt {
        let t = &self.tables;
        let qhat = Scalar::qhat();
        let mut out = BTreeMap::new();
        for (&w, c) in &self.coeffs {
            let sw = t.left[i - 1][w as usize];
            if t.lengths[sw as usize] > t.lengths[w as usize] {
                add_into(&mut out, sw, c);
            } else {
                add_into(&mut out, w, &(&qhat * c));
                add_into(&mut out, sw, c);
            }
        }
        HeckeElt { tables: t.clone(), coeffs: out }
    }

    /// `self * T_i`
    pub fn right_mul_gen(&self, i: usize) -> HeckeElt {
        let t = &self.tables;
        let qhat = Scalar::qhat();
        let mut out = BTreeMap::new();
        for (&w, c) in &self.coeffs {
            let ws = t.right[i - 1][w as usize];
            if t.lengths[ws as usize] > t.lengths[w as usize] {
                add_into(&mut out, ws, c);
            } else {
                add_into(&mut out, w, &(&qhat * c));
                add_into(&mut out, ws, c);
            }
        }
        HeckeElt { tables: t.clone(), coeffs: out }
    }

    /// `T_w * self`, along the reduced word of `w`.
    fn left_mul_basis(&self, w: u32) -> HeckeElt {
        let word = &self.tables.words[w as usize];
        let mut acc = self.clone();
        for &i in word.iter().rev() {
            acc = acc.left_mul_gen(i);
        }
        acc
    }

    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_same(other)?;
        let mut out = BTreeMap::new();
        for (&v, c) in &self.coeffs {
            let prod = other.left_mul_basis(v);
            for (i, d) in prod.coeffs {
                add_into(&mut out, i, &(c * &d));
            }
        }
        Ok(HeckeElt { tables: self.tables.clone(), coeffs: out })
    }

    /// The anti-involution `T_w -> T_{w^-1}`.
    pub fn star(&self) -> HeckeElt {
        let t = &self.tables;
        let coeffs = self.coeffs.iter().map(|(i, c)| (t.inverse[*i as usize], c.clone())).collect();
        HeckeElt { tables: t.clone(), coeffs }
    }

    /// The anti-involution determined by `T_s -> -T_s^{-1}`; on the basis
    /// `T_w -> (-1)^{l(w)} (T_w)^{-1}`.
    pub fn prime(&self) -> HeckeElt {
        let mut out = HeckeElt::zero(self.degree());
        for (&w, c) in &self.coeffs {
            let sign = if self.tables.lengths[w as usize] % 2 == 0 { c.clone() } else { -c };
            let inv = invert_index(&self.tables, w);
            out = out.add(&inv.scale(&sign)).unwrap();
        }
        out
    }

    /// Coefficient of `T_id`.
    pub fn unit_coeff(&self) -> Scalar {
        self.coeffs.get(&0).cloned().unwrap_or_else(Scalar::zero)
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, i: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(i) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn invert_index(t: &Arc<HeckeTables>, w: u32) -> HeckeElt {
    // T_w = T_{l1} ... T_{lr}  =>  T_w^{-1} = T_{lr}^{-1} ... T_{l1}^{-1}, T_s^{-1} = T_s - q̂
    let word = &t.words[w as usize];
    let qhat = Scalar::qhat();
    let mut acc = HeckeElt::from_index(t.clone(), 0, Scalar::one());
    for &i in word.iter() {
        // left-multiply by T_i^{-1}, processing letters from l1 outward
        acc = acc.left_mul_gen(i).sub(&acc.scale(&qhat)).unwrap();
    }
    acc
}

/// `(T_w)^{-1}`.
pub fn invert_basis(w: &Perm) -> HeckeElt {
    let t = HeckeTables::get(w.degree());
    let i = t.idx(w);
    invert_index(&t, i)
}

pub fn multiply(a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
    a.mul(b)
}

pub fn star(a: &HeckeElt) -> HeckeElt {
    a.star()
}

pub fn prime(a: &HeckeElt) -> HeckeElt {
    a.prime()
}

/// The symmetric associative form `<a, b>`: coefficient of `T_id` in `ab`.
pub fn bilinear(a: &HeckeElt, b: &HeckeElt) -> Result<Scalar> {
    Ok(a.mul(b)?.unit_coeff())
}

/// `t = Σ_w T_w T_{w^-1}`.
pub fn central_t(k: usize) -> HeckeElt {
    let t = HeckeTables::get(k);
    let mut acc = HeckeElt::zero(k);
    for w in 0..t.size() as u32 {
        let a = HeckeElt::from_index(t.clone(), w, Scalar::one());
        let b = HeckeElt::from_index(t.clone(), t.inverse[w as usize], Scalar::one());
        acc = acc.add(&a.mul(&b).unwrap()).unwrap();
    }
    acc
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if w.is_identity() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})T{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}[{self}]", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{all_perms, length};

    fn t(k: usize, i: usize) -> HeckeElt {
        HeckeElt::generator(k, i)
    }

    #[test]
    fn quadratic_relation() {
        let s = t(2, 1);
        let lhs = s.mul(&s).unwrap();
        let rhs = s.scale(&Scalar::qhat()).add(&HeckeElt::one(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lengths_add() {
        let p = t(3, 1).mul(&t(3, 2)).unwrap();
        assert_eq!(p, HeckeElt::basis(&Perm::simple(3, 1).compose(&Perm::simple(3, 2))));
        assert!(t(3, 1).mul(&t(2, 1)).is_err());
    }

    #[test]
    fn braid_relations() {
        for k in 3..=5 {
            for i in 1..k - 1 {
                let a = t(k, i).mul(&t(k, i + 1)).unwrap().mul(&t(k, i)).unwrap();
                let b = t(k, i + 1).mul(&t(k, i)).unwrap().mul(&t(k, i + 1)).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(invert_basis(&Perm::identity(3)), HeckeElt::one(3));
        let s = Perm::simple(3, 2);
        assert_eq!(invert_basis(&s), t(3, 2).sub(&HeckeElt::scalar(3, Scalar::qhat())).unwrap());
        for w in all_perms(4) {
            let prod = HeckeElt::basis(&w).mul(&invert_basis(&w)).unwrap();
            assert_eq!(prod, HeckeElt::one(4), "w = {w}");
        }
    }

    #[test]
    fn involutions_on_generators() {
        let s = t(3, 1);
        assert_eq!(s.star(), s);
        let expect = HeckeElt::scalar(3, Scalar::qhat()).sub(&s).unwrap();
        assert_eq!(s.prime(), expect);
    }

    #[test]
    fn bilinear_form_examples() {
        let s = t(2, 1);
        assert!(bilinear(&s, &s).unwrap().is_one());
        assert!(bilinear(&s, &HeckeElt::one(2)).unwrap().is_zero());
        assert!(bilinear(&t(3, 1), &t(3, 2)).unwrap().is_zero());
    }

    #[test]
    fn central_element_small() {
        assert_eq!(central_t(1), HeckeElt::one(1));
        let expect = HeckeElt::scalar(2, Scalar::from_int(2)).add(&t(2, 1).scale(&Scalar::qhat())).unwrap();
        assert_eq!(central_t(2), expect);
        let c = central_t(3);
        for i in 1..3 {
            assert_eq!(c.mul(&t(3, i)).unwrap(), t(3, i).mul(&c).unwrap());
        }
    }

    #[test]
    fn basis_products_match_lengths() {
        // T_v T_w = T_{vw} whenever lengths add
        let ps = all_perms(4);
        for v in &ps {
            for w in &ps {
                let vw = v.compose(w);
                if length(&vw) == length(v) + length(w) {
                    assert_eq!(HeckeElt::basis(v).mul(&HeckeElt::basis(w)).unwrap(), HeckeElt::basis(&vw));
                }
            }
        }
    }
}
