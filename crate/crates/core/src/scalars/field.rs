use std::fmt::Debug;

use super::linalg::dense_rank;
use super::modular::{mod_inv, mod_mul, mod_pow, specialize, ModField};
use super::rank::fraction_free_rank;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Arithmetic context shared by the exact and modular backends.
///
/// Operators and vectors are generic over `F::Elem`; the same construction code
/// then runs over Q(q) or over Z/p at a fixed value of `q`.
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn q_pow(&self, e: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_scalar(&self, x: &Scalar) -> Result<Self::Elem>;
    /// Pivot cost; smaller is preferred.
    fn weight(&self, a: &Self::Elem) -> usize;

    fn is_exact(&self) -> bool;

    /// `a + b * c`
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Rank of a dense block.
    fn block_rank(&self, rows: Vec<Vec<Self::Elem>>) -> Result<usize>
    where
        Self: Sized,
    {
        dense_rank(self, rows)
    }
}

/// Exact arithmetic in Q(q).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExactField;

impl Field for ExactField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn from_int(&self, n: i64) -> Scalar {
        Scalar::from_int(n)
    }
    fn q_pow(&self, e: i64) -> Scalar {
        Scalar::q_pow(e)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Result<Scalar> {
        a.inv()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn from_scalar(&self, x: &Scalar) -> Result<Scalar> {
        Ok(x.clone())
    }
    fn weight(&self, a: &Scalar) -> usize {
        a.term_count()
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn block_rank(&self, rows: Vec<Vec<Scalar>>) -> Result<usize> {
        Ok(fraction_free_rank(rows))
    }
}

impl Field for ModField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn q_pow(&self, e: i64) -> u64 {
        if e >= 0 {
            mod_pow(self.q0, e as u64, self.p)
        } else {
            mod_pow(self.q_inv(), e.unsigned_abs(), self.p)
        }
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mod_mul(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        mod_inv(*a, self.p).ok_or(Error::DivisionByZero)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_scalar(&self, x: &Scalar) -> Result<u64> {
        specialize(x, self.p, self.q0).map(|m| m.value)
    }
    fn weight(&self, _a: &u64) -> usize {
        1
    }
    fn is_exact(&self) -> bool {
        false
    }
    #[inline]
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        ((*a as u128 + *b as u128 * *c as u128) % self.p as u128) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_field_basics() {
        let f = ModField::new(101, 3).unwrap();
        assert_eq!(f.q_pow(-1), 34); // 3 * 34 = 102
        assert_eq!(f.from_int(-1), 100);
        assert_eq!(f.mul(&f.q_pow(5), &f.q_pow(-5)), 1);
        let x = f.from_scalar(&Scalar::qhat()).unwrap();
        assert_eq!(x, f.sub(&3, &34));
    }
}
