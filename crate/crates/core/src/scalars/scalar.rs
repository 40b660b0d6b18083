use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Element of the rational function field Q(q), kept as a reduced fraction of
/// Laurent polynomials.
///
/// Normal form: `den` has lowest exponent 0 and leading coefficient 1, and the
/// two polynomial parts are coprime. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Reduces `num / den` to normal form.
pub fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<Scalar> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(Scalar::zero());
    }
    // A monomial denominator is a unit up to its coefficient.
    if den.is_monomial() {
        let c = den.leading_coeff().unwrap().recip();
        let shift = -den.low_exp();
        return Ok(Scalar { num: num.scale(&c).shift(shift), den: LaurentPoly::one() });
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.is_constant() {
        (num, den)
    } else {
        (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
    };
    let shift = -den.low_exp();
    num = num.shift(shift);
    den = den.shift(shift);
    let lc = den.leading_coeff().unwrap().recip();
    if !lc.is_one() {
        num = num.scale(&lc);
        den = den.scale(&lc);
    }
    Ok(Scalar { num, den })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Scalar { num: p, den: LaurentPoly::one() }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(e))
    }

    /// `q - q^-1`
    pub fn qhat() -> Self {
        Self::from_laurent(LaurentPoly::from_ints(-1, &[-1, 0, 1]))
    }

    /// `q + q^-1`
    pub fn qcheck() -> Self {
        Self::from_laurent(LaurentPoly::from_ints(-1, &[1, 0, 1]))
    }

    /// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
    pub fn qint(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let m = n.abs();
        let terms = (0..m).map(|i| (-(m - 1) + 2 * i, BigRational::one()));
        let p = Self::from_laurent(LaurentPoly::from_terms(terms));
        if n < 0 {
            -p
        } else {
            p
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Total number of stored terms, used as a pivoting cost.
    pub fn term_count(&self) -> usize {
        self.num.term_count() + self.den.term_count() - 1
    }

    pub fn inv(&self) -> Result<Scalar> {
        normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Substitutes a rational value for `q`.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        let n = self.num.eval(q).ok_or(Error::DivisionByZero)?;
        let d = self.den.eval(q).ok_or(Error::DivisionByZero)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Constant value if the scalar does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::from_laurent(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Scalar { num, den: LaurentPoly::one() };
            }
            return normalize(num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        normalize(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        normalize(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &LaurentPoly| {
                if p.term_count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let s = normalize(LaurentPoly::from_ints(0, &[-1, 0, 1]), LaurentPoly::from_ints(0, &[-1, 1])).unwrap();
        assert_eq!(s.num(), &LaurentPoly::from_ints(0, &[1, 1]));
        assert!(s.den().is_one());

        let z = normalize(LaurentPoly::zero(), LaurentPoly::q_pow(3)).unwrap();
        assert!(z.is_zero() && z.den().is_one());

        let qh = LaurentPoly::from_ints(-1, &[-1, 0, 1]);
        let qc = LaurentPoly::from_ints(-1, &[1, 0, 1]);
        let s = normalize(qh.clone(), qc.clone()).unwrap();
        assert_eq!(s.den().low_exp(), 0);
        assert!(s.den().leading_coeff().unwrap().is_one());
        // cross-multiplication: s.num * qc == qh * s.den
        assert_eq!(s.num() * &qc, &qh * s.den());

        assert!(matches!(normalize(LaurentPoly::one(), LaurentPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn equal_fractions_normalize_identically() {
        let a = normalize(LaurentPoly::from_ints(0, &[1, 1]), LaurentPoly::from_ints(2, &[2])).unwrap();
        let b = normalize(LaurentPoly::from_ints(1, &[3, 3]), LaurentPoly::from_ints(3, &[6])).unwrap();
        assert_eq!(a, b);
        let c = normalize(LaurentPoly::from_ints(0, &[1, 2, 1]), LaurentPoly::from_ints(-4, &[3, 3])).unwrap();
        let d = normalize(LaurentPoly::from_ints(0, &[1, 1]), LaurentPoly::from_ints(-4, &[3])).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(Scalar::qint(1), Scalar::one());
        assert_eq!(Scalar::qint(2), Scalar::qcheck());
        assert_eq!(&Scalar::qint(3) * &Scalar::qhat(), &Scalar::q_pow(3) - &Scalar::q_pow(-3));
        assert_eq!(Scalar::qint(-2), -Scalar::qcheck());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = &Scalar::qcheck() / &Scalar::qhat();
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(Scalar::zero().inv().is_err());
    }
}
