use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in `q` with rational coefficients.
///
/// Stored densely from the lowest exponent `low`; the first and last stored
/// coefficients are nonzero, the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c * q^e`
    pub fn monomial(c: BigRational, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: e, coeffs: vec![c] }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from integer coefficients starting at exponent `low`.
    pub fn from_ints(low: i64, ints: &[i64]) -> Self {
        Self::from_terms(
            ints.iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        if e < self.low || e > self.high_exp() || self.is_zero() {
            return BigRational::zero();
        }
        self.coeffs[(e - self.low) as usize].clone()
    }

    /// Iterates `(exponent, coefficient)` over nonzero terms in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Coefficient of the highest power.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitutes a rational value for `q` (requires `q != 0` when negative
    /// exponents are present).
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if q.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        let base = if self.low >= 0 {
            num_traits::pow(q.clone(), self.low as usize)
        } else {
            num_traits::pow(q.recip(), (-self.low) as usize)
        };
        Some(acc * base)
    }

    /// Evaluates modulo `p` at `q = q0`. Returns `None` if a coefficient
    /// denominator is divisible by `p` or `q0 = 0` with negative exponents.
    pub fn eval_mod(&self, p: u64, q0: u64) -> Option<u64> {
        use crate::scalars::modular::{mod_inv, mod_mul, mod_pow, rational_mod};
        if self.is_zero() {
            return Some(0);
        }
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            let cm = rational_mod(c, p)?;
            acc = (mod_mul(acc, q0, p) + cm) % p;
        }
        let base = if self.low >= 0 {
            mod_pow(q0, self.low as u64, p)
        } else {
            mod_pow(mod_inv(q0, p)?, (-self.low) as u64, p)
        };
        Some(mod_mul(acc, base, p))
    }

    pub(crate) fn from_poly(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Divides by `other`, requiring the division to be exact.
    pub fn exact_div(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (quot, rem) = poly_divrem(&self.coeffs, &other.coeffs);
        if !rem.is_empty() {
            return None;
        }
        Some(Self::from_poly(self.low - other.low, quot))
    }

    /// Monic gcd of the polynomial parts (powers of `q` are units here).
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_poly(0, poly_gcd(&self.coeffs, &other.coeffs))
    }

    /// Multiplies by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> LaurentPoly {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn trim_vec(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Polynomial long division over the rationals on dense coefficient vectors
/// (index = exponent). Returns `(quotient, remainder)`, both trimmed.
pub(crate) fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = a.to_vec();
    trim_vec(&mut rem);
    let mut b = b.to_vec();
    trim_vec(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                let t = &factor * bc;
                rem[shift + i] -= t;
            }
        }
        quot[shift] = factor;
        rem.pop();
        trim_vec(&mut rem);
    }
    trim_vec(&mut quot);
    (quot, rem)
}

pub(crate) fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_vec(&mut x);
    trim_vec(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
        // keep coefficient growth in check
        if let Some(lc) = y.last().cloned() {
            let inv = lc.recip();
            for c in y.iter_mut() {
                *c *= &inv;
            }
        }
    }
    if let Some(lc) = x.last().cloned() {
        let inv = lc.recip();
        for c in x.iter_mut() {
            *c *= &inv;
        }
    }
    x
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().max(rhs.high_exp());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentPoly::from_poly(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_poly(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for canonical sorting.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn fmt_rational_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    e: i64,
    first: bool,
    var: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let show_coeff = !abs.is_one() || e == 0;
    if show_coeff {
        if abs.is_integer() {
            write!(f, "{}", abs.numer())?;
        } else {
            write!(f, "{}/{}", abs.numer(), abs.denom())?;
        }
    }
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            fmt_rational_term(f, c, e, first, "q")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = LaurentPoly::from_ints(-1, &[-1, 0, 1]); // q - q^-1
        let b = LaurentPoly::from_ints(-1, &[1, 0, 1]); // q + q^-1
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::from_ints(1, &[2]));
        let d = &a - &a;
        assert!(d.is_zero());
        let p = &a * &b; // q^2 - q^-2
        assert_eq!(p, LaurentPoly::from_ints(-2, &[-1, 0, 0, 0, 1]));
        assert_eq!(p.term_count(), 2);
    }

    #[test]
    fn exact_division_and_gcd() {
        let num = LaurentPoly::from_ints(0, &[-1, 0, 1]); // q^2 - 1
        let den = LaurentPoly::from_ints(0, &[-1, 1]); // q - 1
        assert_eq!(num.exact_div(&den).unwrap(), LaurentPoly::from_ints(0, &[1, 1]));
        assert!(den.exact_div(&num).is_none());
        assert_eq!(num.gcd(&den), den);
        let g = LaurentPoly::from_ints(3, &[2, 2]).gcd(&LaurentPoly::from_ints(0, &[1, 1]));
        assert_eq!(g, LaurentPoly::from_ints(0, &[1, 1]));
    }

    #[test]
    fn evaluation() {
        let a = LaurentPoly::from_ints(-1, &[-1, 0, 1]);
        assert_eq!(a.eval(&r(2)).unwrap(), BigRational::new(BigInt::from(3), BigInt::from(2)));
        // 2 - 1/2 = 3/2 -> 3 * inv(2) mod 7 = 3 * 4 = 12 = 5
        assert_eq!(a.eval_mod(7, 2), Some(5));
    }

    #[test]
    fn display() {
        let a = LaurentPoly::from_ints(-1, &[-1, 0, 1]);
        assert_eq!(a.to_string(), "q - q^-1");
        assert_eq!(LaurentPoly::from_ints(0, &[3]).to_string(), "3");
    }
}
