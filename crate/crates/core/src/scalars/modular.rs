use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[inline]
pub fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`; `None` for zero.
pub fn mod_inv(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(mod_pow(a, p - 2, p))
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

/// Image of a rational number in Z/p; `None` when `p` divides the denominator.
pub fn rational_mod(c: &BigRational, p: u64) -> Option<u64> {
    if c.is_zero() {
        return Some(0);
    }
    let n = bigint_mod(c.numer(), p);
    let d = mod_inv(bigint_mod(c.denom(), p), p)?;
    Some(mod_mul(n, d, p))
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Lower end of the prime range used for modular rank.
pub const PRIME_LOW: u64 = 1 << 31;
/// Upper end (exclusive) of the prime range used for modular rank.
pub const PRIME_HIGH: u64 = 1 << 32;

/// Draws a uniformly random prime from `[2^31, 2^32)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range(PRIME_LOW..PRIME_HIGH) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// A residue mod `prime`, obtained by substituting `q = qpoint`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModScalar {
    pub value: u64,
    pub prime: u64,
    pub qpoint: u64,
}

impl fmt::Display for ModScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}, q = {})", self.value, self.prime, self.qpoint)
    }
}

/// Evaluates `x` at `q = q0` in Z/p.
pub fn specialize(x: &Scalar, p: u64, q0: u64) -> Result<ModScalar> {
    let bad = Error::BadEvaluationPoint { prime: p, qpoint: q0 };
    let q0 = q0 % p;
    if q0 == 0 {
        return Err(bad);
    }
    let n = x.num().eval_mod(p, q0).ok_or_else(|| bad.clone())?;
    let d = x.den().eval_mod(p, q0).ok_or_else(|| bad.clone())?;
    let dinv = mod_inv(d, p).ok_or(bad)?;
    Ok(ModScalar { value: mod_mul(n, dinv, p), prime: p, qpoint: q0 })
}

/// Z/p with `q` evaluated at `q0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModField {
    pub p: u64,
    pub q0: u64,
    q_inv: u64,
}

impl ModField {
    pub fn new(p: u64, q0: u64) -> Result<Self> {
        let q0 = q0 % p;
        let q_inv = mod_inv(q0, p).ok_or(Error::BadEvaluationPoint { prime: p, qpoint: q0 })?;
        Ok(ModField { p, q0, q_inv })
    }

    /// Random evaluation point with `q0` uniform in `[2, p-2]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let p = random_prime(rng);
        let q0 = rng.gen_range(2..=p - 2);
        ModField::new(p, q0).unwrap()
    }

    pub fn q_inv(&self) -> u64 {
        self.q_inv
    }
}
