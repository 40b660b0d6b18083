//! Partitions, hook and content formulas, Schur polynomials and the counting
//! identities behind the Poincaré series.

mod multipoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub use multipoly::MultiPoly;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are dropped; the parts must be weakly decreasing.
    pub fn new(parts: &[usize]) -> Result<Self> {
        let parts: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// `lambda_i` for 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|i| self.parts.iter().filter(|&&p| p >= i).count()).collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    /// Length of the first column, `lambda'_1`.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Boxes `(i, j)` (1-based row, column) in row-reading order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        self.part(i) + conj.part(j) + 1 - i - j
    }

    /// Contents `j - i` of all boxes in row-reading order.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().map(|(i, j)| j as i64 - i as i64).collect()
    }

    /// All partitions of `k`, largest first in reverse lexicographic order.
    pub fn all(k: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    /// Standard Young tableaux of this shape. Each tableau lists, for the
    /// entries `1..=k`, the box `(row, col)` holding it (1-based).
    pub fn standard_tableaux(&self) -> Vec<Vec<(usize, usize)>> {
        fn rec(shape: &[usize], filled: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            if cur.len() == shape.iter().sum::<usize>() {
                out.push(cur.clone());
                return;
            }
            for r in 0..shape.len() {
                let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
                if ok {
                    filled[r] += 1;
                    cur.push((r + 1, filled[r]));
                    rec(shape, filled, cur, out);
                    cur.pop();
                    filled[r] -= 1;
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, &mut vec![0; self.parts.len()], &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shorthand for tests and tables; panics on invalid input.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts).expect("valid partition")
}

pub fn conjugate(l: &Partition) -> Partition {
    l.conjugate()
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Product of hook lengths `h(λ)`, dimension `d_λ = k!/h(λ)` and total
/// content `c(λ)`.
pub fn hooks_and_dims(l: &Partition, k: usize) -> Result<(BigInt, BigInt, i64)> {
    if l.weight() != k {
        return Err(Error::WeightMismatch { partition: l.weight(), k });
    }
    let h = l.boxes().fold(BigInt::one(), |a, (i, j)| a * BigInt::from(l.hook(i, j)));
    let (d, rem) = factorial(k).div_rem(&h);
    debug_assert!(rem.is_zero());
    let c = l.contents().iter().sum();
    Ok((h, d, c))
}

/// `d_λ` as a machine integer.
pub fn dim(l: &Partition) -> usize {
    hooks_and_dims(l, l.weight()).unwrap().1.to_usize().unwrap()
}

/// `δ_λ(N)`, the hook-content dimension `Π (N + j - i) / h(λ)`.
pub fn delta(l: &Partition, n: usize) -> BigInt {
    if l.height() > n {
        return BigInt::zero();
    }
    let (h, _, _) = hooks_and_dims(l, l.weight()).unwrap();
    let num = l.boxes().fold(BigInt::one(), |a, (i, j)| a * BigInt::from(n as i64 + j as i64 - i as i64));
    let (d, rem) = num.div_rem(&h);
    debug_assert!(rem.is_zero() && !d.is_negative());
    d
}

/// Schur polynomial `s_λ(x_1..x_N)` by enumerating semistandard tableaux.
pub fn schur_poly(l: &Partition, n: usize) -> MultiPoly {
    let boxes: Vec<(usize, usize)> = l.boxes().collect();
    let mut fill = vec![0usize; boxes.len()];
    let mut out = MultiPoly::zero(n);
    // box index of (i, j) in row-reading order
    let offsets: Vec<usize> = l.parts().iter().scan(0, |acc, &p| {
        let o = *acc;
        *acc += p;
        Some(o)
    }).collect();
    fn rec(
        pos: usize,
        boxes: &[(usize, usize)],
        offsets: &[usize],
        fill: &mut Vec<usize>,
        n: usize,
        out: &mut MultiPoly,
    ) {
        if pos == boxes.len() {
            let mut e = vec![0u32; n];
            for &v in fill.iter() {
                e[v - 1] += 1;
            }
            out.add_term(e, Scalar::one());
            return;
        }
        let (i, j) = boxes[pos];
        let mut lo = 1;
        if j > 1 {
            lo = lo.max(fill[pos - 1]); // weakly increasing along rows
        }
        if i > 1 {
            lo = lo.max(fill[offsets[i - 2] + j - 1] + 1); // strictly down columns
        }
        for v in lo..=n {
            fill[pos] = v;
            rec(pos + 1, boxes, offsets, fill, n, out);
        }
    }
    rec(0, &boxes, &offsets, &mut fill, n, &mut out);
    out
}

/// Closed form `t_λ = k! q^{c(λ)} Π_x [h(x)]_q / h(λ)`.
pub fn t_lambda(l: &Partition, k: usize) -> Result<Scalar> {
    let (h, _, c) = hooks_and_dims(l, k)?;
    let mut acc = Scalar::from_bigint(factorial(k)) * Scalar::q_pow(c);
    for (i, j) in l.boxes() {
        acc = acc * Scalar::qint(l.hook(i, j) as i64);
    }
    acc.checked_div(&Scalar::from_bigint(h))
}

/// Coefficients of `(1+t)(1+t^3)...(1+t^{2N-1})` up to `t^kmax`.
pub fn product_series(n: usize, kmax: usize) -> Vec<u64> {
    let mut c = vec![0u64; kmax + 1];
    c[0] = 1;
    for i in 1..=n {
        let d = 2 * i - 1;
        for k in (d..=kmax).rev() {
            c[k] += c[k - d];
        }
    }
    c
}

/// Number of partitions of `k` into distinct odd parts smaller than `2N`.
pub fn distinct_odd_count(k: usize, n: usize) -> u64 {
    // subset-sum count over the parts 1, 3, ..., 2N-1
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for part in (1..2 * n).step_by(2) {
        for s in (part..=k).rev() {
            ways[s] += ways[s - part];
        }
    }
    ways[k]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub k: usize,
    /// `Σ_{λ⊢k} δ_{λ'}(N) δ_λ(N)` as a decimal string.
    pub delta_sum: String,
    pub binomial: String,
    pub self_conjugate: u64,
    pub series_coeff: u64,
    pub distinct_odd: u64,
}

impl CountRow {
    pub fn holds(&self) -> bool {
        self.delta_sum == self.binomial && self.self_conjugate == self.series_coeff && self.series_coeff == self.distinct_odd
    }
}

/// The counting identities for every `k <= kmax`.
pub fn count_checks(n: usize, kmax: usize) -> Vec<CountRow> {
    let series = product_series(n, kmax);
    (0..=kmax)
        .map(|k| {
            let parts = Partition::all(k);
            let delta_sum: BigInt = parts.iter().map(|l| delta(&l.conjugate(), n) * delta(l, n)).sum();
            let self_conjugate =
                parts.iter().filter(|l| l.is_self_conjugate() && l.height() <= n).count() as u64;
            CountRow {
                k,
                delta_sum: delta_sum.to_string(),
                binomial: binomial(n * n, k).to_string(),
                self_conjugate,
                series_coeff: series[k],
                distinct_odd: distinct_odd_count(k, n),
            }
        })
        .collect()
}
