//! Permutations, reduced words and shuffles.
//!
//! Permutations are stored in one-line notation and composed as functions:
//! `(p * r)(x) = p(r(x))`. The simple transposition `s_i` swaps `i` and `i+1`
//! (1-based), so `p * s_i` swaps the entries at positions `i, i+1` and
//! `s_i * p` swaps the values `i, i+1`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    // 0-based images
    img: Vec<u8>,
}

/// Sequence of generator indices `i` (1-based), read as `s_{l1} s_{l2} ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm { img: (0..k as u8).collect() }
    }

    /// From 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { img: images.iter().map(|&v| (v - 1) as u8).collect() })
    }

    /// The simple transposition `s_i` in `S_k`, `1 <= i < k`.
    pub fn simple(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i < k, "s_{i} does not exist in S_{k}");
        let mut p = Self::identity(k);
        p.img.swap(i - 1, i);
        p
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize + 1).collect()
    }

    /// `p(x)` for 1-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.img[x - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm { img: inv }
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    /// `self * s_i`
    pub fn mul_simple(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.img.swap(i - 1, i);
        p
    }

    /// `s_i * self`
    pub fn simple_mul(&self, i: usize) -> Perm {
        let (a, b) = ((i - 1) as u8, i as u8);
        Perm {
            img: self
                .img
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        }
    }

    /// Whether `i` is a right descent, i.e. `length(p * s_i) < length(p)`.
    pub fn has_descent(&self, i: usize) -> bool {
        self.img[i - 1] > self.img[i]
    }

    /// Whether `length(s_i * p) < length(p)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.img[i - 1] > inv.img[i]
    }

    pub fn sign(&self) -> i64 {
        if length(self) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product of a word of generators in `S_k`.
    pub fn from_word(k: usize, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(k), |p, &i| p.mul_simple(i))
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self, k: usize) -> Perm {
        Perm::from_word(k, &self.letters)
    }
}

/// Number of inversions.
pub fn length(p: &Perm) -> usize {
    let img = &p.img;
    let mut n = 0;
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            if img[i] > img[j] {
                n += 1;
            }
        }
    }
    n
}

/// Canonical reduced word: strip the smallest right descent until the
/// identity is reached, then read the stripped letters backwards.
pub fn reduced_word(p: &Perm) -> ReducedWord {
    let mut cur = p.clone();
    let mut letters = Vec::with_capacity(length(p));
    while let Some(i) = (1..cur.degree()).find(|&i| cur.has_descent(i)) {
        letters.push(i);
        cur = cur.mul_simple(i);
    }
    letters.reverse();
    ReducedWord { letters }
}

pub fn longest_element(k: usize) -> Perm {
    Perm { img: (0..k as u8).rev().collect() }
}

/// All of `S_k` in lexicographic order of one-line notation.
pub fn all_perms(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(Perm { img: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Shuffle permutations `C_{k,i}`: increasing on `1..=i` and on `i+1..=k`.
pub fn shuffles(k: usize, i: usize) -> Result<Vec<Perm>> {
    if i == 0 || i >= k {
        return Err(Error::InvalidArgument(format!("shuffles need 1 <= i < k, got i = {i}, k = {k}")));
    }
    let mut out = Vec::new();
    // choose the image set of the first block
    let mut subset: Vec<usize> = (0..i).collect();
    loop {
        let mut img: Vec<u8> = subset.iter().map(|&v| v as u8).collect();
        img.extend((0..k).filter(|v| !subset.contains(v)).map(|v| v as u8));
        out.push(Perm { img });
        // next i-subset in lexicographic order
        let Some(pos) = (0..i).rev().find(|&j| subset[j] < k - i + j) else { break };
        subset[pos] += 1;
        for j in pos + 1..i {
            subset[j] = subset[j - 1] + 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Unique factorization `p = p1 * p2 * p3` with `p1` a shuffle, `p2` fixing
/// `i+1..=k` and `p3` fixing `1..=i`.
pub fn shuffle_decompose(p: &Perm, i: usize) -> Result<(Perm, Perm, Perm)> {
    let k = p.degree();
    if i == 0 || i >= k {
        return Err(Error::InvalidArgument(format!("shuffle_decompose needs 1 <= i < k, got i = {i}, k = {k}")));
    }
    let mut first: Vec<u8> = p.img[..i].to_vec();
    let mut second: Vec<u8> = p.img[i..].to_vec();
    first.sort_unstable();
    second.sort_unstable();
    let p1 = Perm { img: first.into_iter().chain(second).collect() };
    let rest = p1.inverse().compose(p);
    let mut p2 = Perm::identity(k);
    let mut p3 = Perm::identity(k);
    p2.img[..i].copy_from_slice(&rest.img[..i]);
    p3.img[i..].copy_from_slice(&rest.img[i..]);
    Ok((p1, p2, p3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Perm {
        Perm::from_images(v).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(length(&Perm::identity(3)), 0);
        assert_eq!(length(&Perm::simple(3, 1)), 1);
        assert_eq!(length(&longest_element(4)), 6);
    }

    #[test]
    fn composition_convention() {
        let p = perm(&[2, 3, 1]);
        let r = perm(&[1, 3, 2]);
        // (p r)(2) = p(r(2)) = p(3) = 1
        assert_eq!(p.compose(&r).apply(2), 1);
        assert_eq!(p.mul_simple(1), p.compose(&Perm::simple(3, 1)));
        assert_eq!(p.simple_mul(2), Perm::simple(3, 2).compose(&p));
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn reduced_words() {
        assert!(reduced_word(&Perm::identity(4)).is_empty());
        let t13 = perm(&[3, 2, 1]);
        let w = reduced_word(&t13);
        assert_eq!(w.len(), 3);
        assert_eq!(w.evaluate(3), t13);
        assert_eq!(reduced_word(&longest_element(3)).len(), 3);
        for p in all_perms(5) {
            let w = reduced_word(&p);
            assert_eq!(w.len(), length(&p));
            assert_eq!(w.evaluate(5), p);
        }
    }

    #[test]
    fn longest() {
        assert!(longest_element(1).is_identity());
        assert_eq!(longest_element(2).images(), vec![2, 1]);
        assert_eq!(longest_element(4).images(), vec![4, 3, 2, 1]);
    }

    #[test]
    fn shuffle_sets() {
        assert_eq!(shuffles(2, 1).unwrap(), vec![Perm::identity(2), Perm::simple(2, 1)]);
        assert_eq!(shuffles(3, 1).unwrap().len(), 3);
        // brute-force filter of S_4
        let brute: Vec<Perm> = all_perms(4)
            .into_iter()
            .filter(|p| p.apply(1) < p.apply(2) && p.apply(3) < p.apply(4))
            .collect();
        assert_eq!(shuffles(4, 2).unwrap(), brute);
        assert!(shuffles(3, 3).is_err());
        assert!(shuffles(3, 0).is_err());
    }

    #[test]
    fn decompositions() {
        let (a, b, c) = shuffle_decompose(&Perm::identity(3), 1).unwrap();
        assert!(a.is_identity() && b.is_identity() && c.is_identity());
        let (a, b, c) = shuffle_decompose(&Perm::simple(3, 1), 2).unwrap();
        assert!(a.is_identity() && c.is_identity());
        assert_eq!(b, Perm::simple(3, 1));
        for i in 1..4 {
            let cs = shuffles(4, i).unwrap();
            for p in all_perms(4) {
                let (p1, p2, p3) = shuffle_decompose(&p, i).unwrap();
                assert!(cs.contains(&p1));
                assert!((i + 1..=4).all(|x| p2.apply(x) == x));
                assert!((1..=i).all(|x| p3.apply(x) == x));
                assert_eq!(p1.compose(&p2).compose(&p3), p);
                assert_eq!(length(&p), length(&p1) + length(&p2) + length(&p3));
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let ps = all_perms(4);
        assert_eq!(ps.len(), 24);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }
}
