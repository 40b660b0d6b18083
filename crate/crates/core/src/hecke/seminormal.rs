use std::collections::HashMap;

use super::{HeckeElt, HeckeTables};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalars::Scalar;
use crate::symgroup::Perm;

pub type Mat = Vec<Vec<Scalar>>;

/// Young's seminormal form of the irreducible representation labelled by a
/// partition, on the basis of standard tableaux.
///
/// For the axial distance `a = c(i+1) - c(i)` the generator `T_i` has diagonal
/// entry `q̂ / (1 - q^{-2a})`, which is `q` along a row and `-q^{-1}` down a
/// column. The 2x2 blocks pairing `t` with `s_i t` have off-diagonal entries
/// `1` (when `a < 0`) and `1 + d(a) d(-a)` (when `a > 0`).
#[derive(Clone, Debug)]
pub struct SeminormalRep {
    pub shape: Partition,
    pub tableaux: Vec<Vec<(usize, usize)>>,
    /// `gens[i-1]` is the matrix of `T_i`, rows indexed by output tableau.
    pub gens: Vec<Mat>,
}

fn axial_entry(a: i64) -> Scalar {
    // q̂ / (1 - q^{-2a})
    let den = &Scalar::one() - &Scalar::q_pow(-2 * a);
    &Scalar::qhat() / &den
}

pub fn seminormal(shape: &Partition) -> SeminormalRep {
    let k = shape.weight();
    let tableaux = shape.standard_tableaux();
    let pos: HashMap<Vec<(usize, usize)>, usize> = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let d = tableaux.len();
    let content = |b: (usize, usize)| b.1 as i64 - b.0 as i64;
    let mut gens = Vec::with_capacity(k.saturating_sub(1));
    for i in 1..k {
        let mut m = vec![vec![Scalar::zero(); d]; d];
        for (col, t) in tableaux.iter().enumerate() {
            let a = content(t[i]) - content(t[i - 1]);
            m[col][col] = axial_entry(a);
            if a.abs() >= 2 {
                let mut st = t.clone();
                st.swap(i - 1, i);
                let row = pos[&st];
                m[row][col] = if a < 0 {
                    Scalar::one()
                } else {
                    &Scalar::one() + &(&axial_entry(a) * &axial_entry(-a))
                };
            }
        }
        gens.push(m);
    }
    SeminormalRep { shape: shape.clone(), tableaux, gens }
}

pub fn identity(d: usize) -> Mat {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] = &out[i][j] + &(x * &bl[j]);
                }
            }
        }
    }
    out
}

pub fn mat_add_scaled(acc: &mut Mat, c: &Scalar, b: &Mat) {
    for (ra, rb) in acc.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }
}

pub fn trace(a: &Mat) -> Scalar {
    a.iter().enumerate().fold(Scalar::zero(), |acc, (i, r)| &acc + &r[i])
}

impl SeminormalRep {
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.weight()
    }

    /// `ρ(T_w)` for every `w`, indexed like [`HeckeTables::perms`].
    pub fn basis_matrices(&self) -> Vec<Mat> {
        let t = HeckeTables::get(self.degree());
        let mut out: Vec<Option<Mat>> = vec![None; t.size()];
        out[0] = Some(identity(self.dim()));
        // fill by increasing length: ρ(T_w) = ρ(T_{w'}) ρ(T_i) with w = w' s_i
        let mut order: Vec<usize> = (0..t.size()).collect();
        order.sort_by_key(|&w| t.lengths[w]);
        for w in order.into_iter().skip(1) {
            let word = &t.words[w];
            let last = *word.last().unwrap();
            let prev = t.right[last - 1][w] as usize;
            let m = mat_mul(out[prev].as_ref().unwrap(), &self.gens[last - 1]);
            out[w] = Some(m);
        }
        out.into_iter().map(|m| m.unwrap()).collect()
    }

    /// `ρ(h)`.
    pub fn matrix_of(&self, h: &HeckeElt) -> Result<Mat> {
        if h.degree() != self.degree() {
            return Err(Error::WeightMismatch { partition: self.degree(), k: h.degree() });
        }
        let mats = self.basis_matrices();
        let mut acc = vec![vec![Scalar::zero(); self.dim()]; self.dim()];
        for (&w, c) in h.raw() {
            mat_add_scaled(&mut acc, c, &mats[w as usize]);
        }
        Ok(acc)
    }

    /// Matrix of the generator `T_i` applied as a word product.
    pub fn word_matrix(&self, word: &[usize]) -> Mat {
        word.iter().fold(identity(self.dim()), |acc, &i| mat_mul(&acc, &self.gens[i - 1]))
    }
}

/// `χ^λ(T_w)`: trace of the seminormal matrices along the reduced word of `w`.
pub fn character(shape: &Partition, w: &Perm) -> Result<Scalar> {
    if shape.weight() != w.degree() {
        return Err(Error::WeightMismatch { partition: shape.weight(), k: w.degree() });
    }
    let rep = seminormal(shape);
    let word = crate::symgroup::reduced_word(w).letters;
    Ok(trace(&rep.word_matrix(&word)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dim, part};

    fn check_relations(rep: &SeminormalRep) {
        let k = rep.degree();
        let d = rep.dim();
        let id = identity(d);
        for i in 0..k.saturating_sub(1) {
            let g = &rep.gens[i];
            let mut rhs = id.clone();
            mat_add_scaled(&mut rhs, &Scalar::qhat(), g);
            assert_eq!(mat_mul(g, g), rhs, "quadratic relation for T_{} on {}", i + 1, rep.shape);
            if i + 1 < k - 1 {
                let h = &rep.gens[i + 1];
                assert_eq!(mat_mul(&mat_mul(g, h), g), mat_mul(&mat_mul(h, g), h), "braid relation on {}", rep.shape);
            }
            for j in i + 2..k - 1 {
                let h = &rep.gens[j];
                assert_eq!(mat_mul(g, h), mat_mul(h, g));
            }
        }
    }

    #[test]
    fn relations_hold() {
        for k in 1..=5 {
            for l in Partition::all(k) {
                let rep = seminormal(&l);
                assert_eq!(rep.dim(), dim(&l));
                check_relations(&rep);
            }
        }
    }

    #[test]
    fn one_dimensional_reps() {
        let row = seminormal(&part(&[3]));
        assert!(row.gens.iter().all(|g| g[0][0] == Scalar::q()));
        let col = seminormal(&part(&[1, 1, 1]));
        assert!(col.gens.iter().all(|g| g[0][0] == -Scalar::q_pow(-1)));
    }

    #[test]
    fn two_dimensional_trace() {
        // regular representation trace of T_i is q̂ k!/2; the characters must add up
        let k = 3;
        let tr: Scalar = Partition::all(k)
            .iter()
            .map(|l| &Scalar::from_int(dim(l) as i64) * &character(l, &Perm::simple(k, 1)).unwrap())
            .fold(Scalar::zero(), |a, b| &a + &b);
        assert_eq!(tr, &Scalar::qhat() * &Scalar::from_int(3));
        assert_eq!(character(&part(&[2, 1]), &Perm::simple(3, 1)).unwrap(), Scalar::qhat());
    }
}
