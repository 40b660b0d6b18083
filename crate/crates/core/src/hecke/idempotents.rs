use super::seminormal::{seminormal, trace};
use super::{HeckeElt, HeckeTables};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalars::Scalar;

/// `t_λ = Σ_w χ^λ(T_w) χ^λ(T_{w^-1})`.
pub fn t_lambda_direct(shape: &Partition) -> Scalar {
    let t = HeckeTables::get(shape.weight());
    let chars: Vec<Scalar> = seminormal(shape).basis_matrices().iter().map(trace).collect();
    (0..t.size()).fold(Scalar::zero(), |acc, w| &acc + &(&chars[w] * &chars[t.inverse[w] as usize]))
}

/// Builds `(d_λ / t_λ) Σ_w f(w) T_{w^-1}`.
fn dual_sum(shape: &Partition, f: impl Fn(usize) -> Scalar) -> Result<HeckeElt> {
    let t = HeckeTables::get(shape.weight());
    let tl = t_lambda_direct(shape);
    if tl.is_zero() {
        return Err(Error::Singular(format!("t_lambda vanishes for {shape}")));
    }
    let d = Scalar::from_int(crate::partitions::dim(shape) as i64);
    let norm = d.checked_div(&tl)?;
    let coeffs = (0..t.size())
        .map(|w| (t.inverse[w], &norm * &f(w)))
        .collect();
    Ok(HeckeElt::from_map(t, coeffs))
}

/// `z_λ = (d_λ / t_λ) Σ_w χ^λ(T_w) T_{w^-1}`.
pub fn central_idempotent(shape: &Partition) -> Result<HeckeElt> {
    let mats = seminormal(shape).basis_matrices();
    dual_sum(shape, |w| trace(&mats[w]))
}

/// A partition of unity inside `z_λ`: the preimages of the diagonal matrix
/// units `E_ii` of the seminormal representation,
/// `p^i = (d_λ / t_λ) Σ_w ρ(T_w)_{ii} T_{w^-1}`.
pub fn minimal_idempotents(shape: &Partition) -> Result<Vec<HeckeElt>> {
    let rep = seminormal(shape);
    let mats = rep.basis_matrices();
    (0..rep.dim()).map(|i| dual_sum(shape, |w| mats[w][i][i].clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::seminormal::identity;
    use crate::partitions::{part, t_lambda};

    #[test]
    fn small_central_idempotents() {
        let t = HeckeElt::generator(2, 1);
        let qinv = HeckeElt::scalar(2, Scalar::q_pow(-1));
        let qc = Scalar::qcheck().inv().unwrap();
        let z2 = t.add(&qinv).unwrap().scale(&qc);
        assert_eq!(central_idempotent(&part(&[2])).unwrap(), z2);
        let z11 = HeckeElt::scalar(2, Scalar::q()).sub(&t).unwrap().scale(&qc);
        assert_eq!(central_idempotent(&part(&[1, 1])).unwrap(), z11);
    }

    #[test]
    fn direct_t_matches_closed_form() {
        for k in 1..=4 {
            for l in Partition::all(k) {
                assert_eq!(t_lambda_direct(&l), t_lambda(&l, k).unwrap(), "{l}");
            }
        }
    }

    #[test]
    fn matrix_units() {
        let l = part(&[2, 1]);
        let rep = seminormal(&l);
        let ps = minimal_idempotents(&l).unwrap();
        assert_eq!(ps.len(), 2);
        for (i, p) in ps.iter().enumerate() {
            let m = rep.matrix_of(p).unwrap();
            let mut e = vec![vec![Scalar::zero(); 2]; 2];
            e[i][i] = Scalar::one();
            assert_eq!(m, e);
        }
        assert!(ps[0].mul(&ps[1]).unwrap().is_zero());
        assert_eq!(ps[0].mul(&ps[0]).unwrap(), ps[0]);
        assert_eq!(ps[0].add(&ps[1]).unwrap(), central_idempotent(&l).unwrap());
        let z = central_idempotent(&l).unwrap();
        assert_eq!(rep.matrix_of(&z).unwrap(), identity(2));
    }
}
