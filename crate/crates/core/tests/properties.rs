use proptest::prelude::*;
use qdiff_core::hecke::{bilinear, prime, star, HeckeTables};
use qdiff_core::partitions::{delta, dim, factorial, schur_poly};
use qdiff_core::symgroup::{all_perms, length, reduced_word};
use qdiff_core::{rank, specialize, HeckeElt, Partition, RankMode, Scalar, SparseMatrix};

const P: u64 = 2_147_483_659;

fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(|terms| {
        terms.iter().fold(Scalar::zero(), |acc, (c, e)| &acc + &(&Scalar::from_int(*c) * &Scalar::q_pow(*e)))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(a, b)| {
        let den = &b + &Scalar::q_pow(5);
        if den.is_zero() {
            a
        } else {
            a.checked_div(&den).unwrap()
        }
    })
}

fn hecke(k: usize) -> impl Strategy<Value = HeckeElt> {
    let size = HeckeTables::get(k).size();
    prop::collection::vec((0..size, laurent()), 0..5).prop_map(move |terms| {
        let t = HeckeTables::get(k);
        terms.into_iter().fold(HeckeElt::zero(k), |acc, (w, c)| acc.add(&HeckeElt::basis(&t.perms[w]).scale(&c)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn specialization_is_a_ring_map(a in scalar(), b in scalar(), q0 in 2u64..1_000_000) {
        let s = |x: &Scalar| specialize(x, P, q0);
        if let (Ok(x), Ok(y), Ok(sum), Ok(prod)) = (s(&a), s(&b), s(&(&a + &b)), s(&(&a * &b))) {
            prop_assert_eq!(sum.value, (x.value + y.value) % P);
            prop_assert_eq!(prod.value as u128, (x.value as u128 * y.value as u128) % P as u128);
        }
    }

    #[test]
    fn modular_rank_matches_exact(entries in prop::collection::vec(laurent(), 16), seed in any::<u64>()) {
        // force some rank deficiency half the time
        let mut rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|r| r.to_vec()).collect();
        if seed % 2 == 0 {
            rows[3] = rows[0].iter().zip(&rows[1]).map(|(x, y)| &(x * &Scalar::q()) - y).collect();
        }
        let m = SparseMatrix::from_scalar_triplets(
            4,
            4,
            rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i, j, x.clone()))),
        )
        .unwrap();
        let exact = rank(&m, &RankMode::Exact).unwrap();
        prop_assert_eq!(rank(&m, &RankMode::modular_default(seed)).unwrap(), exact);
    }

    #[test]
    fn hecke_involutions_reverse_products(a in hecke(3), b in hecke(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(prime(&ab), prime(&b).mul(&prime(&a)).unwrap());
        prop_assert_eq!(star(&ab), star(&b).mul(&star(&a)).unwrap());
        prop_assert_eq!(prime(&prime(&a)), a.clone());
        prop_assert_eq!(bilinear(&a, &b).unwrap(), bilinear(&b, &a).unwrap());
    }

    #[test]
    fn hecke_multiplication_is_associative(a in hecke(3), b in hecke(3), c in hecke(3)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

#[test]
fn reduced_words_have_length_many_letters() {
    for k in 1..=5 {
        for w in all_perms(k) {
            let word = reduced_word(&w);
            assert_eq!(word.len(), length(&w));
            assert_eq!(word.evaluate(k), w);
            assert_eq!(length(&w.inverse()), length(&w));
        }
    }
}

#[test]
fn partition_identities() {
    for k in 1..=7 {
        let mut sq = 0usize;
        for l in Partition::all(k) {
            assert_eq!(l.conjugate().conjugate(), l);
            assert_eq!(dim(&l), dim(&l.conjugate()));
            sq += dim(&l) * dim(&l);
            // δ_λ(N) is the number of monomials of s_λ counted with multiplicity
            for n in 1..=3 {
                assert_eq!(Scalar::from_bigint(delta(&l, n)), schur_poly(&l, n).eval_ones());
            }
        }
        assert_eq!(num_bigint::BigInt::from(sq), factorial(k));
    }
}

#[test]
fn generators_satisfy_the_quadratic_relation() {
    let qhat = Scalar::qhat();
    for k in 2..=4 {
        for i in 1..k {
            let g = HeckeElt::generator(k, i);
            let lhs = g.mul(&g).unwrap();
            let rhs = HeckeElt::one(k).add(&g.scale(&qhat)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
