//! Cross-module oracle tests: every computed object is checked against an
//! independent brute-force or classical route.

mod common;

use num::bigint::BigInt;

use wreathkit::coinvariants::{coinvariant_character, MultiDegree, DEFAULT_GROUP_CAP};
use wreathkit::combinat::enumerate_multipartitions;
use wreathkit::exactnum::Cyclotomic;
use wreathkit::orlik_solomon::{
    braid_arrangement, monomial_arrangement, os_character, poincare_polynomial,
};
use wreathkit::wreathchar::{
    character_table, classes, decompose, ind_fig_character, inner_product, irr_character,
    ClassFunction,
};

#[test]
fn poincare_matches_deletion_restriction() {
    for d in 1..=2u32 {
        for n in 1..=3u32 {
            let arr = monomial_arrangement(d, n);
            let nbc = poincare_polynomial(&arr);
            let oracle =
                common::deletion_restriction_poincare(&common::arrangement_forms(&arr), d);
            assert_eq!(nbc, oracle, "monomial d={d}, n={n}");
        }
    }
    let braid = braid_arrangement(4);
    assert_eq!(
        poincare_polynomial(&braid),
        common::deletion_restriction_poincare(&common::arrangement_forms(&braid), 1)
    );
}

#[test]
fn braid_equivariant_matches_arnold_basis() {
    for n in 2..=4u32 {
        let arr = braid_arrangement(n);
        for k in 0..=2usize.min(arr.rank()) {
            let computed = os_character(&arr, 1, n, k).unwrap();
            let oracle = common::arnold_character(n, k);
            assert_eq!(computed, oracle, "Conf_{n}(C), degree {k}");
        }
    }
}

#[test]
fn frobenius_reciprocity_brute_force() {
    // <Ind^FI_G(V)_n, chi> = <V (x) triv, Res chi> at d=2, n <= 3
    let d = 2;
    for n in 2..=3u32 {
        for m in 1..n {
            for lam in enumerate_multipartitions(d, m) {
                let v = irr_character(d, m, &lam).unwrap();
                let ind = ind_fig_character(&v, n).unwrap();
                for (mu, chi) in character_table(d, n).iter() {
                    let lhs = inner_product(&ind, chi).unwrap();
                    let rhs = common::restricted_inner_product(&v, chi, m);
                    assert_eq!(lhs, rhs, "V=L({lam}), mu={mu}, n={n}");
                }
            }
        }
    }
}

#[test]
fn column_orthogonality_brute_force() {
    for d in 1..=2u32 {
        for n in 1..=3u32 {
            let table = character_table(d, n);
            let list = classes(d, n);
            let centralizers = common::brute_force_centralizers(d, n);
            for (s, ts) in list.iter().enumerate() {
                // formula centralizer must agree with enumeration
                assert_eq!(ts.centralizer_order(), centralizers[s], "class {ts}");
                for t in 0..list.len() {
                    let mut acc = Cyclotomic::zero(d);
                    for (_, chi) in table.iter() {
                        acc = &acc
                            + &(&chi.values()[s] * &chi.values()[t].conjugate());
                    }
                    let expect = if s == t {
                        Cyclotomic::from_bigint(d, centralizers[s].clone())
                    } else {
                        Cyclotomic::zero(d)
                    };
                    assert_eq!(acc, expect, "columns {s},{t} at d={d}, n={n}");
                }
            }
        }
    }
}

#[test]
fn hilbert_series_at_3_3_matches_product_formula() {
    // the largest configuration of the graded-dimension invariant
    let (d, n) = (3u32, 3u32);
    let top = wreathkit::coinvariants::top_degree(d, n);
    let dims =
        wreathkit::coinvariants::hilbert_series(d, n, top, DEFAULT_GROUP_CAP).unwrap();
    let expect = wreathkit::coinvariants::chevalley_hilbert_series(d, n);
    assert_eq!(dims.len(), expect.len());
    for (j, (have, want)) in dims.iter().zip(expect.iter()).enumerate() {
        assert_eq!(BigInt::from(*have), *want, "degree {j}");
    }
    assert_eq!(
        BigInt::from(dims.iter().sum::<usize>()),
        wreathkit::combinat::group_order(d, n)
    );
}

#[test]
fn coinvariant_sum_is_regular_representation() {
    for (d, n) in [(1u32, 2u32), (2, 2)] {
        let top = wreathkit::coinvariants::top_degree(d, n);
        let mut total = ClassFunction::zero(d, n);
        for j in 0..=top {
            let chi =
                coinvariant_character(d, n, &MultiDegree::new(vec![j]), DEFAULT_GROUP_CAP)
                    .unwrap();
            total = total.add(&chi).unwrap();
        }
        assert_eq!(total, ClassFunction::regular(d, n), "d={d}, n={n}");
    }
}

#[test]
fn bigraded_coinvariants_decompose_integrally() {
    // r = 2 diagonal coinvariants at (d, n) = (2, 2): every piece with
    // |J| <= 4 is a genuine character
    let mut checked = 0;
    for j1 in 0..=2u32 {
        for j2 in 0..=2u32 {
            if j1 + j2 > 4 {
                continue;
            }
            let chi = coinvariant_character(
                2,
                2,
                &MultiDegree::new(vec![j1, j2]),
                DEFAULT_GROUP_CAP,
            )
            .unwrap();
            let dec = decompose(&chi).unwrap();
            let dim: u64 = dec
                .iter()
                .map(|(lam, m)| {
                    let d = irr_character(2, 2, lam)
                        .unwrap()
                        .dimension()
                        .as_integer()
                        .unwrap();
                    u64::try_from(&d).unwrap() * m
                })
                .sum();
            assert_eq!(
                BigInt::from(dim),
                chi.dimension().as_integer().unwrap(),
                "J=({j1},{j2})"
            );
            checked += 1;
        }
    }
    assert!(checked >= 9);
}
