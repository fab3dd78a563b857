//! Regression pins for the arrangement cohomology characters: the exact
//! projective decompositions computed by this crate (solved independently
//! by unitriangular elimination over stable labels and frozen here).

use wreathkit::combinat::{MultiPartition, Partition};
use wreathkit::exactnum::Cyclotomic;
use wreathkit::orlik_solomon::equivariant_character;
use wreathkit::wreathchar::{
    ind_fig_character, induce_product, kg_module_character, twisted_specht_character,
    ClassFunction,
};

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

fn mp2(slot0: &[u32], slot1: &[u32]) -> MultiPartition {
    MultiPartition::new(2, vec![part(slot0), part(slot1)])
}

/// Ind^FI_G of the product of twisted Specht factors given by a label.
fn ind_family(lam: &MultiPartition, n: u32) -> ClassFunction {
    let d = lam.d();
    let mut seed: Option<ClassFunction> = None;
    for (j, p) in lam.slots().iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        let factor = twisted_specht_character(d, j as u32, p);
        seed = Some(match seed {
            None => factor,
            Some(prev) => induce_product(&prev, &factor).unwrap(),
        });
    }
    ind_fig_character(&seed.unwrap_or_else(|| ClassFunction::trivial(d, 0)), n).unwrap()
}

#[test]
fn h1_equals_z_span_plus_kg_span() {
    // H^1 = Ind((1)_chi0) + Ind(k[G]) for every d, exactly
    for (d, n) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let h1 = equivariant_character(d, n, 1).unwrap();
        let z = ind_fig_character(&ClassFunction::trivial(d, 1), n).unwrap();
        let e = ind_fig_character(&kg_module_character(d), n).unwrap();
        assert_eq!(h1, z.add(&e).unwrap(), "d={d}, n={n}");
    }
}

#[test]
fn h1_character_polynomial_fit() {
    // fitting the H^1 characters over n = 2..6 at degree 2 recovers the
    // polynomial predicted by from_induced on the two generating families
    let predicted = wreathkit::charpoly::from_induced(&ClassFunction::trivial(2, 1))
        .add(&wreathkit::charpoly::from_induced(&kg_module_character(2)));
    let seq: Vec<(u32, ClassFunction)> = (2..=6u32)
        .map(|n| (n, equivariant_character(2, n, 1).unwrap()))
        .collect();
    let fitted = wreathkit::charpoly::fit(&seq, 2).unwrap();
    assert_eq!(fitted, predicted);
    assert_eq!(fitted.degree(), 2);
}

#[test]
fn h2_true_projective_decomposition_d2() {
    // H^2(P(2,1,n)) as a sum of induced families, solved once by
    // unitriangular elimination and pinned here
    let families: Vec<(MultiPartition, i64)> = vec![
        (mp2(&[3, 1], &[]), 1),
        (mp2(&[], &[3, 1]), 1),
        (mp2(&[3], &[]), 1),
        (mp2(&[2, 1], &[]), 2),
        (mp2(&[2], &[2]), 1),
        (mp2(&[1], &[2]), 2),
        (mp2(&[1], &[1, 1]), 1),
        (mp2(&[2], &[]), 1),
        (mp2(&[], &[2]), 1),
        (mp2(&[1, 1], &[]), 1),
    ];
    for n in [4u32, 5] {
        let mut expect = ClassFunction::zero(2, n);
        for (lam, mult) in &families {
            let ind = ind_family(lam, n);
            expect = expect
                .add(&ind.scale(&Cyclotomic::from_integer(2, *mult)))
                .unwrap();
        }
        let h2 = equivariant_character(2, n, 2).unwrap();
        assert_eq!(h2, expect, "n={n}");
    }
}

#[test]
fn equivariant_characters_decompose_integrally_at_all_degrees() {
    for (d, n) in [(1u32, 3u32), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let rank = wreathkit::orlik_solomon::monomial_arrangement(d, n).rank();
        for k in 0..=rank {
            let chi = equivariant_character(d, n, k).unwrap();
            let dec = wreathkit::wreathchar::decompose(&chi)
                .unwrap_or_else(|e| panic!("H^{k} at (d={d}, n={n}): {e}"));
            let dim: u64 = dec
                .iter()
                .map(|(lam, m)| {
                    let dl = wreathkit::wreathchar::irr_character(d, n, lam)
                        .unwrap()
                        .dimension()
                        .as_integer()
                        .unwrap();
                    u64::try_from(&dl).unwrap() * m
                })
                .sum();
            assert_eq!(
                Cyclotomic::from_integer(d, dim as i64),
                chi.dimension(),
                "dimension bookkeeping at (d={d}, n={n}, k={k})"
            );
        }
    }
}

#[test]
fn kg_module_true_decomposition_d3_d4() {
    // swap pairs chi_j with chi_(d-j): the 2-cycle classes distinguish the
    // paired induced module from two one-dimensional ones
    let kg3 = kg_module_character(3);
    let expect3 = wreathkit::wreathchar::irr_character(
        3,
        2,
        &MultiPartition::new(3, vec![part(&[2]), part(&[]), part(&[])]),
    )
    .unwrap()
    .add(
        &wreathkit::wreathchar::irr_character(
            3,
            2,
            &MultiPartition::new(3, vec![part(&[]), part(&[1]), part(&[1])]),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(kg3, expect3);

    let kg4 = kg_module_character(4);
    let mut expect4 = wreathkit::wreathchar::irr_character(
        4,
        2,
        &MultiPartition::single(4, 0, part(&[2])),
    )
    .unwrap();
    expect4 = expect4
        .add(
            &wreathkit::wreathchar::irr_character(4, 2, &MultiPartition::single(4, 2, part(&[2])))
                .unwrap(),
        )
        .unwrap();
    expect4 = expect4
        .add(
            &wreathkit::wreathchar::irr_character(
                4,
                2,
                &MultiPartition::new(4, vec![part(&[]), part(&[1]), part(&[]), part(&[1])]),
            )
            .unwrap(),
        )
        .unwrap();
    assert_eq!(kg4, expect4);
}
