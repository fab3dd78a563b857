//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).
//!
//! Criteria 3, 4, and 7 pin reference decompositions that exact
//! computation contradicts: they hold only when every character of `Z/d`
//! is self-conjugate (d <= 2). The checks are kept verbatim and fail
//! deliberately; the failing assertions print the computed truth, and the
//! JSON artifacts under `target/acceptance-artifacts/` carry the full
//! discrepancy tables. Everything else passes.

mod common;

use num::bigint::BigInt;

use wreathkit::applications::{
    fr_character, gauss_series, h1_stable_formula, stability_report, verify_h_decomposition,
    AppError,
};
use wreathkit::charpoly::{fit, from_induced};
use wreathkit::coinvariants::{
    chevalley_hilbert_series, coinvariant_character, hilbert_series, top_degree, MultiDegree,
    DEFAULT_GROUP_CAP,
};
use wreathkit::combinat::{enumerate_multipartitions, group_order, MultiPartition, Partition};
use wreathkit::exactnum::{Cyclotomic, Rational};
use wreathkit::orlik_solomon::{equivariant_character, monomial_arrangement, poincare_polynomial};
use wreathkit::wreathchar::{
    character_table, classes, decompose, ind_fig_character, inner_product, irr_character,
    kg_module_character, ClassFunction,
};

fn artifact_dir() -> std::path::PathBuf {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../target/acceptance-artifacts");
    std::fs::create_dir_all(&dir).expect("artifact dir");
    dir
}

fn report(criterion: u32, title: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion:2} ({title}): {status}{}", {
        if detail.is_empty() {
            String::new()
        } else {
            format!(" — {detail}")
        }
    });
}

#[test]
fn criterion_01_character_table_validity() {
    let mut ok = true;
    let mut detail = String::new();
    for d in 1..=3u32 {
        for n in 1..=4u32 {
            let table = character_table(d, n);
            // row orthonormality
            for (i, (li, chi_i)) in table.iter().enumerate() {
                for (j, (_, chi_j)) in table.iter().enumerate() {
                    let ip = inner_product(chi_i, chi_j).unwrap();
                    let expect_one = i == j;
                    if ip.is_one() != expect_one || (!expect_one && !ip.is_zero()) {
                        ok = false;
                        detail = format!("orthonormality fails at d={d}, n={n}, {li}");
                    }
                }
            }
            // sum of squared dimensions
            let mut acc = BigInt::from(0);
            for (_, chi) in table.iter() {
                let dim = chi.dimension().as_integer().expect("integral dimension");
                acc += &dim * &dim;
            }
            if acc != group_order(d, n) {
                ok = false;
                detail = format!("sum of dim^2 fails at d={d}, n={n}");
            }
        }
    }
    // column orthogonality against brute-force centralizer orders
    for d in 1..=2u32 {
        for n in 1..=3u32 {
            let table = character_table(d, n);
            let centralizers = common::brute_force_centralizers(d, n);
            let count = classes(d, n).len();
            for s in 0..count {
                for t in 0..count {
                    let mut acc = Cyclotomic::zero(d);
                    for (_, chi) in table.iter() {
                        acc = &acc + &(&chi.values()[s] * &chi.values()[t].conjugate());
                    }
                    let expect = if s == t {
                        Cyclotomic::from_bigint(d, centralizers[s].clone())
                    } else {
                        Cyclotomic::zero(d)
                    };
                    if acc != expect {
                        ok = false;
                        detail = format!("column orthogonality fails at d={d}, n={n}");
                    }
                }
            }
        }
    }
    report(1, "character table validity", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_02_character_polynomial_reproduction() {
    let mut ok = true;
    let mut detail = String::new();
    for d in 1..=2u32 {
        for m in 0..=2u32 {
            let mut seeds: Vec<(String, ClassFunction)> = enumerate_multipartitions(d, m)
                .into_iter()
                .map(|lam| (lam.to_string(), irr_character(d, m, &lam).unwrap()))
                .collect();
            seeds.push(("regular".into(), ClassFunction::regular(d, m)));
            for (name, v) in seeds {
                let p = from_induced(&v);
                if p.degree() > m {
                    ok = false;
                    detail = format!("degree bound fails for {name} on W_{m}");
                }
                for n in m..=6u32 {
                    let ind = ind_fig_character(&v, n).unwrap();
                    if p.as_class_function(n) != ind {
                        ok = false;
                        detail = format!("evaluation mismatch for {name}, d={d}, n={n}");
                    }
                }
            }
        }
    }
    report(2, "induced characters are character polynomials", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_03_h1_decomposition() {
    let mut ok = true;
    let mut failures = Vec::new();
    for d in 2..=3u32 {
        for n in 2..=4u32 {
            let computed = equivariant_character(d, n, 1).unwrap();
            let expected = h1_stable_formula(d, n).unwrap();
            if computed != expected {
                ok = false;
                failures.push(format!(
                    "(d={d}, n={n}): computed {:?} vs displayed {:?}",
                    decompose(&computed).unwrap(),
                    decompose(&expected).unwrap()
                ));
            }
        }
    }
    let detail = if ok {
        String::new()
    } else {
        format!(
            "the displayed sum pairs chi with conj(chi) only when every character is \
             self-conjugate; exact mismatches: {}",
            failures.join("; ")
        )
    };
    report(3, "H^1 stable decomposition", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_04_h2_display() {
    let mut ok = true;
    let mut details = Vec::new();
    for n in [4u32, 5] {
        let rep = verify_h_decomposition(2, n, 2).unwrap();
        let path = artifact_dir().join(format!("h2_discrepancy_d2_n{n}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&rep.to_json()).unwrap())
            .expect("write artifact");
        if !rep.pass {
            ok = false;
            details.push(format!(
                "n={n}: dim {} computed vs {} displayed, {} classes differ (artifact {})",
                rep.computed_dimension,
                rep.expected_dimension,
                rep.mismatches.len(),
                path.display()
            ));
        }
    }
    let detail = details.join("; ");
    report(4, "H^2 displayed decomposition", ok, &detail);
    assert!(ok, "quoted-decomposition regression: {detail}");
}

#[test]
fn criterion_05_stability_bound() {
    let mut ok = true;
    let mut details = Vec::new();
    for (i, n_start, n_stop) in [(1u32, 2u32, 6u32), (2, 4, 8)] {
        let rep = stability_report(
            &format!("H^{i}(P(2,1,n))"),
            &|n| Ok(equivariant_character(2, n, i as usize)?),
            i,
            n_start,
            n_stop,
            4 * i,
        )
        .unwrap();
        match rep.stabilized_at {
            Some(n0) if n0 <= 4 * i => {
                details.push(format!("i={i}: stable from n={n0} (bound {})", 4 * i));
            }
            other => {
                ok = false;
                details.push(format!(
                    "i={i}: stabilization {:?} violates bound {}",
                    other,
                    4 * i
                ));
            }
        }
    }
    let detail = details.join("; ");
    report(5, "stability degree <= 4i", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_06_poincare_polynomials() {
    let mut ok = true;
    let mut detail = String::new();
    for d in 1..=3u32 {
        for n in 1..=4u32 {
            let arr = monomial_arrangement(d, n);
            let nbc = poincare_polynomial(&arr);
            let oracle =
                common::deletion_restriction_poincare(&common::arrangement_forms(&arr), d);
            if nbc != oracle {
                ok = false;
                detail = format!("NBC vs deletion-restriction mismatch at d={d}, n={n}");
            }
            let expect_h1 = n as u64 + (d as u64) * (n as u64) * (n as u64 - 1) / 2;
            if nbc.len() < 2 || nbc[1] != num::BigUint::from(expect_h1) {
                ok = false;
                detail = format!("degree-1 coefficient wrong at d={d}, n={n}");
            }
        }
    }
    report(6, "Poincare polynomials vs deletion-restriction", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_07_kg_module_decomposition() {
    let mut ok = true;
    let mut failures = Vec::new();
    for d in 1..=4u32 {
        let kg = kg_module_character(d);
        let mut displayed = ClassFunction::zero(d, 2);
        for j in 0..d {
            let lam = MultiPartition::single(d, j, Partition::new(vec![2]));
            displayed = displayed.add(&irr_character(d, 2, &lam).unwrap()).unwrap();
        }
        if kg != displayed {
            ok = false;
            failures.push(format!(
                "d={d}: computed {:?} vs displayed {:?}",
                decompose(&kg).unwrap(),
                decompose(&displayed).unwrap()
            ));
        }
    }
    let detail = if ok {
        String::new()
    } else {
        format!(
            "k[G] pairs chi_j with chi_(d-j) under the swap; displayed sum is only \
             correct when every character is self-conjugate: {}",
            failures.join("; ")
        )
    };
    report(7, "k[G] module decomposition", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_08_coinvariants() {
    let cap = DEFAULT_GROUP_CAP;
    let mut ok = true;
    let mut detail = String::new();

    // total dimension and Hilbert series against the product formula
    for (d, n) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let top = top_degree(d, n);
        let dims = hilbert_series(d, n, top, cap).unwrap();
        let expect = chevalley_hilbert_series(d, n);
        if dims.len() != expect.len()
            || dims
                .iter()
                .zip(expect.iter())
                .any(|(a, b)| BigInt::from(*a) != *b)
        {
            ok = false;
            detail = format!("Hilbert series mismatch at d={d}, n={n}");
        }
        let total: usize = dims.iter().sum();
        if BigInt::from(total) != group_order(d, n) {
            ok = false;
            detail = format!("total dimension != |W| at d={d}, n={n}");
        }
    }

    // graded characters sum to the regular character
    for (d, n) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3)] {
        let mut total = ClassFunction::zero(d, n);
        for j in 0..=top_degree(d, n) {
            let chi = coinvariant_character(d, n, &MultiDegree::new(vec![j]), cap).unwrap();
            total = total.add(&chi).unwrap();
        }
        if total != ClassFunction::regular(d, n) {
            ok = false;
            detail = format!("graded character sum != regular at d={d}, n={n}");
        }
    }

    // fixed-degree characters fit a single character polynomial over n=2..4
    for d in 1..=3u32 {
        for j in 0..=2u32 {
            let seq: Vec<(u32, ClassFunction)> = (2..=4u32)
                .map(|n| {
                    (
                        n,
                        coinvariant_character(d, n, &MultiDegree::new(vec![j]), cap).unwrap(),
                    )
                })
                .collect();
            match fit(&seq, j) {
                Ok(p) => {
                    for (n, f) in &seq {
                        if p.as_class_function(*n) != *f {
                            ok = false;
                            detail = format!("fit does not evaluate back at d={d}, j={j}, n={n}");
                        }
                    }
                }
                Err(e) => {
                    ok = false;
                    detail = format!("fit failed at d={d}, j={j}: {e}");
                }
            }
        }
    }
    report(8, "coinvariant algebras", ok, &detail);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_09_gauss_series() {
    // hard check: n-independence over each window (gauss_series errors on
    // instability); soft check: agreement with the quoted 1/(2q) + 2/q^2,
    // reported with full provenance either way
    let result = gauss_series(3, 1, 2);
    let rep = match result {
        Ok(rep) => rep,
        Err(AppError::CharPoly(e)) => {
            report(9, "Gauss series stability", false, &e.to_string());
            panic!("inner products failed to stabilize: {e}");
        }
        Err(e) => {
            report(9, "Gauss series stability", false, &e.to_string());
            panic!("{e}");
        }
    };
    let path = artifact_dir().join("gauss_series_q3.json");
    std::fs::write(&path, serde_json::to_string_pretty(&rep.to_json()).unwrap())
        .expect("write artifact");
    let mut soft = String::new();
    for (i, expected) in &rep.reference {
        let term = rep.terms.iter().find(|t| t.i == *i).unwrap();
        if &term.coeff != expected {
            soft.push_str(&format!(
                " a_{i} computed {} vs quoted {expected} (inner products {});",
                term.coeff,
                term.values
                    .iter()
                    .map(|(n, v)| format!("n={n}: {v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }
    let detail = if soft.is_empty() {
        "stable and matching the quoted series".to_string()
    } else {
        format!(
            "inner products stable over every window; quoted-series disagreement \
             (reported, not failing):{soft} artifact {}",
            path.display()
        )
    };
    report(9, "Gauss series stability", true, &detail);
    // the hard criterion is stability, which held; a_0 must vanish for
    // nontrivial chi
    assert!(rep.terms[0].coeff.is_zero());
}

#[test]
fn criterion_10_fr_module() {
    let mut ok = true;
    let mut detail = String::new();
    // integral decompositions for n <= 5
    for n in 2..=5u32 {
        if let Err(e) = decompose(&fr_character(n, 1).unwrap()) {
            ok = false;
            detail = format!("decompose failed at n={n}: {e}");
        }
    }
    // degree <= 2 character polynomial across n = 2..6
    let seq: Vec<(u32, ClassFunction)> = (2..=6u32)
        .map(|n| (n, fr_character(n, 1).unwrap()))
        .collect();
    match fit(&seq, 2) {
        Ok(p) => {
            if p.degree() > 2 {
                ok = false;
                detail = "fitted polynomial exceeds degree 2".into();
            }
            for (n, f) in &seq {
                if p.as_class_function(*n) != *f {
                    ok = false;
                    detail = format!("fit does not evaluate back at n={n}");
                }
            }
        }
        Err(e) => {
            ok = false;
            detail = format!("fit failed: {e}");
        }
    }
    // multiplicities stabilize by n = 4
    let rep = stability_report(
        "H^1(FR(Z^*n))",
        &|n| fr_character(n, 1),
        1,
        2,
        6,
        4,
    )
    .unwrap();
    match rep.stabilized_at {
        Some(n0) if n0 <= 4 => {}
        other => {
            ok = false;
            detail = format!("stabilization {other:?} violates bound 4");
        }
    }
    report(10, "Fouxe-Rabinovitch degree 1", ok, &detail);
    assert!(ok, "{detail}");
}

/// The inner products feeding criterion 9 must individually be exact
/// rationals of small height; spot-check the i=1 window values against the
/// hand-computable moment 1/2.
#[test]
fn gauss_window_values_spot_check() {
    let rep = gauss_series(3, 1, 1).unwrap();
    let half = Cyclotomic::from_rational(2, Rational::new(1.into(), 2.into()));
    for (n, v) in &rep.terms[1].values {
        assert_eq!(v, &half, "inner product at n={n}");
    }
}
