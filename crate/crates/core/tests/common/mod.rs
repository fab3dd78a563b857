//! Test-side oracles, independent of the library code paths they check:
//! deletion-restriction for Poincare polynomials, the Arnold-basis braid
//! cohomology action, and brute-force restriction of wreath characters.

#![allow(dead_code)] // each test target uses a subset of the oracles

use num::bigint::BigInt;
use num::BigUint;

use wreathkit::combinat::WreathElement;
use wreathkit::exactnum::Cyclotomic;
use wreathkit::linalg;
use wreathkit::orlik_solomon::Arrangement;
use wreathkit::wreathchar::{classes, ClassFunction};

/// Poincare polynomial by deletion-restriction on raw form lists:
/// `pi(A) = pi(A \ H) + t * pi(A restricted to H)`.
pub fn deletion_restriction_poincare(forms: &[Vec<Cyclotomic>], order: u32) -> Vec<BigUint> {
    if forms.is_empty() {
        return vec![BigUint::from(1u32)];
    }
    let (h, rest) = forms.split_last().unwrap();
    let deleted = deletion_restriction_poincare(rest, order);

    // restriction: forms of A \ H pulled back to a basis of ker(h), then
    // normalized and deduplicated
    let kernel = linalg::kernel(std::slice::from_ref(h), h.len(), order);
    let mut restricted: Vec<Vec<Cyclotomic>> = Vec::new();
    for f in rest {
        let mut vec: Vec<Cyclotomic> = kernel
            .iter()
            .map(|k| {
                let mut acc = Cyclotomic::zero(order);
                for (a, b) in f.iter().zip(k.iter()) {
                    acc = &acc + &(a * b);
                }
                acc
            })
            .collect();
        if vec.iter().all(|c| c.is_zero()) {
            continue;
        }
        let lead = vec.iter().find(|c| !c.is_zero()).unwrap().clone();
        let inv = lead.inverse().unwrap();
        for c in vec.iter_mut() {
            *c = &*c * &inv;
        }
        if !restricted.contains(&vec) {
            restricted.push(vec);
        }
    }
    let contracted = deletion_restriction_poincare(&restricted, order);

    let mut out = deleted;
    for (k, c) in contracted.into_iter().enumerate() {
        if out.len() <= k + 1 {
            out.resize(k + 2, BigUint::from(0u32));
        }
        out[k + 1] += c;
    }
    out
}

pub fn arrangement_forms(arr: &Arrangement) -> Vec<Vec<Cyclotomic>> {
    arr.hyperplanes()
        .iter()
        .map(|h| h.coeffs().to_vec())
        .collect()
}

/// Arnold-basis oracle for `H^k(Conf_n(C))`, k <= 2: basis monomials are
/// products of `w_(i,j)` (i < j) with distinct larger indices; a permutation
/// acts by relabeling, and same-max products are rewritten by the braid
/// three-term relation.
pub fn arnold_character(n: u32, k: usize) -> ClassFunction {
    assert!(k <= 2);
    ClassFunction::from_fn(1, n, |t| {
        let w = wreathkit::combinat::representative(t);
        Cyclotomic::from_bigint(1, arnold_trace(&w, n, k))
    })
}

fn arnold_trace(w: &WreathElement, n: u32, k: usize) -> BigInt {
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    match k {
        0 => BigInt::from(1),
        1 => {
            let mut fixed = 0i64;
            for &(i, j) in &pairs {
                if sorted_pair(w.apply(i), w.apply(j)) == (i, j) {
                    fixed += 1;
                }
            }
            BigInt::from(fixed)
        }
        2 => {
            let mut total = BigInt::from(0);
            for &(i1, j1) in &pairs {
                for &(i2, j2) in &pairs {
                    if j2 <= j1 {
                        continue;
                    }
                    let b = ((i1, j1), (i2, j2));
                    let p = sorted_pair(w.apply(i1), w.apply(j1));
                    let q = sorted_pair(w.apply(i2), w.apply(j2));
                    total += diagonal_coefficient(p, q, b);
                }
            }
            total
        }
        _ => unreachable!(),
    }
}

fn sorted_pair(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Coefficient of the basis element `b` (pairs with distinct maxima, sorted
/// by maximum) in the straightened product `w_p ^ w_q`.
fn diagonal_coefficient(p: (u32, u32), q: (u32, u32), b: ((u32, u32), (u32, u32))) -> BigInt {
    if p == q {
        return BigInt::from(0);
    }
    if p.1 == q.1 {
        // same maximum c: w_(a,c) ^ w_(b,c) = w_(a,b) ^ w_(b,c) - w_(a,b) ^ w_(a,c)
        let c = p.1;
        let (a0, b0) = (p.0, q.0);
        let (a, bb, sign) = if a0 < b0 {
            (a0, b0, 1i64)
        } else {
            (b0, a0, -1i64)
        };
        let term1 = ((a, bb), (bb, c));
        let term2 = ((a, bb), (a, c));
        let mut coeff = 0i64;
        if term1 == b {
            coeff += sign;
        }
        if term2 == b {
            coeff -= sign;
        }
        BigInt::from(coeff)
    } else {
        let (first, second, sign) = if p.1 < q.1 { (p, q, 1i64) } else { (q, p, -1i64) };
        if (first, second) == b {
            BigInt::from(sign)
        } else {
            BigInt::from(0)
        }
    }
}

/// Block embedding `W_m x W_(n-m) -> W_n`.
pub fn embed(u: &WreathElement, v: &WreathElement) -> WreathElement {
    let m = u.n();
    let mut sigma: Vec<u32> = u.sigma().to_vec();
    sigma.extend(v.sigma().iter().map(|&s| s + m));
    let mut labels: Vec<u32> = u.labels().to_vec();
    labels.extend_from_slice(v.labels());
    WreathElement::new(u.d(), sigma, labels)
}

/// `<V (x) triv, Res chi>` over `W_m x W_(n-m)`, by brute-force element
/// enumeration.
pub fn restricted_inner_product(
    v: &ClassFunction,
    chi: &ClassFunction,
    m: u32,
) -> Cyclotomic {
    let d = v.d();
    let n = chi.n();
    let us = wreathkit::combinat::enumerate_elements(d, m);
    let vs = wreathkit::combinat::enumerate_elements(d, n - m);
    let mut acc = Cyclotomic::zero(d);
    for u in &us {
        let vu = v.value(&u.cycle_type()).clone();
        if vu.is_zero() {
            continue;
        }
        for w in &vs {
            let big = embed(u, w);
            let cv = chi.value(&big.cycle_type());
            acc = &acc + &(&vu * &cv.conjugate());
        }
    }
    let total = wreathkit::combinat::group_order(d, m) * wreathkit::combinat::group_order(d, n - m);
    &acc * &Cyclotomic::from_rational(
        d,
        wreathkit::exactnum::Rational::new(BigInt::from(1), total),
    )
}

/// Brute-force class sizes keyed by class index, for column-orthogonality
/// style checks.
pub fn brute_force_centralizers(d: u32, n: u32) -> Vec<BigInt> {
    let list = classes(d, n);
    let index = wreathkit::wreathchar::class_index(d, n);
    let mut counts = vec![0u64; list.len()];
    for w in wreathkit::combinat::enumerate_elements(d, n) {
        counts[index[&w.cycle_type()]] += 1;
    }
    let order = wreathkit::combinat::group_order(d, n);
    counts
        .into_iter()
        .map(|c| &order / BigInt::from(c))
        .collect()
}
