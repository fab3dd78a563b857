//! Graded and multigraded pieces of the diagonal coinvariant algebra
//! `C^(r)(n) = k[V_n^(+r)] / I_n` for `W_n = (Z/d) wr S_n`, by exact linear
//! algebra: Reynolds averaging for invariants, row reduction for the ideal,
//! and traces on the quotient for equivariant characters.

use std::fmt;

use num::bigint::BigInt;
use num::One;
use thiserror::Error;

use crate::combinat::{enumerate_elements, group_order, representative, WreathElement};
use crate::exactnum::{zeta, Cyclotomic};
use crate::exec;
use crate::linalg;
use crate::wreathchar::ClassFunction;

/// Default cap on `|W_n| = d^n n!` for full-group Reynolds averaging.
pub const DEFAULT_GROUP_CAP: u64 = 10_000;

/// Environment override for the group-size cap.
pub const GROUP_CAP_ENV: &str = "WREATHKIT_GROUP_CAP";

/// The configured cap: `WREATHKIT_GROUP_CAP` if set and parseable, else the
/// default.
pub fn group_cap() -> u64 {
    std::env::var(GROUP_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GROUP_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoinvError {
    #[error("group order {order} exceeds the averaging cap {cap} (set {GROUP_CAP_ENV} to raise)")]
    ResourceCap { order: BigInt, cap: u64 },
}

/// An r-tuple of block degrees `(j_1, ..., j_r)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(js: Vec<u32>) -> Self {
        assert!(!js.is_empty());
        MultiDegree(js)
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }

    /// All multidegrees `0 <= J' <= self`, lexicographically.
    pub fn below(&self) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.0.len()];
        loop {
            out.push(MultiDegree(current.clone()));
            let mut pos = self.0.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if current[pos] < self.0[pos] {
                    current[pos] += 1;
                    break;
                }
                current[pos] = 0;
            }
        }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monomial in the variables `x_i^(s)`: exponents indexed by `s*n + i`.
pub type Exponents = Vec<u32>;

/// All monomials of the given multidegree, block 0 outermost, each block in
/// a fixed lexicographic order (leading variable takes the largest share
/// first).
pub fn monomial_basis(n: u32, j: &MultiDegree) -> Vec<Exponents> {
    fn block(n: u32, total: u32) -> Vec<Vec<u32>> {
        fn rec(slots: u32, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if slots == 1 {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=total).rev() {
                prefix.push(e);
                rec(slots - 1, total - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, total, &mut Vec::new(), &mut out);
        out
    }
    let blocks: Vec<Vec<Vec<u32>>> = j.components().iter().map(|&js| block(n, js)).collect();
    let mut out: Vec<Exponents> = vec![Vec::new()];
    for b in blocks {
        let mut next = Vec::with_capacity(out.len() * b.len());
        for prefix in &out {
            for tail in &b {
                let mut e = prefix.clone();
                e.extend_from_slice(tail);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Image of a monomial under a wreath element: `x_i^(s) -> zeta^(c_i)
/// x_(sigma i)^(s)` extended multiplicatively. Returns the image exponent
/// vector and the cyclotomic scalar.
pub fn group_action_on_monomial(
    w: &WreathElement,
    exps: &Exponents,
    n: u32,
) -> (Exponents, Cyclotomic) {
    let d = w.d();
    let r = exps.len() / n as usize;
    let mut image = vec![0u32; exps.len()];
    let mut phase: i64 = 0;
    for i in 0..n as usize {
        let mut total_deg = 0u32;
        for s in 0..r {
            let e = exps[s * n as usize + i];
            image[s * n as usize + w.apply(i as u32) as usize] = e;
            total_deg += e;
        }
        phase += w.labels()[i] as i64 * total_deg as i64;
    }
    (image, zeta(d, phase))
}

/// A subspace of the multidegree-J polynomial space: the monomial basis
/// together with row-reduced coordinate vectors.
#[derive(Debug)]
pub struct PolySpace {
    pub d: u32,
    pub n: u32,
    pub j: MultiDegree,
    /// full monomial basis of the multidegree
    pub monomials: Vec<Exponents>,
    /// row-reduced basis vectors of the subspace, coordinates over `monomials`
    pub basis: Vec<Vec<Cyclotomic>>,
    /// pivot column of each basis row
    pub pivots: Vec<usize>,
}

impl PolySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_cap(d: u32, n: u32, cap: u64) -> Result<(), CoinvError> {
    let order = group_order(d, n);
    if order > BigInt::from(cap) {
        return Err(CoinvError::ResourceCap { order, cap });
    }
    Ok(())
}

/// Basis of the `W_n`-invariant polynomials of multidegree `j`, computed by
/// Reynolds averaging over the whole group followed by row reduction.
pub fn invariant_subspace(
    d: u32,
    n: u32,
    j: &MultiDegree,
    cap: u64,
) -> Result<PolySpace, CoinvError> {
    check_cap(d, n, cap)?;
    let monomials = monomial_basis(n, j);
    let index: std::collections::HashMap<&Exponents, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let elements = enumerate_elements(d, n);
    let rows: Vec<Vec<Cyclotomic>> = exec::map(&monomials[..], |m| {
        let mut row = vec![Cyclotomic::zero(d); monomials.len()];
        for w in &elements {
            let (image, scalar) = group_action_on_monomial(w, m, n);
            let k = index[&image];
            row[k] = &row[k] + &scalar;
        }
        row
    });
    let mut rows = rows;
    let pivots = linalg::rref(&mut rows);
    Ok(PolySpace {
        d,
        n,
        j: j.clone(),
        monomials,
        basis: rows,
        pivots,
    })
}

/// Basis of the multidegree-J piece of the coinvariant ideal `I_n`: the span
/// of `invariant(J') * monomial(J - J')` over all `0 < J' <= J`.
pub fn ideal_subspace(d: u32, n: u32, j: &MultiDegree, cap: u64) -> Result<PolySpace, CoinvError> {
    check_cap(d, n, cap)?;
    let monomials = monomial_basis(n, j);
    let index: std::collections::HashMap<&Exponents, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for jp in j.below() {
        if jp.is_zero() {
            continue;
        }
        let inv = invariant_subspace(d, n, &jp, cap)?;
        if inv.dim() == 0 {
            continue;
        }
        let complement = monomial_basis(n, &j.sub(&jp));
        for vec in &inv.basis {
            for shift in &complement {
                let mut row = vec![Cyclotomic::zero(d); monomials.len()];
                for (m, c) in inv.monomials.iter().zip(vec.iter()) {
                    if c.is_zero() {
                        continue;
                    }
                    let product: Exponents =
                        m.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
                    let k = index[&product];
                    row[k] = &row[k] + c;
                }
                rows.push(row);
            }
        }
    }
    let pivots = linalg::rref(&mut rows);
    Ok(PolySpace {
        d,
        n,
        j: j.clone(),
        monomials,
        basis: rows,
        pivots,
    })
}

/// Dimension of the multidegree-J piece of the coinvariant algebra.
pub fn coinvariant_dimension(
    d: u32,
    n: u32,
    j: &MultiDegree,
    cap: u64,
) -> Result<usize, CoinvError> {
    let ideal = ideal_subspace(d, n, j, cap)?;
    Ok(ideal.monomials.len() - ideal.dim())
}

/// Equivariant character of the multidegree-J piece of the coinvariant
/// algebra: per class, trace on the full monomial space minus the trace of
/// the restriction to the ideal.
pub fn coinvariant_character(
    d: u32,
    n: u32,
    j: &MultiDegree,
    cap: u64,
) -> Result<ClassFunction, CoinvError> {
    let ideal = ideal_subspace(d, n, j, cap)?;
    let index: std::collections::HashMap<&Exponents, usize> = ideal
        .monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let list = crate::wreathchar::classes(d, n);
    let values = exec::map(&list[..], |t| {
        let w = representative(t);
        // trace on the full monomial space
        let mut full = Cyclotomic::zero(d);
        for m in &ideal.monomials {
            let (image, scalar) = group_action_on_monomial(&w, m, n);
            if &image == m {
                full = &full + &scalar;
            }
        }
        // trace on the ideal: with an rref basis, the coefficient of basis
        // vector b_s in any vector of the span is its pivot coordinate
        let mut ideal_trace = Cyclotomic::zero(d);
        for (s, vec) in ideal.basis.iter().enumerate() {
            let mut image_vec = vec![Cyclotomic::zero(d); ideal.monomials.len()];
            for (m, c) in ideal.monomials.iter().zip(vec.iter()) {
                if c.is_zero() {
                    continue;
                }
                let (image, scalar) = group_action_on_monomial(&w, m, n);
                let k = index[&image];
                image_vec[k] = &image_vec[k] + &(c * &scalar);
            }
            ideal_trace = &ideal_trace + &image_vec[ideal.pivots[s]];
            // W-stability of the ideal: the image must reconstruct exactly
            // from pivot coordinates
            let mut residual = image_vec;
            for (t_row, vec2) in ideal.basis.iter().enumerate() {
                let coeff = residual[ideal.pivots[t_row]].clone();
                if coeff.is_zero() {
                    continue;
                }
                for (k, c2) in vec2.iter().enumerate() {
                    let sub = &coeff * c2;
                    residual[k] = &residual[k] - &sub;
                }
            }
            assert!(
                residual.iter().all(|c| c.is_zero()),
                "ideal is not stable under the group action"
            );
        }
        &full - &ideal_trace
    });
    Ok(ClassFunction::from_values(d, n, values))
}

/// Graded dimensions of the r = 1 coinvariant algebra through `max_degree`.
pub fn hilbert_series(
    d: u32,
    n: u32,
    max_degree: u32,
    cap: u64,
) -> Result<Vec<usize>, CoinvError> {
    (0..=max_degree)
        .map(|j| coinvariant_dimension(d, n, &MultiDegree::new(vec![j]), cap))
        .collect()
}

/// Top degree of the r = 1 coinvariant algebra: `sum (d*i - 1)` over
/// `i = 1..n`.
pub fn top_degree(d: u32, n: u32) -> u32 {
    (1..=n).map(|i| d * i - 1).sum()
}

/// Product formula `prod_(i=1..n) (1 + t + ... + t^(d*i - 1))`, the expected
/// Hilbert series of the r = 1 coinvariant algebra of `G(d,1,n)`.
pub fn chevalley_hilbert_series(d: u32, n: u32) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for i in 1..=n {
        let deg = (d * i) as usize;
        let mut next = vec![BigInt::from(0); poly.len() + deg - 1];
        for (k, c) in poly.iter().enumerate() {
            for t in 0..deg {
                next[k + t] += c;
            }
        }
        poly = next;
    }
    poly
}
