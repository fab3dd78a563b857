//! Partitions, d-multipartitions, labeled cycle types, and brute-force
//! wreath-group elements of `W_n = (Z/d) wr S_n`.
//!
//! All enumeration orders are fixed: partitions are listed in reverse
//! lexicographic order, multipartitions by descending size of the slot-0
//! partition (then recursively), and labeled cycle types by underlying
//! partition with label multisets distributed in ascending order. JSON
//! output is therefore reproducible byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("cannot pad {0} to n={1}: need n >= |lambda| + first part of the trivial slot")]
    PadRange(String, u32),
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p >= 1),
            "parts must be weakly decreasing and positive"
        );
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `r`.
    pub fn count_part(&self, r: u32) -> u32 {
        self.0.iter().filter(|&&p| p == r).count() as u32
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n` in reverse lexicographic order:
/// `(n)`, ..., `(1,1,...,1)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// A d-tuple of partitions; slot `j` belongs to the character `c -> zeta_d^(jc)`
/// of `Z/d`, with slot 0 the trivial character.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPartition {
    d: u32,
    parts: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(d: u32, parts: Vec<Partition>) -> Self {
        assert!(d >= 1 && parts.len() == d as usize);
        MultiPartition { d, parts }
    }

    pub fn empty(d: u32) -> Self {
        MultiPartition {
            d,
            parts: vec![Partition::empty(); d as usize],
        }
    }

    /// Multipartition supported on a single slot.
    pub fn single(d: u32, slot: u32, p: Partition) -> Self {
        let mut parts = vec![Partition::empty(); d as usize];
        parts[slot as usize] = p;
        MultiPartition { d, parts }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn slot(&self, j: u32) -> &Partition {
        &self.parts[j as usize]
    }

    pub fn slots(&self) -> &[Partition] {
        &self.parts
    }

    /// Total size `sum_j |lambda(chi_j)|`.
    pub fn norm(&self) -> u32 {
        self.parts.iter().map(|p| p.size()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.parts.iter().map(|p| p.to_json()).collect())
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All d-multipartitions of total size `n`. Slot sizes are chosen with the
/// earlier slots taking the larger share first, each slot running through
/// `enumerate_partitions` order.
pub fn enumerate_multipartitions(d: u32, n: u32) -> Vec<MultiPartition> {
    fn rec(d: u32, slot: usize, remaining: u32, prefix: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
        if slot == d as usize - 1 {
            for p in enumerate_partitions(remaining) {
                prefix.push(p);
                out.push(MultiPartition {
                    d,
                    parts: prefix.clone(),
                });
                prefix.pop();
            }
            return;
        }
        for m in (0..=remaining).rev() {
            for p in enumerate_partitions(m) {
                prefix.push(p);
                rec(d, slot + 1, remaining - m, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Pad a multipartition to total size `n` by prepending `n - |lambda|` as a
/// new first part of the trivial slot.
pub fn pad(lambda: &MultiPartition, n: u32) -> Result<MultiPartition, CombinatError> {
    let m = lambda.norm();
    let head = lambda.slot(0).first_part();
    if n < m || n - m < head {
        return Err(CombinatError::PadRange(lambda.to_string(), n));
    }
    let mut parts = lambda.parts.clone();
    if n - m > 0 {
        let mut p = vec![n - m];
        p.extend_from_slice(parts[0].parts());
        parts[0] = Partition::new(p);
    }
    Ok(MultiPartition {
        d: lambda.d,
        parts,
    })
}

/// Inverse of [`pad`]: strip the first part of the trivial slot. Returns the
/// stable label `r` with `pad(r, n) == lambda`, if one exists.
pub fn unpad(lambda: &MultiPartition, n: u32) -> Option<MultiPartition> {
    debug_assert_eq!(lambda.norm(), n);
    let mut parts = lambda.parts.clone();
    if !parts[0].is_empty() {
        parts[0] = Partition(parts[0].parts()[1..].to_vec());
    }
    let candidate = MultiPartition {
        d: lambda.d,
        parts,
    };
    match pad(&candidate, n) {
        Ok(padded) if padded == *lambda => Some(candidate),
        _ => None,
    }
}

/// A conjugacy class of `W_n`: multiset of (cycle length, label in `Z/d`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledCycleType {
    d: u32,
    n: u32,
    mult: BTreeMap<(u32, u32), u32>,
}

impl LabeledCycleType {
    pub fn new(d: u32, mult: BTreeMap<(u32, u32), u32>) -> Self {
        assert!(d >= 1);
        let n = mult.iter().map(|(&(i, _), &m)| i * m).sum();
        assert!(mult.iter().all(|(&(i, c), &m)| i >= 1 && c < d && m >= 1));
        LabeledCycleType { d, n, mult }
    }

    /// The identity class of `W_n`.
    pub fn identity(d: u32, n: u32) -> Self {
        let mut mult = BTreeMap::new();
        if n > 0 {
            mult.insert((1, 0), n);
        }
        LabeledCycleType { d, n, mult }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0 || (self.mult.len() == 1 && self.mult.contains_key(&(1, 0)))
    }

    /// Multiplicity of `(length, label)`, 0 if absent.
    pub fn mult(&self, i: u32, c: u32) -> u32 {
        self.mult.get(&(i, c)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.mult.iter().map(|(&(i, c), &m)| (i, c, m))
    }

    /// Underlying partition of `n`, forgetting labels.
    pub fn shape(&self) -> Partition {
        let mut parts: Vec<u32> = Vec::new();
        for (&(i, _), &m) in &self.mult {
            for _ in 0..m {
                parts.push(i);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Sum of `label * multiplicity` over all cycles, mod d.
    pub fn label_weight(&self) -> u32 {
        let mut w: u64 = 0;
        for (&(_, c), &m) in &self.mult {
            w += c as u64 * m as u64;
        }
        (w % self.d as u64) as u32
    }

    /// Order of the centralizer of any element of this class:
    /// `prod m! * (i*d)^m` over entries `(i, c) -> m`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (&(i, _), &m) in &self.mult {
            acc *= factorial(m);
            acc *= BigInt::from(i as u64 * self.d as u64).pow(m);
        }
        acc
    }

    /// Size of the class, `|W_n| / centralizer`.
    pub fn class_size(&self) -> BigInt {
        group_order(self.d, self.n) / self.centralizer_order()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .mult
            .iter()
            .map(|(&(i, c), &m)| serde_json::json!({"i": i, "c": c, "m": m}))
            .collect();
        serde_json::Value::Array(items)
    }
}

impl fmt::Display for LabeledCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (k, (&(i, c), &m)) in self.mult.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}^{m}@{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for LabeledCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k as u64 {
        acc *= BigInt::from(n as u64 - t);
        acc /= BigInt::from(t + 1);
    }
    acc
}

/// `|W_n| = d^n * n!`.
pub fn group_order(d: u32, n: u32) -> BigInt {
    BigInt::from(d as u64).pow(n) * factorial(n)
}

/// All labeled cycle types of `W_n`, in a fixed deterministic order: grouped
/// by underlying partition (reverse-lex), with label multisets per cycle
/// length distributed in ascending lexicographic order.
pub fn enumerate_classes(d: u32, n: u32) -> Vec<LabeledCycleType> {
    if n == 0 {
        return vec![LabeledCycleType::identity(d, 0)];
    }
    // weakly increasing label tuples of given length over 0..d
    fn label_multisets(d: u32, len: u32) -> Vec<Vec<u32>> {
        fn rec(d: u32, len: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if len == 0 {
                out.push(prefix.clone());
                return;
            }
            for c in min..d {
                prefix.push(c);
                rec(d, len - 1, c, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, len, 0, &mut Vec::new(), &mut out);
        out
    }

    let mut out = Vec::new();
    for shape in enumerate_partitions(n) {
        // distinct lengths with their multiplicities, descending length
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for &p in shape.parts() {
            match groups.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => groups.push((p, 1)),
            }
        }
        let choices: Vec<Vec<Vec<u32>>> = groups
            .iter()
            .map(|&(_, m)| label_multisets(d, m))
            .collect();
        let mut idx = vec![0usize; groups.len()];
        'shape: loop {
            let mut mult: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for (g, &(len, _)) in groups.iter().enumerate() {
                for &c in &choices[g][idx[g]] {
                    *mult.entry((len, c)).or_insert(0) += 1;
                }
            }
            out.push(LabeledCycleType {
                d,
                n,
                mult,
            });
            // odometer increment, last group fastest
            let mut g = groups.len();
            loop {
                if g == 0 {
                    break 'shape;
                }
                g -= 1;
                idx[g] += 1;
                if idx[g] < choices[g].len() {
                    continue 'shape;
                }
                idx[g] = 0;
            }
        }
    }
    out
}

/// An element of `W_n`: a permutation in one-line form together with a label
/// in `Z/d` at every point.
///
/// `compose(w1, w2)` applies `w2` first and `w1` second (function order), so
/// labels compose along the map as in the wreath-product group law.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    d: u32,
    sigma: Vec<u32>,
    labels: Vec<u32>,
}

impl WreathElement {
    pub fn new(d: u32, sigma: Vec<u32>, labels: Vec<u32>) -> Self {
        assert_eq!(sigma.len(), labels.len());
        assert!(labels.iter().all(|&c| c < d));
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            assert!((s as usize) < n && !seen[s as usize], "not a permutation");
            seen[s as usize] = true;
        }
        WreathElement { d, sigma, labels }
    }

    pub fn identity(d: u32, n: u32) -> Self {
        WreathElement {
            d,
            sigma: (0..n).collect(),
            labels: vec![0; n as usize],
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.sigma.len() as u32
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.sigma[i as usize]
    }

    pub fn inverse(&self) -> WreathElement {
        let n = self.sigma.len();
        let mut sigma = vec![0u32; n];
        let mut labels = vec![0u32; n];
        for i in 0..n {
            let j = self.sigma[i] as usize;
            sigma[j] = i as u32;
            labels[j] = (self.d - self.labels[i]) % self.d;
        }
        WreathElement {
            d: self.d,
            sigma,
            labels,
        }
    }

    /// For each cycle of the permutation, the sum of all labels along the
    /// cycle, collected into a labeled cycle type.
    pub fn cycle_type(&self) -> LabeledCycleType {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut mult: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut label = 0u32;
            let mut p = start;
            loop {
                seen[p] = true;
                len += 1;
                label = (label + self.labels[p]) % self.d;
                p = self.sigma[p] as usize;
                if p == start {
                    break;
                }
            }
            *mult.entry((len, label)).or_insert(0) += 1;
        }
        LabeledCycleType {
            d: self.d,
            n: n as u32,
            mult,
        }
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {:?})", self.sigma, self.labels)
    }
}

/// Group law of `W_n` in function order: `compose(w1, w2)` is "apply `w2`,
/// then `w1`".
pub fn compose(w1: &WreathElement, w2: &WreathElement) -> WreathElement {
    assert_eq!(w1.d, w2.d);
    assert_eq!(w1.sigma.len(), w2.sigma.len());
    let n = w1.sigma.len();
    let mut sigma = vec![0u32; n];
    let mut labels = vec![0u32; n];
    for i in 0..n {
        let mid = w2.sigma[i] as usize;
        sigma[i] = w1.sigma[mid];
        labels[i] = (w2.labels[i] + w1.labels[mid]) % w1.d;
    }
    WreathElement {
        d: w1.d,
        sigma,
        labels,
    }
}

/// Every element of `W_n`; for small brute-force oracles only.
pub fn enumerate_elements(d: u32, n: u32) -> Vec<WreathElement> {
    fn perms(n: usize) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q: Vec<u32> = p.clone();
                q.insert(pos, (n - 1) as u32);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    let total_labels = (d as u64).pow(n);
    for sigma in perms(n as usize) {
        for code in 0..total_labels {
            let mut labels = Vec::with_capacity(n as usize);
            let mut c = code;
            for _ in 0..n {
                labels.push((c % d as u64) as u32);
                c /= d as u64;
            }
            out.push(WreathElement {
                d,
                sigma: sigma.clone(),
                labels,
            });
        }
    }
    out
}

/// A deterministic representative of a conjugacy class: cycles laid out on
/// consecutive points in `(i, c)` order, with the whole label placed on the
/// first point of each cycle.
pub fn representative(t: &LabeledCycleType) -> WreathElement {
    let n = t.n() as usize;
    let mut sigma = vec![0u32; n];
    let mut labels = vec![0u32; n];
    let mut p = 0usize;
    for (i, c, m) in t.entries() {
        for _ in 0..m {
            let start = p;
            for s in 0..i as usize {
                sigma[start + s] = if s + 1 < i as usize {
                    (start + s + 1) as u32
                } else {
                    start as u32
                };
            }
            labels[start] = c;
            p += i as usize;
        }
    }
    WreathElement {
        d: t.d(),
        sigma,
        labels,
    }
}
