//! Orlik-Solomon algebras of central arrangements over `Q(zeta_d)`:
//! circuits by exact rank computation, no-broken-circuit bases,
//! straightening onto the NBC basis, Poincare polynomials, and equivariant
//! characters of the monomial (full reflection) arrangement under `W_n`.
//!
//! Hyperplane order is fixed at construction (coordinate hyperplanes first,
//! then differences lexicographically); NBC data depends on that order, and
//! traces are order-independent, which the tests exercise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::{BigUint, One, Zero};
use thiserror::Error;

use crate::combinat::{representative, WreathElement};
use crate::exactnum::{zeta, Cyclotomic};
use crate::exec;
use crate::linalg;
use crate::wreathchar::ClassFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OsError {
    #[error("arrangement does not carry hyperplane labels for a group action")]
    ArrangementShape,
    #[error("degree {0} exceeds the arrangement rank {1}")]
    DegreeRange(usize, usize),
}

/// A hyperplane as a normalized linear form: the first nonzero coefficient
/// is 1, so equality of hyperplanes is equality of forms.
#[derive(Clone, PartialEq, Eq)]
pub struct Hyperplane {
    coeffs: Vec<Cyclotomic>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Cyclotomic>) -> Self {
        let mut h = Hyperplane { coeffs };
        h.normalize();
        h
    }

    fn normalize(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .expect("hyperplane form must be nonzero")
            .clone();
        if !lead.is_one() {
            let inv = lead.inverse().expect("nonzero");
            for c in self.coeffs.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Combinatorial identity of a hyperplane in a reflection arrangement,
/// used to transport the group action. Indices are 0-based with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HyperplaneKind {
    /// `v_i = 0`
    Coordinate(u32),
    /// `v_i = zeta^a v_j`
    Difference { i: u32, a: u32, j: u32 },
}

impl HyperplaneKind {
    pub fn name(&self) -> String {
        match self {
            HyperplaneKind::Coordinate(i) => format!("z_{}", i + 1),
            HyperplaneKind::Difference { i, a, j } => format!("e_{{{},{},{}}}", i + 1, a, j + 1),
        }
    }
}

/// An ordered central arrangement in `C^n` over `Q(zeta_d)`.
#[derive(Clone)]
pub struct Arrangement {
    d: u32,
    n: u32,
    hyperplanes: Vec<Hyperplane>,
    kinds: Option<Vec<HyperplaneKind>>,
}

impl Arrangement {
    pub fn new(d: u32, n: u32, hyperplanes: Vec<Hyperplane>) -> Self {
        let mut seen: Vec<&Hyperplane> = Vec::new();
        for h in &hyperplanes {
            assert!(h.coeffs.len() == n as usize);
            assert!(!seen.contains(&h), "hyperplanes must be distinct");
            seen.push(h);
        }
        Arrangement {
            d,
            n,
            hyperplanes,
            kinds: None,
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn kinds(&self) -> Option<&[HyperplaneKind]> {
        self.kinds.as_deref()
    }

    /// Rank of the set of forms.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Cyclotomic>> = self
            .hyperplanes
            .iter()
            .map(|h| h.coeffs.to_vec())
            .collect();
        linalg::rank(&rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hyps: Vec<serde_json::Value> = self
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(idx, h)| {
                let coeffs: Vec<serde_json::Value> =
                    h.coeffs.iter().map(|c| c.to_json()).collect();
                let name = self
                    .kinds
                    .as_ref()
                    .map(|k| k[idx].name())
                    .unwrap_or_else(|| format!("H_{idx}"));
                serde_json::json!({"name": name, "coeffs": coeffs})
            })
            .collect();
        serde_json::json!({"d": self.d, "n": self.n, "hyperplanes": hyps})
    }
}

/// The full monomial (complex reflection) arrangement: `v_i = 0` for each i
/// and `v_i = zeta^a v_j` for `i < j`, `0 <= a < d`. Coordinate hyperplanes
/// come first, then differences in lexicographic `(i, j, a)` order.
pub fn monomial_arrangement(d: u32, n: u32) -> Arrangement {
    assert!(d >= 1 && n >= 1);
    let mut hyperplanes = Vec::new();
    let mut kinds = Vec::new();
    for i in 0..n {
        let mut coeffs = vec![Cyclotomic::zero(d); n as usize];
        coeffs[i as usize] = Cyclotomic::one(d);
        hyperplanes.push(Hyperplane::new(coeffs));
        kinds.push(HyperplaneKind::Coordinate(i));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for a in 0..d {
                let mut coeffs = vec![Cyclotomic::zero(d); n as usize];
                coeffs[i as usize] = Cyclotomic::one(d);
                coeffs[j as usize] = -&zeta(d, a as i64);
                hyperplanes.push(Hyperplane::new(coeffs));
                kinds.push(HyperplaneKind::Difference { i, a, j });
            }
        }
    }
    let mut arr = Arrangement::new(d, n, hyperplanes);
    arr.kinds = Some(kinds);
    arr
}

/// The braid arrangement `v_i = v_j` in `C^n`, over `Q` (d = 1).
pub fn braid_arrangement(n: u32) -> Arrangement {
    assert!(n >= 2);
    let mut hyperplanes = Vec::new();
    let mut kinds = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut coeffs = vec![Cyclotomic::zero(1); n as usize];
            coeffs[i as usize] = Cyclotomic::one(1);
            coeffs[j as usize] = Cyclotomic::from_integer(1, -1);
            hyperplanes.push(Hyperplane::new(coeffs));
            kinds.push(HyperplaneKind::Difference { i, a: 0, j });
        }
    }
    let mut arr = Arrangement::new(1, n, hyperplanes);
    arr.kinds = Some(kinds);
    arr
}

fn subset_rank(arr: &Arrangement, subset: &[u32]) -> usize {
    let rows: Vec<Vec<Cyclotomic>> = subset
        .iter()
        .map(|&h| arr.hyperplanes[h as usize].coeffs.to_vec())
        .collect();
    linalg::rank(&rows)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for x in start..=(n - needed) {
            current.push(x as u32);
            rec(n, k, x + 1, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut current, &mut out);
    }
    out
}

fn contains_sorted(haystack: &[u32], needle: &[u32]) -> bool {
    let mut it = haystack.iter();
    'outer: for x in needle {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// All circuits (minimal dependent subsets) of size at most `max_size`,
/// found by exact rank computation. Distinct normalized forms are pairwise
/// independent, so circuits have size at least 3.
pub fn circuits_up_to(arr: &Arrangement, max_size: usize) -> Vec<Vec<u32>> {
    let n = arr.len();
    let mut circuits: Vec<Vec<u32>> = Vec::new();
    for size in 3..=max_size.min(n) {
        let candidates: Vec<Vec<u32>> = k_subsets(n, size)
            .into_iter()
            .filter(|s| !circuits.iter().any(|c| contains_sorted(s, c)))
            .collect();
        let dependent = exec::map(&candidates[..], |s| subset_rank(arr, s) < s.len());
        for (s, dep) in candidates.into_iter().zip(dependent) {
            if dep {
                circuits.push(s);
            }
        }
    }
    circuits
}

/// All circuits of the arrangement (sizes up to rank + 1).
pub fn circuits(arr: &Arrangement) -> Vec<Vec<u32>> {
    circuits_up_to(arr, arr.rank() + 1)
}

/// The degree-k piece of the Orlik-Solomon algebra: NBC basis plus a
/// straightening table from arbitrary k-subsets onto it.
pub struct OsAlgebra {
    arr: Arrangement,
    k: usize,
    /// broken circuits of size <= k, each paired with the minimal element
    /// of its circuit, grouped by their maximal element
    broken_by_max: Vec<Vec<(Vec<u32>, u32)>>,
    nbc: Vec<Vec<u32>>,
    nbc_index: HashMap<Vec<u32>, usize>,
}

/// Sparse straightened form of a monomial: NBC indices with integer
/// coefficients.
pub type Expansion = Vec<(usize, BigInt)>;

impl OsAlgebra {
    pub fn new(arr: &Arrangement, k: usize) -> Result<Self, OsError> {
        let rank = arr.rank();
        if k > rank {
            return Err(OsError::DegreeRange(k, rank));
        }
        let circs = circuits_up_to(arr, k + 1);
        let mut broken_by_max: Vec<Vec<(Vec<u32>, u32)>> = vec![Vec::new(); arr.len()];
        for c in &circs {
            let min = c[0];
            let bc: Vec<u32> = c[1..].to_vec();
            if bc.len() <= k {
                let max = *bc.last().unwrap() as usize;
                broken_by_max[max].push((bc, min));
            }
        }
        let nbc = nbc_subsets(arr.len(), k, &broken_by_max);
        let nbc_index = nbc
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(OsAlgebra {
            arr: arr.clone(),
            k,
            broken_by_max,
            nbc,
            nbc_index,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn nbc(&self) -> &[Vec<u32>] {
        &self.nbc
    }

    pub fn nbc_index(&self) -> &HashMap<Vec<u32>, usize> {
        &self.nbc_index
    }

    fn find_broken_circuit(&self, mono: &[u32]) -> Option<(&[u32], u32)> {
        for &h in mono {
            for (bc, min) in &self.broken_by_max[h as usize] {
                if contains_sorted(mono, bc) {
                    return Some((bc, *min));
                }
            }
        }
        None
    }

    /// Straighten the wedge monomial onto the NBC basis. `mono` must be a
    /// sorted set of distinct indices of size k.
    pub fn expansion(&self, mono: &[u32], cache: &mut HashMap<Vec<u32>, Expansion>) -> Expansion {
        if let Some(e) = cache.get(mono) {
            return e.clone();
        }
        let result = match self.find_broken_circuit(mono) {
            None => vec![(self.nbc_index[mono], BigInt::one())],
            Some((bc, min)) => {
                // circuit relation: e_B = sum_t (-1)^(t+1) e_(C \ c_t) with
                // C = {min} u B sorted, c_0 = min
                let bc = bc.to_vec();
                let mut circuit = vec![min];
                circuit.extend_from_slice(&bc);
                // sign of extracting B from mono as a trailing block:
                // e_mono = sign * e_(mono \ B) ^ e_B
                let rest: Vec<u32> = mono.iter().copied().filter(|x| !bc.contains(x)).collect();
                let base_sign = interleave_sign(&rest, &bc);
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for t in 1..circuit.len() {
                    let replacement: Vec<u32> = circuit
                        .iter()
                        .enumerate()
                        .filter(|&(s, _)| s != t)
                        .map(|(_, &x)| x)
                        .collect();
                    if replacement.iter().any(|x| rest.contains(x)) {
                        continue;
                    }
                    let term_sign = if (t + 1) % 2 == 0 { 1i64 } else { -1i64 };
                    let sign = base_sign * term_sign * interleave_sign(&rest, &replacement);
                    let mut merged: Vec<u32> = rest.clone();
                    merged.extend_from_slice(&replacement);
                    merged.sort_unstable();
                    for (idx, coeff) in self.expansion(&merged, cache) {
                        let e = acc.entry(idx).or_insert_with(BigInt::zero);
                        *e += coeff * BigInt::from(sign);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        cache.insert(mono.to_vec(), result.clone());
        result
    }

    /// Straightening table for every sorted k-subset of the hyperplanes.
    pub fn full_expansion_table(&self) -> HashMap<Vec<u32>, Expansion> {
        let mut cache = HashMap::new();
        for s in k_subsets(self.arr.len(), self.k) {
            self.expansion(&s, &mut cache);
        }
        cache
    }

    /// Trace of the algebra map induced by a permutation of the hyperplanes
    /// on the degree-k piece, using a prebuilt expansion table.
    pub fn trace(&self, perm: &[u32], table: &HashMap<Vec<u32>, Expansion>) -> BigInt {
        let mut total = BigInt::zero();
        for (idx, mono) in self.nbc.iter().enumerate() {
            let mut image: Vec<u32> = mono.iter().map(|&h| perm[h as usize]).collect();
            let sign = sort_sign(&mut image);
            if sign == 0 {
                continue;
            }
            for (j, coeff) in &table[&image] {
                if *j == idx {
                    total += coeff * BigInt::from(sign);
                }
            }
        }
        total
    }
}

/// Sign of the permutation sorting `left ++ right` into ascending order,
/// where `left` and `right` are each sorted and disjoint.
fn interleave_sign(left: &[u32], right: &[u32]) -> i64 {
    let mut inversions = 0usize;
    for &r in right {
        inversions += left.iter().filter(|&&l| l > r).count();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sort in place, returning the permutation sign, or 0 on a repeated entry.
fn sort_sign(v: &mut [u32]) -> i64 {
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

fn nbc_subsets(n: usize, k: usize, broken_by_max: &[Vec<(Vec<u32>, u32)>]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        broken_by_max: &[Vec<(Vec<u32>, u32)>],
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for x in start..=(n - needed) {
            current.push(x as u32);
            let ok = broken_by_max[x]
                .iter()
                .all(|(bc, _)| !contains_sorted(current, bc));
            if ok {
                rec(n, k, x + 1, broken_by_max, current, out);
            }
            current.pop();
        }
    }
    rec(n, k, 0, broken_by_max, &mut current, &mut out);
    out
}

/// The no-broken-circuit basis of the degree-k piece.
pub fn nbc_basis(arr: &Arrangement, k: usize) -> Result<Vec<Vec<u32>>, OsError> {
    Ok(OsAlgebra::new(arr, k)?.nbc.clone())
}

/// Poincare polynomial: coefficient of `t^k` is the NBC count in degree k.
pub fn poincare_polynomial(arr: &Arrangement) -> Vec<BigUint> {
    let rank = arr.rank();
    let circs = circuits(arr);
    let mut broken_by_max: Vec<Vec<(Vec<u32>, u32)>> = vec![Vec::new(); arr.len()];
    for c in &circs {
        let bc: Vec<u32> = c[1..].to_vec();
        let max = *bc.last().unwrap() as usize;
        broken_by_max[max].push((bc, c[0]));
    }
    (0..=rank)
        .map(|k| BigUint::from(nbc_subsets(arr.len(), k, &broken_by_max).len()))
        .collect()
}

/// An element of the Orlik-Solomon algebra in a single degree: cyclotomic
/// coordinates on sorted index sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OSElement {
    d: u32,
    degree: usize,
    coords: BTreeMap<Vec<u32>, Cyclotomic>,
}

impl OSElement {
    pub fn new(d: u32, degree: usize) -> Self {
        OSElement {
            d,
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BTreeMap<Vec<u32>, Cyclotomic> {
        &self.coords
    }

    pub fn add_term(&mut self, mono: Vec<u32>, coeff: Cyclotomic) {
        assert_eq!(mono.len(), self.degree);
        assert!(mono.windows(2).all(|w| w[0] < w[1]), "sorted distinct indices");
        if coeff.is_zero() {
            return;
        }
        match self.coords.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

/// Rewrite an element onto the NBC basis of its degree.
pub fn straighten(arr: &Arrangement, x: &OSElement) -> Result<OSElement, OsError> {
    let algebra = OsAlgebra::new(arr, x.degree())?;
    let mut cache = HashMap::new();
    let mut out = OSElement::new(x.d, x.degree());
    for (mono, coeff) in &x.coords {
        for (idx, int) in algebra.expansion(mono, &mut cache) {
            out.add_term(
                algebra.nbc[idx].clone(),
                coeff * &Cyclotomic::from_bigint(x.d, int),
            );
        }
    }
    Ok(out)
}

/// Permutation of the hyperplane indices of a monomial arrangement induced
/// by a wreath element: `z_i -> z_(sigma i)` and
/// `e_(i,a,j) -> e_(sigma i, a - b_i + b_j, sigma j)`, renormalized to the
/// `i < j` representative via `e_(i,a,j) = e_(j,-a,i)`.
pub fn wreath_action_on_hyperplanes(
    arr: &Arrangement,
    w: &WreathElement,
) -> Result<Vec<u32>, OsError> {
    let kinds = arr.kinds().ok_or(OsError::ArrangementShape)?;
    let d = arr.d() as i64;
    let index: HashMap<HyperplaneKind, u32> = kinds
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i as u32))
        .collect();
    let mut perm = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let image = match *kind {
            HyperplaneKind::Coordinate(i) => HyperplaneKind::Coordinate(w.apply(i)),
            HyperplaneKind::Difference { i, a, j } => {
                let si = w.apply(i);
                let sj = w.apply(j);
                let bi = w.labels()[i as usize] as i64;
                let bj = w.labels()[j as usize] as i64;
                let a2 = (a as i64 - bi + bj).rem_euclid(d) as u32;
                if si < sj {
                    HyperplaneKind::Difference { i: si, a: a2, j: sj }
                } else {
                    HyperplaneKind::Difference {
                        i: sj,
                        a: (d as u32 - a2) % d as u32,
                        j: si,
                    }
                }
            }
        };
        perm.push(*index.get(&image).ok_or(OsError::ArrangementShape)?);
    }
    Ok(perm)
}

/// Character of `W_n` acting on the degree-k Orlik-Solomon piece of the
/// monomial arrangement, i.e. on `H^k` of the arrangement complement. One
/// representative per class; the trace runs over the NBC basis with
/// straightened images.
pub fn equivariant_character(d: u32, n: u32, k: usize) -> Result<ClassFunction, OsError> {
    let arr = monomial_arrangement(d, n);
    os_character(&arr, d, n, k)
}

/// Equivariant character of any labeled arrangement carried by `W_n`.
pub fn os_character(arr: &Arrangement, d: u32, n: u32, k: usize) -> Result<ClassFunction, OsError> {
    let algebra = OsAlgebra::new(arr, k)?;
    let table = algebra.full_expansion_table();
    let list = crate::wreathchar::classes(d, n);
    let values = exec::map(&list[..], |t| {
        let w = representative(t);
        let perm = wreath_action_on_hyperplanes(arr, &w).expect("labeled arrangement");
        Cyclotomic::from_bigint(d, algebra.trace(&perm, &table))
    });
    Ok(ClassFunction::from_values(d, n, values))
}
