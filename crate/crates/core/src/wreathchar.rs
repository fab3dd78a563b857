//! Exact character theory of `W_n = (Z/d) wr S_n`: irreducible characters,
//! inner products, induction from Young-like subgroups, and decomposition
//! into irreducibles.
//!
//! The irreducible `L(lambda)` attached to a d-multipartition is realized as
//! the induced product of one factor per slot, where the slot-`j` factor on
//! `W_m` is the Specht character of `lambda(chi_j)` twisted by the linear
//! character `zeta_d^(j * sum of labels)`. Induced characters are computed
//! by splitting the labeled cycle multiset of a class between the factors,
//! each splitting weighted by a product of binomial coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::combinat::{
    binomial, enumerate_classes, enumerate_multipartitions, representative, LabeledCycleType,
    MultiPartition, Partition,
};
use crate::exactnum::{zeta, Cyclotomic, Rational};
use crate::exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("partition size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
    #[error("multipartition norm {0} does not match n={1}")]
    NormMismatch(u32, u32),
    #[error("class function shape mismatch: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(u32, u32, u32, u32),
    #[error("cannot induce from W_{0} to W_{1}: need n >= m")]
    InduceRange(u32, u32),
    #[error("not a genuine character: multiplicity of {lambda} is {value}")]
    NotACharacter { lambda: String, value: String },
}

static CLASS_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<Vec<LabeledCycleType>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static CLASS_INDEX_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<HashMap<LabeledCycleType, usize>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The conjugacy classes of `W_n`, in the canonical enumeration order,
/// memoized per `(d, n)`.
pub fn classes(d: u32, n: u32) -> Arc<Vec<LabeledCycleType>> {
    if let Some(c) = CLASS_CACHE.lock().unwrap().get(&(d, n)) {
        return c.clone();
    }
    let computed = Arc::new(enumerate_classes(d, n));
    CLASS_CACHE
        .lock()
        .unwrap()
        .entry((d, n))
        .or_insert(computed)
        .clone()
}

/// Index of each class in [`classes`], memoized per `(d, n)`.
pub fn class_index(d: u32, n: u32) -> Arc<HashMap<LabeledCycleType, usize>> {
    if let Some(c) = CLASS_INDEX_CACHE.lock().unwrap().get(&(d, n)) {
        return c.clone();
    }
    let list = classes(d, n);
    let map: HashMap<LabeledCycleType, usize> = list
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let arc = Arc::new(map);
    CLASS_INDEX_CACHE
        .lock()
        .unwrap()
        .entry((d, n))
        .or_insert(arc)
        .clone()
}

/// An exact class function on `W_n`, one cyclotomic value per conjugacy
/// class in the canonical class order.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    d: u32,
    n: u32,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_values(d: u32, n: u32, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), classes(d, n).len());
        ClassFunction { d, n, values }
    }

    /// Evaluate `f` on every class (in parallel when enabled).
    pub fn from_fn<F>(d: u32, n: u32, f: F) -> Self
    where
        F: Fn(&LabeledCycleType) -> Cyclotomic + Sync + Send,
    {
        let list = classes(d, n);
        let values = exec::map(&list[..], f);
        ClassFunction { d, n, values }
    }

    pub fn zero(d: u32, n: u32) -> Self {
        let count = classes(d, n).len();
        ClassFunction {
            d,
            n,
            values: vec![Cyclotomic::zero(d); count],
        }
    }

    pub fn trivial(d: u32, n: u32) -> Self {
        let count = classes(d, n).len();
        ClassFunction {
            d,
            n,
            values: vec![Cyclotomic::one(d); count],
        }
    }

    /// Character of the regular representation: `|W_n|` at the identity,
    /// zero elsewhere.
    pub fn regular(d: u32, n: u32) -> Self {
        let list = classes(d, n);
        let values = list
            .iter()
            .map(|t| {
                if t.is_identity() {
                    Cyclotomic::from_bigint(d, crate::combinat::group_order(d, n))
                } else {
                    Cyclotomic::zero(d)
                }
            })
            .collect();
        ClassFunction { d, n, values }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, t: &LabeledCycleType) -> &Cyclotomic {
        let idx = class_index(self.d, self.n);
        &self.values[*idx.get(t).expect("class belongs to W_n")]
    }

    /// Value at the identity class.
    pub fn dimension(&self) -> Cyclotomic {
        self.value(&LabeledCycleType::identity(self.d, self.n)).clone()
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharError> {
        self.check_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(ClassFunction {
            d: self.d,
            n: self.n,
            values,
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, CharError> {
        self.check_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(ClassFunction {
            d: self.d,
            n: self.n,
            values,
        })
    }

    pub fn scale(&self, k: &Cyclotomic) -> ClassFunction {
        ClassFunction {
            d: self.d,
            n: self.n,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    fn check_shape(&self, other: &ClassFunction) -> Result<(), CharError> {
        if self.d != other.d || self.n != other.n {
            return Err(CharError::ShapeMismatch(self.d, self.n, other.d, other.n));
        }
        Ok(())
    }

    /// JSON as an array of `{class, value}` in canonical class order.
    pub fn to_json(&self) -> serde_json::Value {
        let list = classes(self.d, self.n);
        let rows: Vec<serde_json::Value> = list
            .iter()
            .zip(self.values.iter())
            .map(|(t, v)| serde_json::json!({"class": t.to_json(), "value": v.to_json()}))
            .collect();
        serde_json::json!({"d": self.d, "n": self.n, "values": rows})
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction(d={}, n={}, ", self.d, self.n)?;
        let list = classes(self.d, self.n);
        for (t, v) in list.iter().zip(self.values.iter()) {
            write!(f, "{t}: {v}; ")?;
        }
        write!(f, ")")
    }
}

static MN_CACHE: Lazy<RwLock<HashMap<(Vec<u32>, Vec<u32>), BigInt>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Symmetric-group character value `chi^lambda(mu)` by the
/// Murnaghan-Nakayama rule, computed on beta-sets.
pub fn sn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt, CharError> {
    if lambda.size() != mu.size() {
        return Err(CharError::SizeMismatch(
            lambda.to_string(),
            mu.to_string(),
        ));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

fn mn(lambda: &[u32], mu: &[u32]) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = MN_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let t = mu[0];
    let rest = &mu[1..];
    // beta-set of lambda: distinct values lambda_i + (L - 1 - i)
    let len = lambda.len().max(1);
    let mut beta: Vec<u32> = (0..len)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
        .collect();
    let mut total = BigInt::zero();
    for pos in 0..beta.len() {
        let b = beta[pos];
        if b < t {
            continue;
        }
        let target = b - t;
        if beta.contains(&target) {
            continue;
        }
        // strip height = number of beta entries strictly between target and b
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let old = beta[pos];
        beta[pos] = target;
        let sub = partition_from_beta(&beta);
        beta[pos] = old;
        let term = mn(&sub, rest);
        if height % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    MN_CACHE.write().unwrap().insert(key, total.clone());
    total
}

fn partition_from_beta(beta: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = beta.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let len = sorted.len();
    let mut parts: Vec<u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i) as u32)
        .collect();
    parts.retain(|&p| p > 0);
    parts
}

/// Character of the `W_m`-module `(chi_j o label sum) (x) Specht(lambda)`:
/// value `zeta_d^(j * label weight) * chi^lambda(shape)` on each class.
pub fn twisted_specht_character(d: u32, j: u32, lambda: &Partition) -> ClassFunction {
    let m = lambda.size();
    ClassFunction::from_fn(d, m, |t| {
        let chi = mn(lambda.parts(), t.shape().parts());
        if chi.is_zero() {
            return Cyclotomic::zero(d);
        }
        let root = zeta(d, (j as i64) * (t.label_weight() as i64));
        &root * &Cyclotomic::from_bigint(d, chi)
    })
}

/// Character of `Ind_{W_a x W_b}^{W_(a+b)} f (x) g`, computed by splitting
/// the labeled cycle multiset of each class between the two factors, each
/// split weighted by the product of binomial coefficients of multiplicities.
pub fn induce_product(f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction, CharError> {
    if f.d() != g.d() {
        return Err(CharError::ShapeMismatch(f.d(), f.n(), g.d(), g.n()));
    }
    let d = f.d();
    let a = f.n();
    let b = g.n();
    if a == 0 {
        return Ok(g.scale(&f.values()[0]));
    }
    if b == 0 {
        return Ok(f.scale(&g.values()[0]));
    }
    let idx_a = class_index(d, a);
    let idx_b = class_index(d, b);
    let result = ClassFunction::from_fn(d, a + b, |t| {
        let entries: Vec<(u32, u32, u32)> = t.entries().collect();
        // suffix capacity for pruning
        let mut cap = vec![0u32; entries.len() + 1];
        for (p, &(i, _, m)) in entries.iter().enumerate().rev() {
            cap[p] = cap[p + 1] + i * m;
        }
        let mut acc = Cyclotomic::zero(d);
        let mut chosen: Vec<u32> = vec![0; entries.len()];
        split_rec(&entries, &cap, 0, a, BigInt::one(), &mut chosen, &mut |chosen,
                                                                          coeff| {
            let mut ma = BTreeMap::new();
            let mut mb = BTreeMap::new();
            for (p, &(i, c, m)) in entries.iter().enumerate() {
                let k = chosen[p];
                if k > 0 {
                    ma.insert((i, c), k);
                }
                if m - k > 0 {
                    mb.insert((i, c), m - k);
                }
            }
            let ta = LabeledCycleType::new(d, ma);
            let tb = LabeledCycleType::new(d, mb);
            let fa = &f.values()[idx_a[&ta]];
            let gb = &g.values()[idx_b[&tb]];
            if fa.is_zero() || gb.is_zero() {
                return;
            }
            let prod = &(fa * gb) * &Cyclotomic::from_bigint(d, coeff.clone());
            acc = &acc + &prod;
        });
        acc
    });
    Ok(result)
}

fn split_rec(
    entries: &[(u32, u32, u32)],
    cap: &[u32],
    pos: usize,
    remaining: u32,
    coeff: BigInt,
    chosen: &mut Vec<u32>,
    visit: &mut impl FnMut(&Vec<u32>, &BigInt),
) {
    if remaining > cap[pos] {
        return;
    }
    if pos == entries.len() {
        debug_assert_eq!(remaining, 0);
        visit(chosen, &coeff);
        return;
    }
    let (i, _, m) = entries[pos];
    let kmax = (remaining / i).min(m);
    for k in 0..=kmax {
        chosen[pos] = k;
        let c = &coeff * binomial(m, k);
        split_rec(entries, cap, pos + 1, remaining - i * k, c, chosen, visit);
    }
    chosen[pos] = 0;
}

/// n-th term of the induced FI_G-module on `V`:
/// `Ind_{W_m x W_(n-m)}^{W_n} V (x) trivial`.
pub fn ind_fig_character(v: &ClassFunction, n: u32) -> Result<ClassFunction, CharError> {
    if n < v.n() {
        return Err(CharError::InduceRange(v.n(), n));
    }
    induce_product(v, &ClassFunction::trivial(v.d(), n - v.n()))
}

/// Character of the irreducible `L(lambda)` of `W_n`.
pub fn irr_character(d: u32, n: u32, lambda: &MultiPartition) -> Result<ClassFunction, CharError> {
    if lambda.norm() != n || lambda.d() != d {
        return Err(CharError::NormMismatch(lambda.norm(), n));
    }
    let mut acc: Option<ClassFunction> = None;
    for j in 0..d {
        let part = lambda.slot(j);
        if part.is_empty() {
            continue;
        }
        let factor = twisted_specht_character(d, j, part);
        acc = Some(match acc {
            None => factor,
            Some(prev) => induce_product(&prev, &factor)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ClassFunction::trivial(d, 0)))
}

static TABLE_CACHE: Lazy<Mutex<HashMap<(u32, u32), Arc<Vec<(MultiPartition, ClassFunction)>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Compute the full character table of `W_n`: every irreducible label
/// paired with its character. Rows are computed in parallel.
pub fn compute_character_table(d: u32, n: u32) -> Vec<(MultiPartition, ClassFunction)> {
    let labels = enumerate_multipartitions(d, n);
    exec::map(&labels[..], |lam| {
        (
            lam.clone(),
            irr_character(d, n, lam).expect("enumerated label has norm n"),
        )
    })
}

/// The character table of `W_n`, memoized per `(d, n)`.
pub fn character_table(d: u32, n: u32) -> Arc<Vec<(MultiPartition, ClassFunction)>> {
    if let Some(t) = TABLE_CACHE.lock().unwrap().get(&(d, n)) {
        return t.clone();
    }
    let arc = Arc::new(compute_character_table(d, n));
    TABLE_CACHE
        .lock()
        .unwrap()
        .entry((d, n))
        .or_insert(arc)
        .clone()
}

/// Hermitian inner product of class functions:
/// `(1/|W_n|) * sum over classes of class size * f * conj(g)`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic, CharError> {
    if f.d() != g.d() || f.n() != g.n() {
        return Err(CharError::ShapeMismatch(f.d(), f.n(), g.d(), g.n()));
    }
    let d = f.d();
    let list = classes(d, f.n());
    let mut acc = Cyclotomic::zero(d);
    for (t, (fv, gv)) in list.iter().zip(f.values().iter().zip(g.values().iter())) {
        if fv.is_zero() || gv.is_zero() {
            continue;
        }
        let w = Cyclotomic::from_rational(d, Rational::new(BigInt::one(), t.centralizer_order()));
        acc = &acc + &(&(fv * &gv.conjugate()) * &w);
    }
    Ok(acc)
}

/// Decompose a class function into irreducibles. Succeeds only when every
/// multiplicity is a nonnegative rational integer and the multiplicities
/// reconstruct `f` exactly; anything else is reported as an error, which
/// doubles as an end-to-end integrality tripwire.
pub fn decompose(f: &ClassFunction) -> Result<BTreeMap<MultiPartition, u64>, CharError> {
    let table = character_table(f.d(), f.n());
    let mults = exec::map(&table[..], |(lam, chi)| {
        (lam.clone(), inner_product(f, chi).expect("same shape"))
    });
    let mut out = BTreeMap::new();
    let mut recon = ClassFunction::zero(f.d(), f.n());
    for ((lam, chi), (_, m)) in table.iter().zip(mults.iter()) {
        let Some(int) = m.as_integer().filter(|v| !v.is_negative()) else {
            return Err(CharError::NotACharacter {
                lambda: lam.to_string(),
                value: m.to_string(),
            });
        };
        if int.is_zero() {
            continue;
        }
        recon = recon
            .add(&chi.scale(&Cyclotomic::from_bigint(f.d(), int.clone())))
            .expect("same shape");
        out.insert(
            lam.clone(),
            u64::try_from(&int).expect("desk-scale multiplicity"),
        );
    }
    if recon != *f {
        return Err(CharError::NotACharacter {
            lambda: "(reconstruction)".into(),
            value: "sum of isotypic parts differs from input".into(),
        });
    }
    Ok(out)
}

/// Character of the `W_2`-module with basis `{u_x : x in Z/d}` on which the
/// labels act by `u_x -> u_(x + g_0 - g_1)` and the swap by `u_x -> u_(-x)`.
pub fn kg_module_character(d: u32) -> ClassFunction {
    ClassFunction::from_fn(d, 2, |t| {
        let w = representative(t);
        let l0 = w.labels()[0] as i64;
        let l1 = w.labels()[1] as i64;
        let swap = w.sigma()[0] == 1;
        let mut fixed = 0i64;
        for x in 0..d as i64 {
            let image = if swap {
                (-(x + l0 - l1)).rem_euclid(d as i64)
            } else {
                (x + l0 - l1).rem_euclid(d as i64)
            };
            if image == x {
                fixed += 1;
            }
        }
        Cyclotomic::from_integer(d, fixed)
    })
}

/// JSON for a decomposition: `[{lambda, mult}, ...]` in label order.
pub fn decomposition_json(dec: &BTreeMap<MultiPartition, u64>) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = dec
        .iter()
        .map(|(lam, m)| serde_json::json!({"lambda": lam.to_json(), "mult": m}))
        .collect();
    serde_json::Value::Array(rows)
}
