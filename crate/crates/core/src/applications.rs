//! Headline computations: verification of the displayed H^1/H^2
//! decompositions of the monomial arrangement cohomology, multiplicity
//! stability reports with padded labels, the Gauss-sum coefficient series,
//! and the Fouxe-Rabinovitch cohomology modules for `G = Z`.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use thiserror::Error;

use crate::charpoly::{stable_inner_product, twisted_variable, CharPolyError};
use crate::combinat::{representative, unpad, LabeledCycleType, MultiPartition, Partition};
use crate::exactnum::Cyclotomic;
use crate::exec;
use crate::orlik_solomon::{equivariant_character, OsError};
use crate::wreathchar::{
    decompose, decomposition_json, ind_fig_character, induce_product, irr_character,
    twisted_specht_character, CharError, ClassFunction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AppError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    CharPoly(#[from] CharPolyError),
    #[error(transparent)]
    Os(#[from] OsError),
    #[error("degree {0} out of range for n={1}")]
    DegreeRange(usize, u32),
}

/// One induced family `Ind^FI_G(V)` appearing in a displayed decomposition.
#[derive(Debug, Clone)]
pub struct FamilyTerm {
    pub name: String,
    pub multiplicity: u32,
    /// the inducing character on its native `W_m`
    pub seed: ClassFunction,
}

impl FamilyTerm {
    fn new(name: impl Into<String>, multiplicity: u32, seed: ClassFunction) -> Self {
        FamilyTerm {
            name: name.into(),
            multiplicity,
            seed,
        }
    }
}

/// The displayed H^1 family list: `Ind((1)_chi0) + sum over chi of
/// Ind((2)_chi)`.
pub fn h1_display_families(d: u32) -> Vec<FamilyTerm> {
    let mut fams = vec![FamilyTerm::new(
        "Ind((1)_chi0)",
        1,
        ClassFunction::trivial(d, 1),
    )];
    for j in 0..d {
        fams.push(FamilyTerm::new(
            format!("Ind((2)_chi{j})"),
            1,
            twisted_specht_character(d, j, &Partition::new(vec![2])),
        ));
    }
    fams
}

/// The displayed H^2 family list (eight families; the chi-indexed ones run
/// over all characters or all nontrivial characters as displayed).
pub fn h2_display_families(d: u32) -> Vec<FamilyTerm> {
    let part = |v: &[u32]| Partition::new(v.to_vec());
    let mut fams = vec![
        FamilyTerm::new(
            "Ind((2,1)_chi0)",
            1,
            twisted_specht_character(d, 0, &part(&[2, 1])),
        ),
        FamilyTerm::new(
            "Ind((3)_chi0)",
            1,
            twisted_specht_character(d, 0, &part(&[3])),
        ),
    ];
    for j in 0..d {
        fams.push(FamilyTerm::new(
            format!("Ind((3,1)_chi{j})"),
            1,
            twisted_specht_character(d, j, &part(&[3, 1])),
        ));
        fams.push(FamilyTerm::new(
            format!("Ind((2)_chi{j})"),
            1,
            twisted_specht_character(d, j, &part(&[2])),
        ));
    }
    for j in 1..d {
        fams.push(FamilyTerm::new(
            format!("Ind((2)_chi{j})"),
            1,
            twisted_specht_character(d, j, &part(&[2])),
        ));
        fams.push(FamilyTerm::new(
            format!("Ind((1)_chi0,(2)_chi{j})^2"),
            2,
            induce_product(
                &twisted_specht_character(d, 0, &part(&[1])),
                &twisted_specht_character(d, j, &part(&[2])),
            )
            .expect("same d"),
        ));
        fams.push(FamilyTerm::new(
            format!("Ind((1)_chi{j},(1,1)_chi{j})"),
            1,
            induce_product(
                &twisted_specht_character(d, j, &part(&[1])),
                &twisted_specht_character(d, j, &part(&[1, 1])),
            )
            .expect("same d"),
        ));
        fams.push(FamilyTerm::new(
            format!("Ind((2)_chi0,(2)_chi{j})"),
            1,
            induce_product(
                &twisted_specht_character(d, 0, &part(&[2])),
                &twisted_specht_character(d, j, &part(&[2])),
            )
            .expect("same d"),
        ));
    }
    fams
}

/// The displayed stable H^1 irreducible list `L((n)_chi0) + L((n-1,1)_chi0)
/// + sum over chi of L((n-2)_chi0, (2)_chi)`, realized as induced
/// characters (for chi = chi0 the two slots land on the same character and
/// the summand is the corresponding induced module).
pub fn h1_stable_formula(d: u32, n: u32) -> Result<ClassFunction, CharError> {
    assert!(n >= 2);
    let part = |v: &[u32]| Partition::new(v.to_vec());
    let mut total = irr_character(d, n, &MultiPartition::single(d, 0, part(&[n])))?;
    let mut row = vec![n - 1, 1];
    row.sort_unstable_by(|a, b| b.cmp(a));
    total = total.add(&irr_character(
        d,
        n,
        &MultiPartition::single(d, 0, Partition::new(row)),
    )?)?;
    for j in 0..d {
        let tail = twisted_specht_character(d, j, &part(&[2]));
        let head = twisted_specht_character(d, 0, &Partition::new(if n > 2 { vec![n - 2] } else { vec![] }));
        total = total.add(&induce_product(&head, &tail)?)?;
    }
    Ok(total)
}

/// Outcome of checking a displayed decomposition against the computed
/// equivariant character.
#[derive(Debug, Clone)]
pub struct HVerifyReport {
    pub d: u32,
    pub n: u32,
    pub degree: usize,
    pub pass: bool,
    pub computed_dimension: BigInt,
    pub expected_dimension: BigInt,
    pub family_dimensions: Vec<(String, BigInt)>,
    /// classes where computed and expected differ, with both values
    pub mismatches: Vec<(LabeledCycleType, Cyclotomic, Cyclotomic)>,
    pub computed_decomposition: BTreeMap<MultiPartition, u64>,
    pub expected_decomposition: BTreeMap<MultiPartition, u64>,
}

impl HVerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mismatches: Vec<serde_json::Value> = self
            .mismatches
            .iter()
            .map(|(t, a, b)| {
                serde_json::json!({
                    "class": t.to_json(),
                    "computed": a.to_json(),
                    "expected": b.to_json(),
                })
            })
            .collect();
        let fams: Vec<serde_json::Value> = self
            .family_dimensions
            .iter()
            .map(|(name, dim)| serde_json::json!({"family": name, "dim": dim.to_string()}))
            .collect();
        serde_json::json!({
            "d": self.d,
            "n": self.n,
            "degree": self.degree,
            "pass": self.pass,
            "computed_dimension": self.computed_dimension.to_string(),
            "expected_dimension": self.expected_dimension.to_string(),
            "families": fams,
            "mismatches": mismatches,
            "computed_decomposition": decomposition_json(&self.computed_decomposition),
            "expected_decomposition": decomposition_json(&self.expected_decomposition),
        })
    }
}

/// Check the displayed H^k decomposition (k = 1 or 2) against the computed
/// equivariant character of the monomial arrangement at `(d, n)`.
/// Mismatches are reported, not raised.
pub fn verify_h_decomposition(d: u32, n: u32, k: usize) -> Result<HVerifyReport, AppError> {
    let families = match k {
        1 => h1_display_families(d),
        2 => h2_display_families(d),
        _ => return Err(AppError::DegreeRange(k, n)),
    };
    let computed = equivariant_character(d, n, k)?;
    let mut expected = ClassFunction::zero(d, n);
    let mut family_dimensions = Vec::new();
    for fam in &families {
        if fam.seed.n() > n {
            family_dimensions.push((fam.name.clone(), BigInt::from(0)));
            continue;
        }
        let ind = ind_fig_character(&fam.seed, n)?;
        let dim = ind.dimension().as_integer().expect("integral dimension")
            * BigInt::from(fam.multiplicity);
        family_dimensions.push((fam.name.clone(), dim));
        let scaled = ind.scale(&Cyclotomic::from_integer(d, fam.multiplicity as i64));
        expected = expected.add(&scaled)?;
    }
    let mut mismatches = Vec::new();
    for (t, (a, b)) in crate::wreathchar::classes(d, n)
        .iter()
        .zip(computed.values().iter().zip(expected.values().iter()))
    {
        if a != b {
            mismatches.push((t.clone(), a.clone(), b.clone()));
        }
    }
    Ok(HVerifyReport {
        d,
        n,
        degree: k,
        pass: mismatches.is_empty(),
        computed_dimension: computed.dimension().as_integer().expect("integral"),
        expected_dimension: expected.dimension().as_integer().expect("integral"),
        family_dimensions,
        mismatches,
        computed_decomposition: decompose(&computed)?,
        expected_decomposition: decompose(&expected)?,
    })
}

/// Run [`verify_h_decomposition`] for every n in the range, degrees 1 and 2
/// (degree 2 only where the rank allows).
pub fn verify_h_decompositions(
    d: u32,
    n_start: u32,
    n_stop: u32,
) -> Result<Vec<HVerifyReport>, AppError> {
    let mut out = Vec::new();
    for n in n_start..=n_stop {
        out.push(verify_h_decomposition(d, n, 1)?);
        if n >= 2 {
            out.push(verify_h_decomposition(d, n, 2)?);
        }
    }
    Ok(out)
}

/// Multiplicities of one family member, expressed in stable (unpadded)
/// labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityRow {
    pub n: u32,
    pub decomposition: BTreeMap<MultiPartition, u64>,
}

/// Result of matching multiplicities of `lambda[n]` across a range of n.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub family: String,
    pub i: u32,
    pub bound: u32,
    pub stabilized_at: Option<u32>,
    pub table: Vec<StabilityRow>,
    pub pass: bool,
}

impl StabilityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<serde_json::Value> = self
            .table
            .iter()
            .map(|row| {
                serde_json::json!({
                    "n": row.n,
                    "decomposition": decomposition_json(&row.decomposition),
                })
            })
            .collect();
        serde_json::json!({
            "family": self.family,
            "i": self.i,
            "bound": self.bound,
            "stabilized_at": self.stabilized_at,
            "table": table,
            "pass": self.pass,
        })
    }
}

/// Decompose each family member, convert labels to stable form by stripping
/// the padding part, and report the first `N` from which the multiplicity
/// maps are constant through the end of the range, compared against the
/// stated bound.
pub fn stability_report(
    family_name: &str,
    family: &dyn Fn(u32) -> Result<ClassFunction, AppError>,
    i: u32,
    n_start: u32,
    n_stop: u32,
    bound: u32,
) -> Result<StabilityReport, AppError> {
    assert!(n_stop > n_start);
    let mut table = Vec::new();
    for n in n_start..=n_stop {
        let f = family(n)?;
        let dec = decompose(&f)?;
        let mut stable: BTreeMap<MultiPartition, u64> = BTreeMap::new();
        for (lam, m) in dec {
            let label = unpad(&lam, n).unwrap_or(lam);
            *stable.entry(label).or_insert(0) += m;
        }
        table.push(StabilityRow {
            n,
            decomposition: stable,
        });
    }
    let mut stabilized_at = None;
    for start in 0..table.len() {
        if table[start..]
            .iter()
            .all(|row| row.decomposition == table[table.len() - 1].decomposition)
        {
            stabilized_at = Some(table[start].n);
            break;
        }
    }
    // detection requires at least two agreeing rows
    if stabilized_at == Some(n_stop) {
        stabilized_at = None;
    }
    let pass = stabilized_at.is_some_and(|n0| n0 <= bound);
    Ok(StabilityReport {
        family: family_name.to_string(),
        i,
        bound,
        stabilized_at,
        table,
        pass,
    })
}

/// One coefficient of the Gauss-sum series.
#[derive(Debug, Clone)]
pub struct GaussTerm {
    pub i: u32,
    pub coeff: Cyclotomic,
    pub window: (u32, u32),
    pub values: Vec<(u32, Cyclotomic)>,
}

/// The computed series `sum_i a_i q^(-i)` together with the reference
/// values quoted for the first two coefficients.
#[derive(Debug, Clone)]
pub struct GaussReport {
    pub q: u32,
    pub d: u32,
    pub chi: u32,
    pub terms: Vec<GaussTerm>,
    /// reference coefficients (i, value) the series is compared against
    pub reference: Vec<(u32, Cyclotomic)>,
    pub matches_reference: bool,
}

impl GaussReport {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                let values: Vec<serde_json::Value> = t
                    .values
                    .iter()
                    .map(|(n, v)| serde_json::json!({"n": n, "value": v.to_json()}))
                    .collect();
                serde_json::json!({
                    "i": t.i,
                    "coeff": t.coeff.to_json(),
                    "window": [t.window.0, t.window.1],
                    "inner_products": values,
                })
            })
            .collect();
        let reference: Vec<serde_json::Value> = self
            .reference
            .iter()
            .map(|(i, v)| serde_json::json!({"i": i, "coeff": v.to_json()}))
            .collect();
        serde_json::json!({
            "q": self.q,
            "d": self.d,
            "chi": self.chi,
            "terms": terms,
            "reference": reference,
            "matches_reference": self.matches_reference,
        })
    }
}

fn h_family(d: u32, i: usize, n: u32) -> Result<ClassFunction, AppError> {
    if n == 0 {
        return Ok(if i == 0 {
            ClassFunction::trivial(d, 0)
        } else {
            ClassFunction::zero(d, 0)
        });
    }
    if i == 0 {
        return Ok(ClassFunction::trivial(d, n));
    }
    Ok(equivariant_character(d, n, i)?)
}

/// Coefficients `a_i = (-1)^i <X_2^(conj chi), H^i>` of the Gauss-sum series
/// at `q`, each taken as the stable value of the inner product over the
/// window `[4i, 4i+2]`. The per-n values are retained in the report; the
/// comparison against the quoted `1/(2q) + 2/q^2` is informational.
pub fn gauss_series(q: u32, chi: u32, i_max: u32) -> Result<GaussReport, AppError> {
    let d = q - 1;
    assert!(d >= 2, "need q - 1 >= 2");
    assert!(!chi.is_multiple_of(d), "chi must be a nontrivial character index");
    let chi = chi % d;
    let conj = (d - chi) % d;
    let mut terms = Vec::new();
    for i in 0..=i_max {
        let p = twisted_variable(d, conj, 2);
        let window = (4 * i, 4 * i + 2);
        let family = |n: u32| h_family(d, i as usize, n).expect("equivariant character");
        // keep the per-n values for the report before asking for stability
        let values: Vec<(u32, Cyclotomic)> = (window.0..=window.1)
            .map(|n| {
                let f = family(n);
                let pf = p.as_class_function(n);
                (n, crate::wreathchar::inner_product(&pf, &f).expect("shape"))
            })
            .collect();
        let stable = stable_inner_product(&p, &family, window.0, window.1)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push(GaussTerm {
            i,
            coeff: &stable * &Cyclotomic::from_integer(d, sign),
            window,
            values,
        });
    }
    let reference = vec![
        (
            1u32,
            Cyclotomic::from_rational(
                d,
                crate::exactnum::Rational::new(BigInt::from(1), BigInt::from(2)),
            ),
        ),
        (2u32, Cyclotomic::from_integer(d, 2)),
    ];
    let matches_reference = reference.iter().all(|(i, expected)| {
        terms
            .iter()
            .find(|t| t.i == *i)
            .is_none_or(|t| &t.coeff == expected)
    });
    Ok(GaussReport {
        q,
        d,
        chi,
        terms,
        reference,
        matches_reference,
    })
}

/// Basis of the degree-k Fouxe-Rabinovitch module: sets of k pairs `(i, j)`
/// with `i != j`, all j distinct, sorted by j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRModuleSpec {
    pub n: u32,
    pub basis: Vec<Vec<(u32, u32)>>,
}

impl FRModuleSpec {
    pub fn new(n: u32, k: usize) -> Self {
        let mut basis = Vec::new();
        let mut current: Vec<(u32, u32)> = Vec::with_capacity(k);
        fn rec(
            n: u32,
            k: usize,
            next_j: u32,
            current: &mut Vec<(u32, u32)>,
            out: &mut Vec<Vec<(u32, u32)>>,
        ) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            let needed = (k - current.len()) as u32;
            for j in next_j..=(n - needed) {
                for i in 0..n {
                    if i == j {
                        continue;
                    }
                    current.push((i, j));
                    rec(n, k, j + 1, current, out);
                    current.pop();
                }
            }
        }
        if (k as u32) <= n {
            rec(n, k, 0, &mut current, &mut basis);
        }
        FRModuleSpec { n, basis }
    }
}

/// Character of the degree-k Fouxe-Rabinovitch cohomology module of
/// `FR(Z^(*n))` under `(Z/2) wr S_n`: the generator `alpha_(i,j)` maps to
/// `(-1)^(phi_j) alpha_(s(i), s(j))` and wedge monomials pick up the sign
/// of re-sorting their distinct j-indices.
pub fn fr_character(n: u32, k: usize) -> Result<ClassFunction, AppError> {
    if k as u32 > n.saturating_sub(1) {
        return Err(AppError::DegreeRange(k, n));
    }
    let spec = FRModuleSpec::new(n, k);
    let list = crate::wreathchar::classes(2, n);
    let values = exec::map(&list[..], |t| {
        let w = representative(t);
        let mut trace = BigInt::from(0);
        for elt in &spec.basis {
            // image pairs with the phi twist on the j slot
            let mut image: Vec<(u32, u32)> = Vec::with_capacity(elt.len());
            let mut parity = 0u32;
            for &(i, j) in elt {
                parity += w.labels()[j as usize];
                image.push((w.apply(i), w.apply(j)));
            }
            // sort by j, tracking the permutation sign
            let mut sign = 1i64;
            for a in 1..image.len() {
                let mut b = a;
                while b > 0 && image[b - 1].1 > image[b].1 {
                    image.swap(b - 1, b);
                    sign = -sign;
                    b -= 1;
                }
            }
            if &image == elt {
                let twist = if parity.is_multiple_of(2) { 1 } else { -1 };
                trace += BigInt::from(sign * twist);
            }
        }
        Cyclotomic::from_bigint(2, trace)
    });
    Ok(ClassFunction::from_values(2, n, values))
}
