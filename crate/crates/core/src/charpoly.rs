//! Character polynomials: exact polynomials in the cycle-counting class
//! functions `X_i^c` (number of i-cycles labeled `c`), evaluated on every
//! `W_n` at once.
//!
//! Monomials are kept in the expanded power basis with binomial
//! coefficients pre-expanded to rational coefficients, so equality and
//! degree are canonical. The degree of `X_i^c` is `i`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};
use thiserror::Error;

use crate::combinat::LabeledCycleType;
use crate::exactnum::{zeta, Cyclotomic, Rational};
use crate::wreathchar::{classes, inner_product, CharError, ClassFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharPolyError {
    #[error("order mismatch: polynomial over Q(zeta_{0}) applied at d={1}")]
    OrderMismatch(u32, u32),
    #[error("fit needs at least two distinct n")]
    NotEnoughData,
    #[error("fit data is inconsistent: no polynomial of the given degree matches")]
    Inconsistent,
    #[error("fit is underdetermined: supply a larger n range")]
    Underdetermined,
    #[error("inner products did not stabilize over the checked window: {0:?}")]
    Unstable(Vec<(u32, String)>),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A monomial `prod (X_i^c)^e`, keyed by `(i, c)` with exponents >= 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<(u32, u32), u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn variable(i: u32, c: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert((i, c), 1);
        Monomial(m)
    }

    pub fn from_exponents(exps: BTreeMap<(u32, u32), u32>) -> Self {
        let mut m = exps;
        m.retain(|_, e| *e > 0);
        Monomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.0
    }

    /// Degree with `deg X_i^c = i`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(&(i, _), &e)| i * e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&k, &e) in &other.0 {
            *m.entry(k).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Value under the substitution `X_i^c := mult(i, c)`.
    fn evaluate(&self, t: &LabeledCycleType) -> BigInt {
        let mut acc = BigInt::one();
        for (&(i, c), &e) in &self.0 {
            let count = BigInt::from(t.mult(i, c));
            if count.is_zero() {
                return BigInt::zero();
            }
            for _ in 0..e {
                acc *= &count;
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|(&(i, c), &e)| serde_json::json!({"i": i, "c": c, "e": e}))
            .collect();
        serde_json::Value::Array(items)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (&(i, c), &e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e > 1 {
                write!(f, "(X_{i}^{c})^{e}")?;
            } else {
                write!(f, "X_{i}^{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in the `X_i^c` with cyclotomic coefficients; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CharacterPolynomial {
    d: u32,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl CharacterPolynomial {
    pub fn zero(d: u32) -> Self {
        CharacterPolynomial {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: u32, c: Cyclotomic) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn variable(d: u32, i: u32, c: u32) -> Self {
        assert!(c < d && i >= 1);
        let mut p = Self::zero(d);
        p.add_term(Monomial::variable(i, c), Cyclotomic::one(d));
        p
    }

    /// The expanded binomial `binom(X_i^c, k) = X(X-1)...(X-k+1)/k!`.
    pub fn binomial(d: u32, i: u32, c: u32, k: u32) -> Self {
        let mut acc = Self::constant(d, Cyclotomic::one(d));
        let x = Self::variable(d, i, c);
        for t in 0..k {
            let shifted = x.sub(&Self::constant(d, Cyclotomic::from_integer(d, t as i64)));
            acc = acc.mul(&shifted);
        }
        let kfact = crate::combinat::factorial(k);
        acc.scale(&Cyclotomic::from_rational(
            d,
            Rational::new(BigInt::one(), kfact),
        ))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max degree over stored monomials; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &CharacterPolynomial) -> CharacterPolynomial {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CharacterPolynomial) -> CharacterPolynomial {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &CharacterPolynomial) -> CharacterPolynomial {
        assert_eq!(self.d, other.d);
        let mut out = Self::zero(self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &Cyclotomic) -> CharacterPolynomial {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Substitute `X_i^c := mult(i, c)` of the class `t`.
    pub fn evaluate(&self, t: &LabeledCycleType) -> Cyclotomic {
        assert_eq!(self.d, t.d(), "polynomial and class share d");
        let mut acc = Cyclotomic::zero(self.d);
        for (m, c) in &self.terms {
            let v = m.evaluate(t);
            if v.is_zero() {
                continue;
            }
            acc = &acc + &(c * &Cyclotomic::from_bigint(self.d, v));
        }
        acc
    }

    /// The class function on `W_n` obtained by evaluating on every class.
    pub fn as_class_function(&self, n: u32) -> ClassFunction {
        ClassFunction::from_fn(self.d, n, |t| self.evaluate(t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!({"monomial": m.to_json(), "coeff": c.to_json()}))
            .collect();
        serde_json::json!({"d": self.d, "terms": rows})
    }
}

impl fmt::Display for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.exponents().is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The character polynomial of the induced FI_G-module on `V` (a class
/// function on `W_m`): for each class `lambda` of `W_m`, the value
/// `V(lambda)` times the product of `binom(X_i^c, mult_lambda(i, c))`.
/// Evaluating the result on any class of any `W_n` (n >= m) reproduces
/// `ind_fig_character(V, n)`.
pub fn from_induced(v: &ClassFunction) -> CharacterPolynomial {
    let d = v.d();
    let m = v.n();
    let mut out = CharacterPolynomial::zero(d);
    for (lam, value) in classes(d, m).iter().zip(v.values().iter()) {
        if value.is_zero() {
            continue;
        }
        let mut prod = CharacterPolynomial::constant(d, value.clone());
        for (i, c, mult) in lam.entries() {
            prod = prod.mul(&CharacterPolynomial::binomial(d, i, c, mult));
        }
        out = out.add(&prod);
    }
    out
}

/// The twisted variable `X_i^(chi_j) = sum_c zeta_d^(jc) X_i^c`.
pub fn twisted_variable(d: u32, j: u32, i: u32) -> CharacterPolynomial {
    assert!(j < d);
    let mut out = CharacterPolynomial::zero(d);
    for c in 0..d {
        out = out.add(
            &CharacterPolynomial::variable(d, i, c).scale(&zeta(d, (j as i64) * (c as i64))),
        );
    }
    out
}

/// All monomials of degree <= `max_degree` over the variables `X_i^c`.
pub fn monomials_up_to(d: u32, max_degree: u32) -> Vec<Monomial> {
    let vars: Vec<(u32, u32)> = (1..=max_degree)
        .flat_map(|i| (0..d).map(move |c| (i, c)))
        .collect();
    let mut out = Vec::new();
    fn rec(
        vars: &[(u32, u32)],
        pos: usize,
        budget: u32,
        current: &mut BTreeMap<(u32, u32), u32>,
        out: &mut Vec<Monomial>,
    ) {
        if pos == vars.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        let (i, c) = vars[pos];
        let emax = budget / i;
        for e in 0..=emax {
            if e > 0 {
                current.insert((i, c), e);
            }
            rec(vars, pos + 1, budget - i * e, current, out);
            current.remove(&(i, c));
        }
    }
    rec(&vars, 0, max_degree, &mut BTreeMap::new(), &mut out);
    out.sort();
    out
}

/// Fit the unique character polynomial of degree <= `max_degree` agreeing
/// with every supplied class function on every class. The linear system
/// must have full column rank (else `Underdetermined`) and be consistent
/// (else `Inconsistent`).
pub fn fit(
    sequence: &[(u32, ClassFunction)],
    max_degree: u32,
) -> Result<CharacterPolynomial, CharPolyError> {
    let distinct: std::collections::BTreeSet<u32> = sequence.iter().map(|(n, _)| *n).collect();
    if distinct.len() < 2 {
        return Err(CharPolyError::NotEnoughData);
    }
    let d = sequence[0].1.d();
    if sequence.iter().any(|(_, f)| f.d() != d) {
        return Err(CharPolyError::OrderMismatch(d, 0));
    }
    let monomials = monomials_up_to(d, max_degree);
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut rhs: Vec<Cyclotomic> = Vec::new();
    for (n, f) in sequence {
        for (t, v) in classes(d, *n).iter().zip(f.values().iter()) {
            let row: Vec<Cyclotomic> = monomials
                .iter()
                .map(|m| Cyclotomic::from_bigint(d, m.evaluate(t)))
                .collect();
            rows.push(row);
            rhs.push(v.clone());
        }
    }
    match crate::linalg::solve_exact(&rows, &rhs, d) {
        crate::linalg::SolveOutcome::Unique(x) => {
            let mut p = CharacterPolynomial::zero(d);
            for (m, c) in monomials.into_iter().zip(x) {
                p.add_term(m, c);
            }
            Ok(p)
        }
        crate::linalg::SolveOutcome::Underdetermined => Err(CharPolyError::Underdetermined),
        crate::linalg::SolveOutcome::Inconsistent => Err(CharPolyError::Inconsistent),
    }
}

/// Inner product `<P, family(n)>` for each `n` in `[n_start, n_stop]`;
/// returns the common value when all agree, otherwise reports every value.
pub fn stable_inner_product(
    p: &CharacterPolynomial,
    family: &dyn Fn(u32) -> ClassFunction,
    n_start: u32,
    n_stop: u32,
) -> Result<Cyclotomic, CharPolyError> {
    assert!(n_stop >= n_start + 2, "window must span at least three n");
    let mut values: Vec<(u32, Cyclotomic)> = Vec::new();
    for n in n_start..=n_stop {
        let f = family(n);
        let pf = p.as_class_function(n);
        values.push((n, inner_product(&pf, &f)?));
    }
    let first = values[0].1.clone();
    if values.iter().all(|(_, v)| *v == first) {
        Ok(first)
    } else {
        Err(CharPolyError::Unstable(
            values
                .into_iter()
                .map(|(n, v)| (n, v.to_string()))
                .collect(),
        ))
    }
}
