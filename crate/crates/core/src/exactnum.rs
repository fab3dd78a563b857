//! Exact arithmetic over `Q` and the cyclotomic fields `Q(zeta_d)`.
//!
//! A [`Cyclotomic`] is stored canonically on the power basis
//! `1, zeta, ..., zeta^(phi(d)-1)` reduced modulo the d-th cyclotomic
//! polynomial, so equality of values is equality of representations.
//! Coefficients are arbitrary-precision rationals.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

pub use num::bigint::BigInt as Integer;

/// Errors from cyclotomic field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("order mismatch: Q(zeta_{0}) vs Q(zeta_{1}) with neither operand rational")]
    OrderMismatch(u32, u32),
}

/// Euler totient.
pub fn phi(d: u32) -> u32 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Quotient of exact polynomial division; panics if the division is not exact.
fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let mut rem: Vec<Rational> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    while rem.len() >= den.len() {
        let k = rem.len() - 1 - dn;
        let c = &rem[rem.len() - 1] / &lead;
        for i in 0..=dn {
            let t = &c * &den[i];
            rem[k + i] -= t;
        }
        quot[k] = c;
        poly_trim(&mut rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

/// Remainder of `p` modulo the monic polynomial `m` (lowest degree first).
fn poly_rem_monic(p: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut rem: Vec<Rational> = p.to_vec();
    poly_trim(&mut rem);
    let dm = m.len() - 1;
    debug_assert!(m[dm].is_one());
    while rem.len() > dm {
        let c = rem.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let k = rem.len() - dm;
        for i in 0..dm {
            let t = &c * &m[i];
            rem[k + i] -= t;
        }
        poly_trim(&mut rem);
    }
    rem
}

static CYCLO_POLY_CACHE: Lazy<Mutex<HashMap<u32, Vec<Rational>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The d-th cyclotomic polynomial `Phi_d`, monic of degree `phi(d)`,
/// coefficients lowest degree first.
///
/// Computed by exact division: `Phi_d = (x^d - 1) / prod_(e|d, e<d) Phi_e`.
pub fn cyclotomic_polynomial(d: u32) -> Vec<Rational> {
    assert!(d >= 1, "cyclotomic polynomial needs d >= 1");
    if let Some(p) = CYCLO_POLY_CACHE.lock().unwrap().get(&d) {
        return p.clone();
    }
    let result = if d == 1 {
        vec![rat_i64(-1), rat_i64(1)]
    } else {
        // x^d - 1
        let mut num = vec![Rational::zero(); d as usize + 1];
        num[0] = rat_i64(-1);
        num[d as usize] = rat_i64(1);
        let mut den = vec![rat_i64(1)];
        for e in 1..d {
            if d.is_multiple_of(e) {
                den = poly_mul(&den, &cyclotomic_polynomial(e));
            }
        }
        poly_div_exact(&num, &den)
    };
    CYCLO_POLY_CACHE
        .lock()
        .unwrap()
        .insert(d, result.clone());
    result
}

/// An element of `Q(zeta_d)` in canonical form: coefficients of
/// `1, zeta, ..., zeta^(phi(d)-1)` after reduction modulo `Phi_d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn from_reduced(order: u32, mut coeffs: Vec<Rational>) -> Self {
        let deg = phi(order) as usize;
        coeffs.resize(deg, Rational::zero());
        Cyclotomic { order, coeffs }
    }

    /// Build from an arbitrary polynomial in `zeta_d` (lowest degree first).
    pub fn from_poly(order: u32, poly: &[Rational]) -> Self {
        assert!(order >= 1);
        let m = cyclotomic_polynomial(order);
        Self::from_reduced(order, poly_rem_monic(poly, &m))
    }

    /// The rational number `r` viewed in `Q(zeta_d)`.
    pub fn from_rational(order: u32, r: Rational) -> Self {
        assert!(order >= 1);
        Self::from_reduced(order, vec![r])
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, rat_i64(n))
    }

    pub fn from_bigint(order: u32, n: BigInt) -> Self {
        Self::from_rational(order, Rational::from_integer(n))
    }

    pub fn zero(order: u32) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients (length `phi(d)`).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Returns the value as an integer if it is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Re-embed into `Q(zeta_target)`; only rational values may change order.
    fn promoted(&self, target: u32) -> Option<Cyclotomic> {
        if self.order == target {
            return Some(self.clone());
        }
        self.as_rational()
            .map(|r| Cyclotomic::from_rational(target, r))
    }

    fn common_order(a: &Cyclotomic, b: &Cyclotomic) -> Result<(Cyclotomic, Cyclotomic), NumError> {
        if a.order == b.order {
            return Ok((a.clone(), b.clone()));
        }
        if let Some(ap) = a.promoted(b.order) {
            return Ok((ap, b.clone()));
        }
        if let Some(bp) = b.promoted(a.order) {
            return Ok((a.clone(), bp));
        }
        Err(NumError::OrderMismatch(a.order, b.order))
    }

    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let (a, b) = Self::common_order(self, other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Ok(Cyclotomic::from_reduced(a.order, coeffs))
    }

    pub fn checked_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let (a, b) = Self::common_order(self, other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x - y)
            .collect();
        Ok(Cyclotomic::from_reduced(a.order, coeffs))
    }

    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let (a, b) = Self::common_order(self, other)?;
        Ok(Cyclotomic::from_poly(
            a.order,
            &poly_mul(&a.coeffs, &b.coeffs),
        ))
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, NumError> {
        let (a, b) = Self::common_order(self, other)?;
        let inv = b.inverse()?;
        a.checked_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_d` in `Q[x]`.
    pub fn inverse(&self) -> Result<Cyclotomic, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero(self.order));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(self.order, r.recip()));
        }
        let modulus = cyclotomic_polynomial(self.order);
        // Extended Euclid: maintain r = s*f + t*Phi, keeping only s.
        let mut r0: Vec<Rational> = modulus.clone();
        let mut r1: Vec<Rational> = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let mut s2 = s0.clone();
            let qs1 = poly_mul(&q, &s1);
            sub_assign_poly(&mut s2, &qs1);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is gcd(f, Phi) = nonzero constant since Phi_d is irreducible.
        debug_assert_eq!(r0.len(), 1, "Phi_d must be coprime to nonzero elements");
        let c = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
        Ok(Cyclotomic::from_poly(self.order, &inv))
    }

    /// Complex conjugation, the field automorphism `zeta_d -> zeta_d^(-1)`.
    pub fn conjugate(&self) -> Cyclotomic {
        let d = self.order;
        if d <= 2 {
            return self.clone();
        }
        let mut poly = vec![Rational::zero(); d as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((d as usize) - k) % d as usize;
                poly[e] += c;
            }
        }
        Cyclotomic::from_poly(d, &poly)
    }

    /// JSON encoding `{"d": d, "coeffs": [[num, den], ...]}` in power-basis
    /// order. Integers are emitted as JSON numbers at any magnitude.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::Value::Array(vec![
                    bigint_json(c.numer()),
                    bigint_json(c.denom()),
                ])
            })
            .collect();
        serde_json::json!({ "d": self.order, "coeffs": coeffs })
    }
}

/// Serialize a `BigInt` as an arbitrary-precision JSON number.
pub fn bigint_json(n: &BigInt) -> serde_json::Value {
    let number = serde_json::Number::from_str(&n.to_string())
        .expect("big integer is a valid JSON number");
    serde_json::Value::Number(number)
}

/// Serialize a rational as `[num, den]`.
pub fn rational_json(r: &Rational) -> serde_json::Value {
    serde_json::Value::Array(vec![bigint_json(r.numer()), bigint_json(r.denom())])
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = num.to_vec();
    poly_trim(&mut rem);
    let mut d = den.to_vec();
    poly_trim(&mut d);
    let dn = d.len() - 1;
    let lead = d[dn].clone();
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    while rem.len() >= d.len() {
        let k = rem.len() - 1 - dn;
        let c = &rem[rem.len() - 1] / &lead;
        for i in 0..=dn {
            let t = &c * &d[i];
            rem[k + i] -= t;
        }
        quot[k] = c.clone();
        poly_trim(&mut rem);
    }
    (quot, rem)
}

fn sub_assign_poly(a: &mut Vec<Rational>, b: &[Rational]) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (i, x) in b.iter().enumerate() {
        a[i] -= x;
    }
    poly_trim(a);
}

/// The primitive root of unity power `zeta_d^k`, reduced modulo `Phi_d`.
pub fn zeta(d: u32, k: i64) -> Cyclotomic {
    assert!(d >= 1);
    let e = k.rem_euclid(d as i64) as usize;
    let mut poly = vec![Rational::zero(); e + 1];
    poly[e] = Rational::one();
    Cyclotomic::from_poly(d, &poly)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(d={}, {})", self.order, self)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$checked(&rhs).expect("cyclotomic order mismatch")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::from_reduced(self.order, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        // Phi_1 = x - 1
        assert_eq!(cyclotomic_polynomial(1), vec![rat_i64(-1), rat_i64(1)]);
        // Phi_4 = x^2 + 1
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![rat_i64(1), rat_i64(0), rat_i64(1)]
        );
        // Phi_6 = x^2 - x + 1
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![rat_i64(1), rat_i64(-1), rat_i64(1)]
        );
    }

    #[test]
    fn cyclotomic_product_is_x_d_minus_one() {
        for d in 1..=30u32 {
            let mut prod = vec![rat_i64(1)];
            for e in 1..=d {
                if d % e == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(e));
                }
            }
            let mut expect = vec![Rational::zero(); d as usize + 1];
            expect[0] = rat_i64(-1);
            expect[d as usize] = rat_i64(1);
            assert_eq!(prod, expect, "product of Phi_e over e|{d}");
        }
    }

    #[test]
    fn zeta_powers() {
        assert_eq!(zeta(4, 2), Cyclotomic::from_integer(4, -1));
        assert_eq!(zeta(3, 3), Cyclotomic::one(3));
        // zeta_3^2 = -1 - zeta_3 on the power basis
        let z32 = zeta(3, 2);
        assert_eq!(z32.coeffs(), &[rat_i64(-1), rat_i64(-1)]);
        // negative exponents wrap
        assert_eq!(zeta(5, -1), zeta(5, 4));
    }

    #[test]
    fn root_of_unity_order() {
        for d in 1..=12u32 {
            let mut p = Cyclotomic::one(d);
            for _ in 0..d {
                p = &p * &zeta(d, 1);
            }
            assert!(p.is_one(), "zeta_{d}^{d} = 1");
        }
    }

    #[test]
    fn geometric_sum_vanishes() {
        for d in 2..=12u32 {
            let mut s = Cyclotomic::zero(d);
            for k in 0..d {
                s = &s + &zeta(d, k as i64);
            }
            assert!(s.is_zero(), "sum of all zeta_{d} powers");
        }
    }

    #[test]
    fn arithmetic_examples() {
        // zeta_3 * zeta_3^2 = 1
        assert!((&zeta(3, 1) * &zeta(3, 2)).is_one());
        // (1 + zeta_4)(1 - zeta_4) = 2
        let one = Cyclotomic::one(4);
        let a = &one + &zeta(4, 1);
        let b = &one - &zeta(4, 1);
        assert_eq!(&a * &b, Cyclotomic::from_integer(4, 2));
    }

    #[test]
    fn inverse_multiplies_back() {
        let x = &Cyclotomic::one(3) + &zeta(3, 1);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());

        let y = Cyclotomic::from_poly(5, &[rat(1, 2), rat(-2, 3), rat_i64(1), rat_i64(7)]);
        assert!((&y * &y.inverse().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_errors() {
        let z = Cyclotomic::zero(3);
        assert_eq!(
            Cyclotomic::one(3).checked_div(&z),
            Err(NumError::DivisionByZero(3))
        );
    }

    #[test]
    fn order_mismatch_rules() {
        let a = zeta(3, 1);
        let b = zeta(4, 1);
        assert_eq!(a.checked_add(&b), Err(NumError::OrderMismatch(3, 4)));
        // rational operands promote
        let r = Cyclotomic::from_integer(1, 2);
        assert_eq!(a.checked_mul(&r).unwrap(), &a + &a);
        // a d=4 value that happens to be rational promotes too
        let two4 = Cyclotomic::from_integer(4, 2);
        assert_eq!(a.checked_mul(&two4).unwrap(), &a + &a);
    }

    #[test]
    fn conjugation() {
        assert_eq!(zeta(3, 1).conjugate(), zeta(3, 2));
        let r = Cyclotomic::from_rational(7, rat(3, 5));
        assert_eq!(r.conjugate(), r);
        for d in 1..=8u32 {
            for k in 0..d {
                let a = zeta(d, k as i64);
                assert_eq!(a.conjugate().conjugate(), a);
            }
        }
    }

    #[test]
    fn json_shape() {
        let v = &zeta(4, 1) + &Cyclotomic::from_rational(4, rat(1, 2));
        let j = v.to_json();
        assert_eq!(j["d"], 4);
        assert_eq!(j["coeffs"][0][0], serde_json::json!(1));
        assert_eq!(j["coeffs"][0][1], serde_json::json!(2));
        assert_eq!(j["coeffs"][1][0], serde_json::json!(1));
    }
}
