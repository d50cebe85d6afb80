//! Sparse polynomials with arbitrary-precision integer coefficients.
//!
//! One generic container covers the three shapes used in the crate:
//! univariate polynomials in `y` ([`Poly1`]), Laurent polynomials in `y`
//! ([`Laurent`]) and bivariate polynomials in `x, y` ([`Poly2`]). Zero
//! coefficients are never stored. Values only become rational on evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent type of a monomial: the additive monoid the polynomial lives over.
pub trait Exponent: Copy + Ord + fmt::Debug {
    const ARITY: usize;
    fn zero() -> Self;
    fn combine(self, other: Self) -> Self;
    fn to_components(self) -> Vec<i64>;
    fn from_components(c: &[i64]) -> Option<Self>;
    /// Writes the monomial, e.g. `x^2*y`. The zero exponent renders as "".
    fn render(self) -> String;
    fn eval(self, point: &[Rational]) -> Result<Rational>;
}

fn power_str(var: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

fn rat_pow(base: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && base.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(num_traits::pow::Pow::pow(base, e as i32))
}

impl Exponent for u32 {
    const ARITY: usize = 1;
    fn zero() -> Self {
        0
    }
    fn combine(self, other: Self) -> Self {
        self + other
    }
    fn to_components(self) -> Vec<i64> {
        vec![self as i64]
    }
    fn from_components(c: &[i64]) -> Option<Self> {
        match c {
            [e] => u32::try_from(*e).ok(),
            _ => None,
        }
    }
    fn render(self) -> String {
        power_str("y", self as i64).unwrap_or_default()
    }
    fn eval(self, point: &[Rational]) -> Result<Rational> {
        rat_pow(&point[0], self as i64)
    }
}

impl Exponent for i32 {
    const ARITY: usize = 1;
    fn zero() -> Self {
        0
    }
    fn combine(self, other: Self) -> Self {
        self + other
    }
    fn to_components(self) -> Vec<i64> {
        vec![self as i64]
    }
    fn from_components(c: &[i64]) -> Option<Self> {
        match c {
            [e] => i32::try_from(*e).ok(),
            _ => None,
        }
    }
    fn render(self) -> String {
        power_str("y", self as i64).unwrap_or_default()
    }
    fn eval(self, point: &[Rational]) -> Result<Rational> {
        rat_pow(&point[0], self as i64)
    }
}

impl Exponent for (u32, u32) {
    const ARITY: usize = 2;
    fn zero() -> Self {
        (0, 0)
    }
    fn combine(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn to_components(self) -> Vec<i64> {
        vec![self.0 as i64, self.1 as i64]
    }
    fn from_components(c: &[i64]) -> Option<Self> {
        match c {
            [a, b] => Some((u32::try_from(*a).ok()?, u32::try_from(*b).ok()?)),
            _ => None,
        }
    }
    fn render(self) -> String {
        [power_str("x", self.0 as i64), power_str("y", self.1 as i64)]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("*")
    }
    fn eval(self, point: &[Rational]) -> Result<Rational> {
        Ok(rat_pow(&point[0], self.0 as i64)? * rat_pow(&point[1], self.1 as i64)?)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

pub type Poly1 = SparsePoly<u32>;
pub type Poly2 = SparsePoly<(u32, u32)>;
pub type Laurent = SparsePoly<i32>;

impl<E: Exponent> Default for SparsePoly<E> {
    fn default() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }
}

impl<E: Exponent> SparsePoly<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), 1)
    }

    pub fn monomial(exp: E, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * monomial(exp)` in place.
    pub fn add_term(&mut self, exp: E, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exp: E) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (E, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_term(&self) -> Option<(E, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn max_exponent(&self) -> Option<E> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by the monomial `y^shift` (or `x^a y^b`).
    pub fn shift(&self, shift: E) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(e, c)| (e.combine(shift), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact evaluation; `point` holds one value per variable.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        assert_eq!(point.len(), E::ARITY, "evaluation point has the wrong arity");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += e.eval(point)? * Rational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> SparsePoly<F> {
        SparsePoly::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }
}

impl Poly1 {
    /// `1 + y + … + y^(t-1)` when `low == 0`, `y + … + y^t` when `low == 1`.
    pub fn geometric_block(t: u32, low: u32) -> Poly1 {
        Poly1::from_terms((low..low + t).map(|e| (e, 1)))
    }

    pub fn to_laurent(&self) -> Laurent {
        self.map_exponents(|e| e as i32)
    }

    pub fn eval_at(&self, y: &Rational) -> Result<Rational> {
        self.eval(std::slice::from_ref(y))
    }
}

impl Laurent {
    pub fn eval_at(&self, y: &Rational) -> Result<Rational> {
        self.eval(std::slice::from_ref(y))
    }
}

impl Poly2 {
    pub fn x() -> Poly2 {
        Poly2::monomial((1, 0), 1)
    }

    pub fn y() -> Poly2 {
        Poly2::monomial((0, 1), 1)
    }

    pub fn eval_at(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        self.eval(&[x.clone(), y.clone()])
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }
}

impl<E: Exponent> Add<&SparsePoly<E>> for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn add(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<E: Exponent> Sub<&SparsePoly<E>> for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn sub(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<E: Exponent> Mul<&SparsePoly<E>> for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn mul(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
        let mut out = SparsePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.combine(*eb), ca * cb);
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn neg(self) -> SparsePoly<E> {
        SparsePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<E: Exponent> $tr<SparsePoly<E>> for SparsePoly<E> {
            type Output = SparsePoly<E>;
            fn $m(self, rhs: SparsePoly<E>) -> SparsePoly<E> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Terms in decreasing lexicographic exponent order, e.g. `x^2 + x + y`.
impl<E: Exponent> fmt::Display for SparsePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = e.render();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl<E: Exponent> fmt::Debug for SparsePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

/// JSON form: a list of `[exponent…, "coefficient"]` in increasing exponent
/// order, coefficients as decimal strings.
impl<E: Exponent> Serialize for SparsePoly<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut row: Vec<serde_json::Value> = e.to_components().into_iter().map(Into::into).collect();
                row.push(c.to_string().into());
                row
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de, E: Exponent> Deserialize<'de> for SparsePoly<E> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut p = SparsePoly::zero();
        for row in rows {
            let Some((coeff, exps)) = row.split_last() else {
                return Err(D::Error::custom("empty term"));
            };
            let exps: Option<Vec<i64>> = exps.iter().map(|v| v.as_i64()).collect();
            let exp = exps.as_deref().and_then(E::from_components).ok_or_else(|| D::Error::custom("bad exponent"))?;
            let coeff: BigInt = coeff
                .as_str()
                .ok_or_else(|| D::Error::custom("coefficient must be a decimal string"))?
                .parse()
                .map_err(D::Error::custom)?;
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p1(terms: &[(u32, i64)]) -> Poly1 {
        Poly1::from_terms(terms.iter().copied())
    }

    fn p2(terms: &[((u32, u32), i64)]) -> Poly2 {
        Poly2::from_terms(terms.iter().copied())
    }

    #[test]
    fn arithmetic_examples() {
        let a = p1(&[(1, 1), (0, 1)]);
        let b = p1(&[(1, 1), (0, -1)]);
        assert_eq!(&a * &b, p1(&[(2, 1), (0, -1)]));
        assert_eq!(&a + &Poly1::zero(), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn square_matches_convolution() {
        let p = p1(&[(1, 1), (2, 1), (3, 1)]);
        // Convolution oracle on dense coefficient vectors.
        let dense = [0i64, 1, 1, 1];
        let mut conv = [0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                conv[i + j] += dense[i] * dense[j];
            }
        }
        let expected = Poly1::from_terms(conv.iter().enumerate().map(|(e, &c)| (e as u32, c)));
        assert_eq!(p.pow(2), expected);
        assert_eq!(expected, p1(&[(2, 1), (3, 2), (4, 3), (5, 2), (6, 1)]));
    }

    #[test]
    fn geometric_blocks() {
        assert_eq!(Poly1::geometric_block(1, 0), Poly1::one());
        assert_eq!(Poly1::geometric_block(3, 0), p1(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(Poly1::geometric_block(2, 1), p1(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn evaluation() {
        let triangle = p2(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(triangle.eval_at(&q(2, 1), &q(1, 1)).unwrap(), q(7, 1));
        let l = Laurent::from_terms([(-1, 1), (0, 1)]);
        assert_eq!(l.eval_at(&q(2, 1)).unwrap(), q(3, 2));
        assert_eq!(l.eval_at(&q(0, 1)), Err(Error::ZeroPoint));
        let p = p2(&[((3, 1), 4), ((0, 0), -2), ((1, 5), 7)]);
        assert_eq!(p.eval_at(&q(1, 1), &q(1, 1)).unwrap(), Rational::from_integer(p.coefficient_sum()));
    }

    #[test]
    fn coefficients() {
        assert_eq!(Poly1::geometric_block(3, 0).coefficient(1), BigInt::from(1));
        let triangle = p2(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(triangle.coefficient((0, 1)), BigInt::from(1));
        assert_eq!(triangle.coefficient((5, 5)), BigInt::zero());
    }

    #[test]
    fn rendering() {
        let triangle = p2(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(triangle.to_string(), "x^2 + x + y");
        assert_eq!(Poly2::one().to_string(), "1");
        assert_eq!(p2(&[((1, 2), -3), ((0, 0), 2)]).to_string(), "-3*x*y^2 + 2");
        assert_eq!(Laurent::from_terms([(-1, 1), (1, -1)]).to_string(), "-y + y^-1");
        assert_eq!(Poly1::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let triangle = p2(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        let json = serde_json::to_string(&triangle).unwrap();
        assert_eq!(json, r#"[[0,1,"1"],[1,0,"1"],[2,0,"1"]]"#);
        let back: Poly2 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, triangle);
        assert!(serde_json::from_str::<Poly2>(r#"[[1,"2"]]"#).is_err());
    }

    fn arb_poly2() -> impl Strategy<Value = Poly2> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(Poly2::from_terms)
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..6).prop_map(Laurent::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly2(), b in arb_poly2(), c in arb_poly2()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn laurent_evaluation_is_multiplicative(a in arb_laurent(), b in arb_laurent(), n in 1i64..7, d in 1i64..7, neg: bool) {
            let y = q(if neg { -n } else { n }, d);
            let prod = (&a * &b).eval_at(&y).unwrap();
            prop_assert_eq!(prod, a.eval_at(&y).unwrap() * b.eval_at(&y).unwrap());
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_poly2(), k in 0u32..4) {
            let mut expected = Poly2::one();
            for _ in 0..k {
                expected = &expected * &a;
            }
            prop_assert_eq!(a.pow(k), expected);
        }

        #[test]
        fn json_round_trip(a in arb_poly2()) {
            let back: Poly2 = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
