//! Sparse multivariate Laurent polynomials over the integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{serde_exact, BigInt, BigRat};

/// Exponent vector of a Laurent monomial; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(entries: Vec<i64>) -> Self {
        ExpVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExpVec(vec![0; dim])
    }

    /// The `i`-th unit vector in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.dim(), other.dim());
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.dim(), other.dim());
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn negated(&self) -> ExpVec {
        self.scaled(-1)
    }

    /// Graded degree `λ · m`.
    pub fn dot(&self, grading: &[i64]) -> i64 {
        self.0.iter().zip(grading).map(|(a, b)| a * b).sum()
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for ExpVec {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}

impl From<&[i64]> for ExpVec {
    fn from(v: &[i64]) -> Self {
        ExpVec(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for ExpVec {
    fn from(v: [i64; N]) -> Self {
        ExpVec(v.to_vec())
    }
}

/// Which ring operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A Laurent polynomial in a fixed number of variables with integer
/// coefficients. Terms are kept in lexicographic exponent order and zero
/// coefficients are never stored, so `==` is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, 1)
    }

    pub fn constant(dim: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExpVec::zeros(dim), c)
    }

    pub fn monomial(exp: impl Into<ExpVec>, coeff: impl Into<BigInt>) -> Self {
        let exp = exp.into();
        let mut p = Self::zero(exp.dim());
        p.add_term(exp, coeff.into());
        p
    }

    /// The variable `z_i` in dimension `dim`.
    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(ExpVec::unit(dim, i), 1)
    }

    /// `1 - z^m`.
    pub fn one_minus(m: &ExpVec) -> Self {
        let mut p = Self::one(m.dim());
        p.add_term(m.clone(), -BigInt::one());
        p
    }

    /// `z^m - 1`.
    pub fn minus_one(m: &ExpVec) -> Self {
        -Self::one_minus(m)
    }

    /// Builds a polynomial from possibly repeated terms, merging coefficients.
    pub fn from_terms<I, E, C>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<ExpVec>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            let e = e.into();
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    /// Adds `coeff * z^exp` in place.
    pub fn add_term(&mut self, exp: ExpVec, coeff: BigInt) {
        assert_eq!(exp.dim(), self.dim, "exponent of wrong dimension");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    fn check_dim(&self, other: &LaurentPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut acc: HashMap<ExpVec, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry(e1.plus(e2)).or_default() += c1 * c2;
            }
        }
        Ok(LaurentPoly {
            dim: self.dim,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &ExpVec) -> LaurentPoly {
        assert_eq!(shift.dim(), self.dim);
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = Self::one(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut cache: HashMap<(usize, i64), BigRat> = HashMap::new();
        let mut total = BigRat::zero();
        for (e, c) in &self.terms {
            let mut term = BigRat::from_integer(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k < 0 && point[i].is_zero() {
                    return Err(Error::Pole(format!(
                        "coordinate {i} is zero under exponent {k}"
                    )));
                }
                let factor = cache.entry((i, k)).or_insert_with(|| rat_pow(&point[i], k));
                term *= &*factor;
            }
            total += term;
        }
        Ok(total)
    }

    /// Value at the all-ones point of `∂^{k_1}_{z_1} ... ∂^{k_d}_{z_d} p`,
    /// via falling factorials of the exponents; no symbolic derivative is built.
    ///
    /// Panics if `order.len()` differs from the dimension.
    pub fn deriv_eval_at_one(&self, order: &[u32]) -> BigInt {
        assert_eq!(order.len(), self.dim, "order has wrong length");
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (&alpha, &k) in e.iter().zip(order) {
                term *= falling_factorial(alpha, k);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        total
    }

    /// Replaces every variable `z_i` by the monomial `z^{images[i]}`.
    pub fn substitute_monomials(&self, images: &[ExpVec]) -> Result<LaurentPoly> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, |m| m.dim());
        if let Some(bad) = images.iter().find(|m| m.dim() != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.dim(),
            });
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut image = ExpVec::zeros(target);
            for (&k, m) in e.iter().zip(images) {
                if k != 0 {
                    image = image.plus(&m.scaled(k));
                }
            }
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Renames variable `i` to variable `positions[i]` of a `target_dim`-variate ring.
    pub fn embed(&self, target_dim: usize, positions: &[usize]) -> LaurentPoly {
        let images: Vec<ExpVec> = positions
            .iter()
            .map(|&p| ExpVec::unit(target_dim, p))
            .collect();
        self.substitute_monomials(&images)
            .expect("embedding images are consistent")
    }

    pub fn min_degree(&self, grading: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| e.dot(grading)).min()
    }

    pub fn max_degree(&self, grading: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| e.dot(grading)).max()
    }

    /// Keeps the terms of graded degree at most `max_degree`.
    pub fn truncate(&self, grading: &[i64], max_degree: i64) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.dot(grading) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest exponent of variable `i`, if the polynomial is nonzero.
    pub fn degree_in(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&k| k < 0))
    }

    /// Renders with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest terms first reads more naturally
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k != 0)
                .map(|(&k, name)| {
                    if k == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Default variable names: `u, v, w` up to three variables, `z1, z2, ...` beyond.
pub fn default_var_names(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["u", "v", "w"][..dim]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=dim).map(|i| format!("z{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.dim)))
    }
}

/// `α (α-1) ... (α-k+1)`; the empty product for `k = 0`.
pub(crate) fn falling_factorial(alpha: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(alpha - i))
}

fn rat_pow(x: &BigRat, k: i64) -> BigRat {
    let mag = u32::try_from(k.unsigned_abs()).expect("exponent too large");
    let p = Pow::pow(x, mag);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Exact ring arithmetic with dimension checking.
pub fn poly_arith(p: &LaurentPoly, q: &LaurentPoly, op: ArithOp) -> Result<LaurentPoly> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Sub => p.try_sub(q),
        ArithOp::Mul => p.try_mul(q),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            /// Panics on dimension mismatch; use the `try_*` methods to avoid that.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("dimension mismatch")
            }
        }

        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i64>,
    #[serde(with = "serde_exact::int")]
    coeff: BigInt,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        LaurentPoly::from_terms(
            repr.dim,
            repr.terms
                .into_iter()
                .map(|t| (ExpVec::new(t.exp), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn mono(e: &[i64], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(ExpVec::from(e), c)
    }

    #[test]
    fn arith_examples() {
        let one = LaurentPoly::one(2);
        let uv = mono(&[1, 1], 1);
        let lhs = &one + &uv;
        let rhs = &uv - &one;
        assert_eq!(&lhs * &rhs, &mono(&[2, 2], 1) - &one);
        assert_eq!(&lhs + &LaurentPoly::zero(2), lhs);
        assert_eq!(&mono(&[-1], 1) * &mono(&[1], 1), LaurentPoly::one(1));
        assert!(matches!(
            poly_arith(&one, &LaurentPoly::one(3), ArithOp::Add),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!((&uv - &uv).is_zero());
    }

    #[test]
    fn eval_examples() {
        let p = &LaurentPoly::one(2) + &mono(&[1, 1], 1);
        assert_eq!(p.eval(&[ratio(2, 1), ratio(3, 1)]).unwrap(), ratio(7, 1));
        let q = mono(&[2, 2], 1);
        assert_eq!(q.eval(&[ratio(1, 1), ratio(1, 1)]).unwrap(), ratio(1, 1));
        let r = mono(&[-1, 1], 1);
        assert_eq!(r.eval(&[ratio(2, 1), ratio(4, 1)]).unwrap(), ratio(2, 1));
        assert!(matches!(
            r.eval(&[ratio(0, 1), ratio(4, 1)]),
            Err(Error::Pole(_))
        ));
        assert_eq!(
            mono(&[0, 3], 5).eval(&[ratio(0, 1), ratio(1, 2)]).unwrap(),
            ratio(5, 8)
        );
    }

    #[test]
    fn deriv_examples() {
        assert_eq!(mono(&[3], 1).deriv_eval_at_one(&[1]), BigInt::from(3));
        assert_eq!(mono(&[2, 1], 1).deriv_eval_at_one(&[1, 1]), BigInt::from(2));
        let p = &mono(&[2, 3], 1) - &LaurentPoly::one(2);
        assert_eq!(p.deriv_eval_at_one(&[0, 0]), BigInt::zero());
        // d^2/du^2 u^-1 = 2 u^-3
        assert_eq!(mono(&[-1], 1).deriv_eval_at_one(&[2]), BigInt::from(2));
    }

    #[test]
    fn substitution_examples() {
        let uv = mono(&[1, 1], 1);
        let images = [ExpVec::from([1, 1]), ExpVec::from([0, 1])];
        assert_eq!(uv.substitute_monomials(&images).unwrap(), mono(&[1, 2], 1));

        let u = mono(&[1], 1);
        assert_eq!(
            u.substitute_monomials(&[ExpVec::from([4, 7])]).unwrap(),
            mono(&[4, 7], 1)
        );

        let sum = &mono(&[1, 0], 1) + &mono(&[0, 1], 1);
        let collide = [ExpVec::from([1, 0]), ExpVec::from([1, 0])];
        assert_eq!(
            sum.substitute_monomials(&collide).unwrap(),
            mono(&[1, 0], 2)
        );
        assert!(sum.substitute_monomials(&collide[..1]).is_err());
    }

    #[test]
    fn display_and_json() {
        let p = LaurentPoly::from_terms(2, [([0, 0], 1), ([1, -2], -3), ([2, 0], 1)]).unwrap();
        assert_eq!(p.to_string(), "u^2 - 3*u*v^-2 + 1");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"terms":[{"exp":[0,0],"coeff":"1"},{"exp":[1,-2],"coeff":"-3"},{"exp":[2,0],"coeff":"1"}]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LaurentPoly>(
            r#"{"dim":2,"terms":[{"exp":[1],"coeff":"1"}]}"#
        )
        .is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(dim: usize) -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((prop::collection::vec(-3i64..=3, dim), -5i64..=5), 0..=4)
                .prop_map(move |ts| {
                    LaurentPoly::from_terms(dim, ts.into_iter().map(|(e, c)| (ExpVec::new(e), c)))
                        .unwrap()
                })
        }

        /// Naive symbolic derivative of a single variable, kept separate from
        /// the falling-factorial evaluation it checks.
        fn differentiate(p: &LaurentPoly, var: usize) -> LaurentPoly {
            let mut out = LaurentPoly::zero(p.dim());
            for (e, c) in p.terms() {
                let k = e[var];
                if k != 0 {
                    let mut e2 = e.to_vec();
                    e2[var] -= 1;
                    out.add_term(ExpVec::new(e2), c * BigInt::from(k));
                }
            }
            out
        }

        proptest! {
            #[test]
            fn ring_axioms(p in poly(2), q in poly(2), r in poly(2)) {
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
                prop_assert_eq!(&p + &q, &q + &p);
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert!((&(&p - &q) + &q - p).is_zero());
            }

            #[test]
            fn zero_order_derivative_is_evaluation(p in poly(3)) {
                let ones = vec![BigRat::one(); 3];
                prop_assert_eq!(BigRat::from_integer(p.deriv_eval_at_one(&[0, 0, 0])), p.eval(&ones).unwrap());
            }

            #[test]
            fn derivative_matches_symbolic(p in poly(3), k in prop::collection::vec(0u32..=4, 3)) {
                let mut d = p.clone();
                for (var, &times) in k.iter().enumerate() {
                    for _ in 0..times {
                        d = differentiate(&d, var);
                    }
                }
                let ones = vec![BigRat::one(); 3];
                prop_assert_eq!(BigRat::from_integer(p.deriv_eval_at_one(&k)), d.eval(&ones).unwrap());
            }

            #[test]
            fn substitution_is_a_homomorphism(
                p in poly(2),
                q in poly(2),
                imgs in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2),
            ) {
                let images: Vec<ExpVec> = imgs.into_iter().map(ExpVec::new).collect();
                let s = |x: &LaurentPoly| x.substitute_monomials(&images).unwrap();
                prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
                prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
            }

            #[test]
            fn json_round_trip(p in poly(3)) {
                let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
                prop_assert_eq!(back, p);
            }
        }
    }
}
