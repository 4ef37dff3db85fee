//! Short rational functions: signed sums of Laurent numerators over products
//! of binomials `1 - z^m`.
//!
//! Identities between such sums are decided by clearing denominators and
//! comparing plain Laurent polynomials. Series expansion is only used as an
//! oracle for cones that are pointed with respect to a common grading.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{BigInt, BigRat};
use crate::laurent::{default_var_names, ExpVec, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(s: i8) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.as_i8())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = i8::deserialize(d)?;
        Sign::from_i8(raw)
            .ok_or_else(|| de::Error::custom(format!("sign must be 1 or -1, got {raw}")))
    }
}

/// The denominator factor `1 - z^m` with `m != 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct BinFactor(ExpVec);

impl BinFactor {
    pub fn new(m: impl Into<ExpVec>) -> Result<Self> {
        let m = m.into();
        if m.is_zero() {
            return Err(Error::Domain("binomial factor with zero monomial".into()));
        }
        Ok(BinFactor(m))
    }

    pub fn monomial(&self) -> &ExpVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `1 - z^m` as a polynomial.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(&self.0)
    }
}

impl<'de> Deserialize<'de> for BinFactor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        BinFactor::new(ExpVec::deserialize(d)?).map_err(de::Error::custom)
    }
}

/// How a raw denominator factor is written before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `1 - z^m`
    OneMinus,
    /// `z^m - 1`
    MinusOne,
}

/// One summand `sign * numer / Π (1 - z^m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatTerm {
    pub sign: Sign,
    pub numer: LaurentPoly,
    pub denom: Vec<BinFactor>,
}

impl RatTerm {
    /// Builds a term; factors are sorted so equal terms compare equal.
    pub fn new(sign: Sign, numer: LaurentPoly, mut denom: Vec<BinFactor>) -> Result<Self> {
        if let Some(f) = denom.iter().find(|f| f.dim() != numer.dim()) {
            return Err(Error::DimensionMismatch {
                expected: numer.dim(),
                found: f.dim(),
            });
        }
        denom.sort();
        Ok(RatTerm { sign, numer, denom })
    }

    pub fn dim(&self) -> usize {
        self.numer.dim()
    }

    /// `sign * numer`.
    pub fn signed_numer(&self) -> LaurentPoly {
        match self.sign {
            Sign::Plus => self.numer.clone(),
            Sign::Minus => -&self.numer,
        }
    }

    pub fn eval(&self, point: &[BigRat]) -> Result<BigRat> {
        let mut den = BigRat::one();
        for f in &self.denom {
            let v = f.to_poly().eval(point)?;
            if v.is_zero() {
                return Err(Error::Pole(format!(
                    "factor 1 - z^{:?} vanishes at the point",
                    f.monomial().to_vec()
                )));
            }
            den *= v;
        }
        let num = self.numer.eval(point)?;
        Ok(match self.sign {
            Sign::Plus => num / den,
            Sign::Minus => -num / den,
        })
    }
}

/// Normalizes a term whose factors may be written as `z^m - 1`: each such
/// factor becomes `1 - z^m` and flips the sign.
pub fn normalize_term(
    sign: Sign,
    numer: LaurentPoly,
    raw_factors: &[(ExpVec, Orientation)],
) -> Result<RatTerm> {
    let mut sign = sign;
    let mut denom = Vec::with_capacity(raw_factors.len());
    for (m, orientation) in raw_factors {
        denom.push(BinFactor::new(m.clone())?);
        if *orientation == Orientation::MinusOne {
            sign = -sign;
        }
    }
    RatTerm::new(sign, numer, denom)
}

/// A finite signed sum of [`RatTerm`]s in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShortRatFunRepr")]
pub struct ShortRatFun {
    dim: usize,
    terms: Vec<RatTerm>,
}

#[derive(Deserialize)]
struct ShortRatFunRepr {
    dim: usize,
    terms: Vec<RatTerm>,
}

impl TryFrom<ShortRatFunRepr> for ShortRatFun {
    type Error = Error;

    fn try_from(r: ShortRatFunRepr) -> Result<Self> {
        let mut f = ShortRatFun::zero(r.dim);
        for t in r.terms {
            f.push(t)?;
        }
        Ok(f)
    }
}

impl ShortRatFun {
    pub fn zero(dim: usize) -> Self {
        ShortRatFun {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn from_term(term: RatTerm) -> Self {
        ShortRatFun {
            dim: term.dim(),
            terms: vec![term],
        }
    }

    /// A polynomial viewed as a rational function with empty denominator.
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::from_term(RatTerm::new(Sign::Plus, p, Vec::new()).expect("no factors"))
    }

    pub fn push(&mut self, term: RatTerm) -> Result<()> {
        if term.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: term.dim(),
            });
        }
        self.terms.push(term);
        Ok(())
    }

    /// Concatenates the terms of `other`.
    pub fn plus(&self, other: &ShortRatFun) -> Result<ShortRatFun> {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone())?;
        }
        Ok(out)
    }

    pub fn negated(&self) -> ShortRatFun {
        ShortRatFun {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| RatTerm {
                    sign: -t.sign,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Multiplies every numerator by `p`.
    pub fn mul_numerators(&self, p: &LaurentPoly) -> Result<ShortRatFun> {
        let mut out = ShortRatFun::zero(self.dim);
        for t in &self.terms {
            out.push(RatTerm {
                numer: t.numer.try_mul(p)?,
                ..t.clone()
            })?;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[RatTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact value at a point that is not a pole of any term.
    pub fn eval(&self, point: &[BigRat]) -> Result<BigRat> {
        self.terms
            .iter()
            .try_fold(BigRat::zero(), |acc, t| Ok(acc + t.eval(point)?))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let op = match (i, t.sign) {
                (0, Sign::Plus) => "",
                (0, Sign::Minus) => "-",
                (_, Sign::Plus) => " + ",
                (_, Sign::Minus) => " - ",
            };
            out.push_str(op);
            out.push('(');
            out.push_str(&t.numer.format_with(names));
            out.push(')');
            if !t.denom.is_empty() {
                out.push_str(" / (");
                let factors: Vec<String> = t
                    .denom
                    .iter()
                    .map(|f| {
                        let m = LaurentPoly::monomial(f.monomial().clone(), 1);
                        format!("(1 - {})", m.format_with(names))
                    })
                    .collect();
                out.push_str(&factors.join(""));
                out.push(')');
            }
        }
        out
    }
}

impl fmt::Display for ShortRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.dim)))
    }
}

/// Multiplies both sides of `lhs = rhs` by the least common multiset of all
/// binomial factors and returns the two resulting Laurent polynomials. The
/// identity holds as rational functions iff the outputs are equal.
pub fn clear_denominators(
    lhs: &ShortRatFun,
    rhs: &ShortRatFun,
) -> Result<(LaurentPoly, LaurentPoly)> {
    if lhs.dim != rhs.dim {
        return Err(Error::DimensionMismatch {
            expected: lhs.dim,
            found: rhs.dim,
        });
    }
    let mut common: BTreeMap<&BinFactor, usize> = BTreeMap::new();
    for t in lhs.terms.iter().chain(&rhs.terms) {
        for (f, n) in multiplicities(&t.denom) {
            let slot = common.entry(f).or_insert(0);
            *slot = (*slot).max(n);
        }
    }
    let mut cofactors: HashMap<Vec<BinFactor>, LaurentPoly> = HashMap::new();
    let mut side = |f: &ShortRatFun| -> LaurentPoly {
        let mut acc = LaurentPoly::zero(f.dim);
        for t in &f.terms {
            let co = cofactors.entry(t.denom.clone()).or_insert_with(|| {
                let own = multiplicities(&t.denom);
                common.iter().fold(LaurentPoly::one(f.dim), |p, (fac, &n)| {
                    let missing = n - own.get(fac).copied().unwrap_or(0);
                    if missing == 0 {
                        p
                    } else {
                        &p * &fac.to_poly().pow(missing as u32)
                    }
                })
            });
            acc = &acc + &(&t.signed_numer() * &*co);
        }
        acc
    };
    let l = side(lhs);
    let r = side(rhs);
    Ok((l, r))
}

fn multiplicities(factors: &[BinFactor]) -> BTreeMap<&BinFactor, usize> {
    let mut m = BTreeMap::new();
    for f in factors {
        *m.entry(f).or_insert(0) += 1;
    }
    m
}

/// Power-series expansion of `f`, keeping every monomial of graded degree at
/// most `max_degree`. Every denominator monomial must have positive degree.
pub fn expand_truncated(f: &ShortRatFun, grading: &[i64], max_degree: i64) -> Result<LaurentPoly> {
    if grading.len() != f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            found: grading.len(),
        });
    }
    let mut total = LaurentPoly::zero(f.dim);
    for t in &f.terms {
        for fac in &t.denom {
            if fac.monomial().dot(grading) <= 0 {
                return Err(Error::Grading(format!(
                    "factor 1 - z^{:?} has nonpositive degree under {:?}",
                    fac.monomial().to_vec(),
                    grading
                )));
            }
        }
        let Some(low) = t.numer.min_degree(grading) else {
            continue;
        };
        let budget = max_degree - low;
        if budget < 0 {
            continue;
        }
        let mut series = LaurentPoly::one(f.dim);
        for fac in &t.denom {
            let mut acc = series.clone();
            let mut power = series;
            loop {
                power = power.shift(fac.monomial()).truncate(grading, budget);
                if power.is_zero() {
                    break;
                }
                acc = &acc + &power;
            }
            series = acc;
        }
        let expanded = (&t.signed_numer() * &series).truncate(grading, max_degree);
        total = &total + &expanded;
    }
    Ok(total)
}

/// `∂^order numer (1) / ∂^order denom (1)`.
///
/// The caller asserts that `numer / denom` extends continuously to the
/// all-ones point; only the given order is validated.
pub fn lhospital_limit(numer: &LaurentPoly, denom: &LaurentPoly, order: &[u32]) -> Result<BigRat> {
    if numer.dim() != denom.dim() {
        return Err(Error::DimensionMismatch {
            expected: denom.dim(),
            found: numer.dim(),
        });
    }
    if order.len() != denom.dim() {
        return Err(Error::DimensionMismatch {
            expected: denom.dim(),
            found: order.len(),
        });
    }
    let d = denom.deriv_eval_at_one(order);
    if d.is_zero() {
        return Err(Error::Order(format!(
            "denominator derivative of order {order:?} vanishes at the all-ones point"
        )));
    }
    Ok(BigRat::new(numer.deriv_eval_at_one(order), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn mono(e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(ExpVec::from(e), 1)
    }

    fn fac(e: &[i64]) -> BinFactor {
        BinFactor::new(ExpVec::from(e)).unwrap()
    }

    fn term(sign: Sign, numer: LaurentPoly, denom: &[&[i64]]) -> RatTerm {
        RatTerm::new(sign, numer, denom.iter().map(|e| fac(e)).collect()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let numer = &LaurentPoly::one(2) + &mono(&[1, 2]);
        let t = normalize_term(
            Sign::Plus,
            numer.clone(),
            &[
                (ExpVec::from([0, 1]), Orientation::MinusOne),
                (ExpVec::from([2, 3]), Orientation::MinusOne),
            ],
        )
        .unwrap();
        assert_eq!(t, term(Sign::Plus, numer, &[&[0, 1], &[2, 3]]));

        let t = normalize_term(
            Sign::Plus,
            LaurentPoly::one(1),
            &[(ExpVec::from([1]), Orientation::OneMinus)],
        )
        .unwrap();
        assert_eq!(t, term(Sign::Plus, LaurentPoly::one(1), &[&[1]]));

        let t = normalize_term(
            Sign::Plus,
            mono(&[1]),
            &[(ExpVec::from([1]), Orientation::MinusOne)],
        )
        .unwrap();
        assert_eq!(t, term(Sign::Minus, mono(&[1]), &[&[1]]));

        assert!(matches!(
            normalize_term(
                Sign::Plus,
                mono(&[1]),
                &[(ExpVec::from([0]), Orientation::OneMinus)]
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn normalization_preserves_expansion() {
        // u / (u - 1) written raw versus normalized
        let t = normalize_term(
            Sign::Plus,
            mono(&[1]),
            &[(ExpVec::from([1]), Orientation::MinusOne)],
        )
        .unwrap();
        let f = ShortRatFun::from_term(t);
        let expected = -(mono(&[1]) + mono(&[2]) + mono(&[3]));
        assert_eq!(expand_truncated(&f, &[1], 3).unwrap(), expected);
    }

    #[test]
    fn clear_denominator_examples() {
        let geo = ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(1), &[&[1]]));
        let (l, r) = clear_denominators(&geo, &geo).unwrap();
        assert_eq!((l.clone(), r), (LaurentPoly::one(1), LaurentPoly::one(1)));

        let quad =
            ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(2), &[&[1, 0], &[0, 1]]));
        let mut split = ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(2), &[&[1, 0]]));
        split
            .push(term(Sign::Minus, mono(&[0, 1]), &[&[1, 0], &[0, 1]]))
            .unwrap();
        // 1/((1-u)(1-v)) vs 1/(1-u) - v/((1-u)(1-v)) is false; the identity needs +v
        let (l, r) = clear_denominators(&quad, &split).unwrap();
        assert_ne!(l, r);
        let mut split = ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(2), &[&[1, 0]]));
        split
            .push(term(Sign::Plus, mono(&[0, 1]), &[&[1, 0], &[0, 1]]))
            .unwrap();
        let (l, r) = clear_denominators(&quad, &split).unwrap();
        assert_eq!(l, LaurentPoly::one(2));
        assert_eq!(r, &(&LaurentPoly::one(2) - &mono(&[0, 1])) + &mono(&[0, 1]));
    }

    #[test]
    fn expansion_examples() {
        let geo = ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(1), &[&[1]]));
        let expected = LaurentPoly::from_terms(1, (0..=3).map(|k| ([k], 1))).unwrap();
        assert_eq!(expand_truncated(&geo, &[1], 3).unwrap(), expected);

        let quad =
            ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(2), &[&[1, 0], &[0, 1]]));
        let expected = LaurentPoly::from_terms(
            2,
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]].map(|e| (e, 1)),
        )
        .unwrap();
        assert_eq!(expand_truncated(&quad, &[1, 1], 2).unwrap(), expected);

        let bad = ShortRatFun::from_term(term(Sign::Plus, LaurentPoly::one(2), &[&[1, -1]]));
        assert!(matches!(
            expand_truncated(&bad, &[1, 1], 4),
            Err(Error::Grading(_))
        ));
    }

    #[test]
    fn expansion_handles_negative_numerator_degrees() {
        // v^-1 / (1 - v) = v^-1 + 1 + v + ...
        let f = ShortRatFun::from_term(term(Sign::Plus, mono(&[0, -1]), &[&[0, 1]]));
        let got = expand_truncated(&f, &[1, 1], 1).unwrap();
        let expected =
            LaurentPoly::from_terms(2, [([0, -1], 1), ([0, 0], 1), ([0, 1], 1)]).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn lhospital_examples() {
        let u = mono(&[1]);
        let one = LaurentPoly::one(1);
        let numer = &u.pow(2) - &one;
        let denom = &u - &one;
        assert_eq!(lhospital_limit(&numer, &denom, &[1]).unwrap(), ratio(2, 1));

        let p = &(&mono(&[1, 0]) - &LaurentPoly::one(2)) * &(&mono(&[0, 1]) - &LaurentPoly::one(2));
        assert_eq!(lhospital_limit(&p, &p, &[1, 1]).unwrap(), ratio(1, 1));
        assert!(matches!(
            lhospital_limit(&p, &p, &[1, 0]),
            Err(Error::Order(_))
        ));
    }

    #[test]
    fn tetrahedron_denominator_derivative() {
        for a in 1..=7i64 {
            for b in 1..=7i64 {
                for c in 1..=7i64 {
                    if !crate::exact::pairwise_coprime(&[a, b, c]) {
                        continue;
                    }
                    let d = crate::brion::tetrahedron_denominator(a, b, c);
                    assert_eq!(
                        d.deriv_eval_at_one(&[1, 2, 3]),
                        BigInt::from(-12 * b * c * c)
                    );
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let f = ShortRatFun::from_term(term(Sign::Minus, LaurentPoly::one(1), &[&[1]]));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"dim":1,"terms":[{"sign":-1,"numer":{"dim":1,"terms":[{"exp":[0],"coeff":"1"}]},"denom":[[1]]}]}"#
        );
        let back: ShortRatFun = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<ShortRatFun>(&json.replace("-1", "2")).is_err());
        assert!(serde_json::from_str::<ShortRatFun>(&json.replace("[[1]]", "[[0]]")).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn positive_term() -> impl Strategy<Value = RatTerm> {
            (
                prop::collection::vec((prop::collection::vec(-1i64..=3, 2), -3i64..=3), 1..=3),
                prop::collection::vec(prop::collection::vec(0i64..=3, 2), 0..=3),
                any::<bool>(),
            )
                .prop_filter_map("zero factor", |(numer, denom, neg)| {
                    let numer = LaurentPoly::from_terms(
                        2,
                        numer.into_iter().map(|(e, c)| (ExpVec::new(e), c)),
                    )
                    .unwrap();
                    let denom: Option<Vec<BinFactor>> =
                        denom.into_iter().map(|m| BinFactor::new(m).ok()).collect();
                    let sign = if neg { Sign::Minus } else { Sign::Plus };
                    RatTerm::new(sign, numer, denom?).ok()
                })
        }

        proptest! {
            #[test]
            fn expansion_is_consistent_across_degrees(t in positive_term(), n in 0i64..8) {
                let f = ShortRatFun::from_term(t);
                let hi = expand_truncated(&f, &[1, 1], n).unwrap();
                let lo = expand_truncated(&f, &[1, 1], n - 1).unwrap();
                prop_assert_eq!(hi.truncate(&[1, 1], n - 1), lo);
            }

            #[test]
            fn cleared_equality_implies_equal_expansions(t in positive_term(), extra in prop::collection::vec(0i64..=2, 2)) {
                // multiply numerator and denominator by the same binomial
                let m = ExpVec::new(vec![extra[0] + 1, extra[1]]);
                let f = ShortRatFun::from_term(t.clone());
                let mut denom = t.denom.clone();
                denom.push(BinFactor::new(m.clone()).unwrap());
                let g = ShortRatFun::from_term(RatTerm::new(t.sign, &t.numer * &LaurentPoly::one_minus(&m), denom).unwrap());
                let (l, r) = clear_denominators(&f, &g).unwrap();
                prop_assert_eq!(l, r);
                for n in 0..6 {
                    prop_assert_eq!(expand_truncated(&f, &[1, 1], n).unwrap(), expand_truncated(&g, &[1, 1], n).unwrap());
                }
            }
        }
    }
}
