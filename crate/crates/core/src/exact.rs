//! Exact integer and rational arithmetic shared by every other module.
//!
//! Big integers and rationals come from `num-bigint` / `num-rational`; a
//! [`BigRat`] is always kept in lowest terms with a positive denominator, so
//! structural equality is value equality.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational in lowest terms.
pub type BigRat = num_rational::BigRational;

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) > 0` and
/// `a*x + b*y = g`.
///
/// The pair is canonical: when `a` divides `b` the answer is `(|a|, sign(a), 0)`,
/// otherwise it is the pair produced by the remainder sequence, which satisfies
/// `|x| <= |b| / (2g)`.
pub fn egcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    egcd_generic(a.clone(), b.clone())
}

/// [`egcd`] on machine integers.
pub fn egcd_i64(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    let (g, x, y) = egcd_generic(a as i128, b as i128)?;
    Ok((g as i64, x as i64, y as i64))
}

fn egcd_generic<T: Integer + Signed + Clone>(a: T, b: T) -> Result<(T, T, T)> {
    if a.is_zero() && b.is_zero() {
        return domain("egcd(0, 0) is undefined");
    }
    if a.is_zero() {
        return Ok((b.abs(), T::zero(), b.signum()));
    }
    if b.is_multiple_of(&a) {
        return Ok((a.abs(), a.signum(), T::zero()));
    }
    let (mut old_r, mut r) = (a.abs(), b.abs());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    Ok((old_r, old_s * a.signum(), old_t * b.signum()))
}

/// `⌊p / q⌋` for `q > 0`, rounding toward negative infinity.
pub fn floor_div(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    if !q.is_positive() {
        return domain(format!("floor_div needs a positive divisor, got {q}"));
    }
    Ok(p.div_floor(q))
}

/// [`floor_div`] on machine integers.
pub fn floor_div_i64(p: i64, q: i64) -> Result<i64> {
    if q <= 0 {
        return domain(format!("floor_div needs a positive divisor, got {q}"));
    }
    Ok(p.div_euclid(q))
}

/// Fractional part `x - ⌊x⌋`, always in `[0, 1)`.
pub fn frac(x: &BigRat) -> BigRat {
    x - x.floor()
}

/// The sawtooth `((x))`: `{x} - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &BigRat) -> BigRat {
    if x.is_integer() {
        BigRat::zero()
    } else {
        frac(x) - BigRat::new(BigInt::one(), BigInt::from(2))
    }
}

/// `a / b` as a rational; `b` must be nonzero.
pub fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRat {
    BigRat::new(a.into(), b.into())
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// True when every pair of entries is coprime.
pub fn pairwise_coprime(values: &[i64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, &x)| values[i + 1..].iter().all(|&y| x.gcd(&y) == 1))
}

/// Multiplicative inverse of `a` modulo `m >= 1`, reduced into `[0, m)`.
/// Modulo 1 every residue is 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return domain(format!("modulus must be positive, got {m}"));
    }
    let (g, x, _) = egcd(&a.mod_floor(m), m)?;
    if !g.is_one() {
        return domain(format!("{a} is not invertible modulo {m}"));
    }
    Ok(x.mod_floor(m))
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::Domain(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(BigRat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return domain("zero denominator");
            }
            Ok(BigRat::new(parse_int(p)?, q))
        }
    }
}

/// Serde adapters: integers as decimal strings, rationals as `"p/q"`.
pub mod serde_exact {
    use super::{parse_rat, BigInt, BigRat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            let raw = String::deserialize(d)?;
            raw.parse().map_err(D::Error::custom)
        }
    }

    pub mod rat {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigRat, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
            let raw = String::deserialize(d)?;
            parse_rat(&raw).map_err(D::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRat {
        ratio(p, q)
    }

    #[test]
    fn egcd_examples() {
        assert_eq!(egcd_i64(1, 1).unwrap(), (1, 1, 0));
        assert_eq!(egcd_i64(2, 3).unwrap(), (1, -1, 1));
        assert_eq!(egcd_i64(6, 4).unwrap(), (2, 1, -1));
        assert!(egcd_i64(0, 0).is_err());
        let (g, x, y) = egcd(&BigInt::from(6), &BigInt::from(4)).unwrap();
        assert_eq!((g, x, y), (2.into(), 1.into(), (-1).into()));
    }

    #[test]
    fn egcd_exhaustive_small() {
        for a in -200i64..=200 {
            for b in -200i64..=200 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, x, y) = egcd_i64(a, b).unwrap();
                assert!(g > 0);
                assert_eq!(a * x + b * y, g, "({a}, {b})");
                assert_eq!(a % g, 0);
                assert_eq!(b % g, 0);
                assert!(
                    x.abs() <= 1 || 2 * g * x.abs() <= b.abs(),
                    "({a}, {b}) -> x = {x}"
                );
            }
        }
    }

    #[test]
    fn floor_div_examples() {
        assert_eq!(floor_div_i64(3, 2).unwrap(), 1);
        assert_eq!(floor_div_i64(-1, 2).unwrap(), -1);
        assert_eq!(floor_div_i64(7, 7).unwrap(), 1);
        assert!(floor_div_i64(1, 0).is_err());
        assert!(floor_div(&BigInt::from(1), &BigInt::from(-3)).is_err());
        for p in -50i64..=50 {
            for q in 1i64..=12 {
                let f = floor_div_i64(p, q).unwrap();
                let rem = p - q * f;
                assert!((0..q).contains(&rem));
            }
        }
    }

    #[test]
    fn sawtooth_and_frac_examples() {
        assert_eq!(sawtooth(&r(5, 1)), r(0, 1));
        assert_eq!(sawtooth(&r(1, 2)), r(0, 1));
        assert_eq!(sawtooth(&r(1, 3)), r(-1, 6));
        assert_eq!(frac(&r(7, 6)), r(1, 6));
        assert_eq!(frac(&r(-1, 3)), r(2, 3));
        assert_eq!(frac(&r(4, 1)), r(0, 1));
    }

    #[test]
    fn mod_inverse_and_parse() {
        assert_eq!(mod_inverse(&3.into(), &7.into()).unwrap(), 5.into());
        assert_eq!(mod_inverse(&5.into(), &1.into()).unwrap(), 0.into());
        assert!(mod_inverse(&2.into(), &4.into()).is_err());
        assert_eq!(parse_rat("-2/36").unwrap(), r(-1, 18));
        assert_eq!(parse_rat("7").unwrap(), r(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(r(-1, 18).to_string(), "-1/18");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sawtooth_is_odd(p in -500i64..500, q in 1i64..60) {
                let x = r(p, q);
                prop_assert_eq!(sawtooth(&-x.clone()), -sawtooth(&x));
            }

            #[test]
            fn frac_is_periodic(p in -500i64..500, q in 1i64..60, n in -20i64..20) {
                let x = r(p, q);
                prop_assert_eq!(frac(&(x.clone() + r(n, 1))), frac(&x));
            }
        }
    }
}
