//! Dedekind sums and their polynomial relatives.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cones::{signed_unimodular_decomposition_2d, SimplicialCone};
use crate::error::{domain, Error, Result};
use crate::exact::{pairwise_coprime, ratio, BigInt, BigRat};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::ratfun::{RatTerm, ShortRatFun, Sign};

/// A Dedekind–Carlitz polynomial together with the parameters that built it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarlitzResult {
    pub params: Vec<i64>,
    pub poly: LaurentPoly,
}

/// `s(a, b) = Σ_{k=0}^{b-1} ((ka/b)) ((k/b))`, summed term by term.
///
/// Any integer `a` is accepted; only its residue modulo `b` matters.
pub fn dedekind_direct(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<BigRat> {
    let (a, b) = (a.into(), b.into());
    if !b.is_positive() {
        return domain(format!("dedekind sum needs b >= 1, got {b}"));
    }
    let a = a.mod_floor(&b);
    // ((ka/b))((k/b)) = (2r - b)(2k - b) / (4b^2) with r = ka mod b, r != 0
    let numerator = match (a.to_i128(), b.to_i128()) {
        (Some(a), Some(b)) if b <= 1 << 31 => {
            let mut acc: i128 = 0;
            let mut r: i128 = 0;
            for k in 1..b {
                r += a;
                if r >= b {
                    r -= b;
                }
                if r != 0 {
                    acc += (2 * r - b) * (2 * k - b);
                }
            }
            BigInt::from(acc)
        }
        _ => {
            let mut acc = BigInt::zero();
            let mut r = BigInt::zero();
            let mut k = BigInt::one();
            while k < b {
                r += &a;
                if r >= b {
                    r -= &b;
                }
                if !r.is_zero() {
                    acc += (BigInt::from(2) * &r - &b) * (BigInt::from(2) * &k - &b);
                }
                k += 1;
            }
            acc
        }
    };
    Ok(BigRat::new(numerator, BigInt::from(4) * &b * &b))
}

/// `s(a, b)` by the reciprocity recursion; `gcd(a, b)` must be 1.
pub fn dedekind_fast(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<BigRat> {
    dedekind_fast_with_steps(a, b).map(|(s, _)| s)
}

/// [`dedekind_fast`] that also reports how many reciprocity steps it took.
pub fn dedekind_fast_with_steps(
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
) -> Result<(BigRat, usize)> {
    let (a, b) = (a.into(), b.into());
    if !b.is_positive() {
        return domain(format!("dedekind sum needs b >= 1, got {b}"));
    }
    if !a.gcd(&b).is_one() {
        return domain(format!("dedekind_fast needs gcd(a, b) = 1, got ({a}, {b})"));
    }
    let quarter = ratio(1, 4);
    let twelfth = ratio(1, 12);
    let mut a = a.mod_floor(&b);
    let mut b = b;
    let mut acc = BigRat::zero();
    let mut sign_plus = true;
    let mut steps = 0;
    // s(a,b) = -1/4 + (a/b + 1/(ab) + b/a)/12 - s(b mod a, a)
    while !b.is_one() {
        let term = &twelfth
            * (BigRat::new(a.clone(), b.clone())
                + BigRat::new(BigInt::one(), &a * &b)
                + BigRat::new(b.clone(), a.clone()))
            - &quarter;
        if sign_plus {
            acc += term;
        } else {
            acc -= term;
        }
        let next = b.mod_floor(&a);
        b = std::mem::replace(&mut a, next);
        sign_plus = !sign_plus;
        steps += 1;
    }
    Ok((acc, steps))
}

/// `c(u, v; a, b) = Σ_{k=1}^{b-1} u^⌊ka/b⌋ v^(k-1)`.
///
/// Empty (zero) for `b <= 1`. A negative `a` produces negative exponents.
pub fn carlitz_2d(a: i64, b: i64) -> CarlitzResult {
    let mut poly = LaurentPoly::zero(2);
    for k in 1..b.max(1) {
        let e = (k as i128 * a as i128).div_euclid(b as i128) as i64;
        poly.add_term(ExpVec::new(vec![e, k - 1]), BigInt::one());
    }
    CarlitzResult {
        params: vec![a, b],
        poly,
    }
}

/// `c(u_1, ..., u_n; a_1, ..., a_n) = Σ_{k=1}^{a_n-1} Π_{i<n} u_i^⌊k a_i / a_n⌋ · u_n^(k-1)`.
pub fn carlitz_nd(a: &[i64]) -> Result<CarlitzResult> {
    let n = a.len();
    if n < 2 {
        return domain(format!("carlitz_nd needs at least two parameters, got {n}"));
    }
    let last = a[n - 1];
    let mut poly = LaurentPoly::zero(n);
    for k in 1..last.max(1) {
        let mut e: Vec<i64> = a[..n - 1]
            .iter()
            .map(|&ai| (k as i128 * ai as i128).div_euclid(last as i128) as i64)
            .collect();
        e.push(k - 1);
        poly.add_term(ExpVec::new(e), BigInt::one());
    }
    Ok(CarlitzResult {
        params: a.to_vec(),
        poly,
    })
}

/// `Σ_{k=0}^{c-1} Σ_{j=0}^{b-1} u^⌊ja/b + ka/c⌋ v^j w^k` in variables `(u, v, w)`.
pub fn drc_sum(a: i64, b: i64, c: i64) -> Result<LaurentPoly> {
    if a < 1 || b < 1 || c < 1 {
        return domain(format!(
            "drc_sum needs positive parameters, got ({a}, {b}, {c})"
        ));
    }
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let mut poly = LaurentPoly::zero(3);
    for k in 0..c {
        for j in 0..b {
            let e = (j * a * c + k * a * b).div_euclid(b * c);
            poly.add_term(
                ExpVec::new(vec![e as i64, j as i64, k as i64]),
                BigInt::one(),
            );
        }
    }
    Ok(poly)
}

/// The three fractional-part double sums over `j ∈ [0, a)`, `k ∈ [0, b)` of
/// `x = {jc/a + kc/b}`: `(Σ x, Σ j·x, Σ x²)`, by direct evaluation.
pub fn frac_double_sums(a: i64, b: i64, c: i64) -> Result<(BigRat, BigRat, BigRat)> {
    if a < 1 || b < 1 || c < 1 || !pairwise_coprime(&[a, b, c]) {
        return domain(format!(
            "frac_double_sums needs pairwise coprime positive integers, got ({a}, {b}, {c})"
        ));
    }
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let m = a * b;
    let (mut s0, mut s1, mut s2) = (0i128, 0i128, 0i128);
    for j in 0..a {
        for k in 0..b {
            // {jc/a + kc/b} = ((jcb + kca) mod ab) / ab
            let r = (j * c * b + k * c * a).rem_euclid(m);
            s0 += r;
            s1 += j * r;
            s2 += r * r;
        }
    }
    Ok((
        BigRat::new(s0.into(), m.into()),
        BigRat::new(s1.into(), m.into()),
        BigRat::new(s2.into(), (m * m).into()),
    ))
}

/// A short rational-function representation of `c(u, v; a, b)` with
/// `O(log b)` terms.
///
/// Uses `u v c(u,v;a,b) = (1-u)(1-u^a v^b) σ(u,v) - u` where `σ` is the
/// transform of the half-open cone spanned by `(1,0)` (open) and `(a,b)`,
/// decomposed into signed unimodular cones by a continued-fraction recursion.
pub fn carlitz_short_2d(a: i64, b: i64) -> Result<ShortRatFun> {
    if a < 1 || b < 1 {
        return domain(format!(
            "carlitz_short_2d needs positive parameters, got ({a}, {b})"
        ));
    }
    if a.gcd(&b) != 1 {
        return domain(format!(
            "carlitz_short_2d needs gcd(a, b) = 1, got ({a}, {b})"
        ));
    }
    let cone = SimplicialCone::new(vec![0, 0], vec![vec![1, 0], vec![a, b]], vec![true, false])?;
    let pieces = signed_unimodular_decomposition_2d(&cone)?;
    // (1 - u)(1 - u^a v^b) / (u v)
    let ray = ExpVec::new(vec![a, b]);
    let factor = (&LaurentPoly::one_minus(&ExpVec::new(vec![1, 0]))
        * &LaurentPoly::one_minus(&ray))
        .shift(&ExpVec::new(vec![-1, -1]));
    let mut out = ShortRatFun::zero(2);
    for (sign, piece) in pieces {
        let t = piece.unimodular_term()?;
        out.push(RatTerm::new(sign * t.sign, &t.numer * &factor, t.denom)?)?;
    }
    out.push(RatTerm::new(
        Sign::Minus,
        LaurentPoly::monomial(ExpVec::new(vec![0, -1]), 1),
        Vec::new(),
    )?)?;
    Ok(out)
}

/// Swaps the two variables of a bivariate polynomial: `p(u, v) -> p(v, u)`.
pub fn swap_uv(p: &LaurentPoly) -> LaurentPoly {
    assert_eq!(p.dim(), 2);
    p.embed(2, &[1, 0])
}

/// `c(v, u; b, a)` i.e. the Carlitz polynomial with its variables exchanged.
pub fn carlitz_2d_swapped(b: i64, a: i64) -> LaurentPoly {
    swap_uv(&carlitz_2d(b, a).poly)
}

pub(crate) fn require_positive(vals: &[i64], what: &str) -> Result<()> {
    if vals.iter().any(|&v| v < 1) {
        return Err(Error::Domain(format!(
            "{what} needs positive integers, got {vals:?}"
        )));
    }
    Ok(())
}
