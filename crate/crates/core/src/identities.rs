//! Every reciprocity law as an executable check returning an [`IdentityReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value as Json};

use crate::brion;
use crate::cones::{check_two_ray_hypotheses, cone_ipt, orthant_decomposition, two_ray_carlitz};
use crate::error::{domain, Error, Result};
use crate::exact::{egcd_i64, mod_inverse, pairwise_coprime, ratio, BigInt, BigRat};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::ratfun::{clear_denominators, BinFactor, RatTerm, ShortRatFun, Sign};
use crate::sums::{
    carlitz_2d, carlitz_2d_swapped, carlitz_nd, dedekind_direct, frac_double_sums, require_positive,
};

/// One side of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(LaurentPoly),
    Rat(BigRat),
    Rats(Vec<BigRat>),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Poly(p) => p.serialize(s),
            Value::Rat(r) => s.serialize_str(&r.to_string()),
            Value::Rats(rs) => rs
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Rat(r) => write!(f, "{r}"),
            Value::Rats(rs) => {
                let parts: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl Value {
    fn minus(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p - q),
            (Value::Rat(p), Value::Rat(q)) => Value::Rat(p - q),
            (Value::Rats(p), Value::Rats(q)) => {
                Value::Rats(p.iter().zip(q).map(|(x, y)| x - y).collect())
            }
            _ => unreachable!("sides of one identity have the same kind"),
        }
    }
}

/// Outcome of one identity check. `holds` is exact equality of `lhs` and
/// `rhs` together with every secondary route in `routes`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Map<String, Json>,
    pub holds: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub diff: Option<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub routes: BTreeMap<String, bool>,
}

impl IdentityReport {
    fn new(identity: Identity, params: Map<String, Json>, lhs: Value, rhs: Value) -> Self {
        let equal = lhs == rhs;
        let diff = (!equal).then(|| lhs.minus(&rhs));
        IdentityReport {
            identity: identity.name().to_string(),
            params,
            holds: equal,
            lhs,
            rhs,
            diff,
            routes: BTreeMap::new(),
        }
    }

    fn with_route(mut self, name: impl Into<String>, ok: bool) -> Self {
        self.routes.insert(name.into(), ok);
        self.holds &= ok;
        self
    }
}

fn params(named: &[(&str, i64)]) -> Map<String, Json> {
    named
        .iter()
        .map(|(k, v)| (k.to_string(), Json::from(*v)))
        .collect()
}

fn seq_params(a: &[i64]) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("a".into(), Json::from(a.to_vec()));
    m
}

fn mono(e: impl Into<ExpVec>) -> LaurentPoly {
    LaurentPoly::monomial(e, 1)
}

fn minus_one(e: impl Into<ExpVec>) -> LaurentPoly {
    LaurentPoly::minus_one(&e.into())
}

fn rat(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRat {
    ratio(p, q)
}

fn require_coprime(vals: &[i64], what: &str) -> Result<()> {
    require_positive(vals, what)?;
    if !pairwise_coprime(vals) {
        return domain(format!(
            "{what} needs pairwise coprime arguments, got {vals:?}"
        ));
    }
    Ok(())
}

/// `(v-1) c(u,v;a,b) + (u-1) c(v,u;b,a) = u^{a-1} v^{b-1} - 1`.
pub fn check_carlitz(a: i64, b: i64) -> Result<IdentityReport> {
    require_coprime(&[a, b], "carlitz reciprocity")?;
    let lhs = &(&minus_one([0, 1]) * &carlitz_2d(a, b).poly)
        + &(&minus_one([1, 0]) * &carlitz_2d_swapped(b, a));
    let rhs = minus_one([a - 1, b - 1]);
    Ok(IdentityReport::new(
        Identity::Carlitz,
        params(&[("a", a), ("b", b)]),
        Value::Poly(lhs),
        Value::Poly(rhs),
    ))
}

/// The `n`-term cyclic reciprocity for higher-dimensional Carlitz polynomials,
/// also verified through the orthant decomposition.
pub fn check_berndt_dieter(a: &[i64]) -> Result<IdentityReport> {
    let n = a.len();
    if n < 2 {
        return domain(format!("berndt-dieter needs n >= 2, got {n}"));
    }
    require_coprime(a, "berndt-dieter")?;
    let mut lhs = LaurentPoly::zero(n);
    for s in 0..n {
        // variables u_{idx[0]}, ..., u_{idx[n-1]} with idx[i] = i - s (mod n)
        let idx: Vec<usize> = (0..n).map(|i| (i + n - s) % n).collect();
        let args: Vec<i64> = idx.iter().map(|&i| a[i]).collect();
        let car = carlitz_nd(&args)?.poly.embed(n, &idx);
        let last = idx[n - 1];
        lhs = &lhs + &(&minus_one(ExpVec::unit(n, last)) * &car);
    }
    let top: Vec<i64> = a.iter().map(|x| x - 1).collect();
    let rhs = minus_one(top);
    let orthant = quadrant_sides(a)?;
    Ok(IdentityReport::new(
        Identity::BerndtDieter,
        seq_params(a),
        Value::Poly(lhs),
        Value::Poly(rhs),
    )
    .with_route("orthant_decomposition", orthant.0 == orthant.1))
}

fn quadrant_sides(a: &[i64]) -> Result<(LaurentPoly, LaurentPoly)> {
    let n = a.len();
    let mut sum = ShortRatFun::zero(n);
    for k in orthant_decomposition(a)? {
        sum = sum.plus(&cone_ipt(&k)?)?;
    }
    let factors = (0..n)
        .map(|i| BinFactor::new(ExpVec::unit(n, i)))
        .collect::<Result<Vec<_>>>()?;
    let orthant = ShortRatFun::from_term(RatTerm::new(Sign::Plus, LaurentPoly::one(n), factors)?);
    clear_denominators(&sum, &orthant)
}

/// `Σ_j σ_{K_j} = 1 / Π (1 - u_i)` after clearing denominators.
pub fn check_quadrant_decomposition(a: &[i64]) -> Result<IdentityReport> {
    if a.len() < 2 {
        return domain(format!(
            "quadrant decomposition needs n >= 2, got {}",
            a.len()
        ));
    }
    require_coprime(a, "quadrant decomposition")?;
    let (l, r) = quadrant_sides(a)?;
    Ok(IdentityReport::new(
        Identity::Quadrant,
        seq_params(a),
        Value::Poly(l),
        Value::Poly(r),
    ))
}

/// `s(a,b) + s(b,a) = -1/4 + (a/b + 1/(ab) + b/a) / 12`.
pub fn check_dedekind(a: i64, b: i64) -> Result<IdentityReport> {
    require_coprime(&[a, b], "dedekind reciprocity")?;
    let lhs = dedekind_direct(a, b)? + dedekind_direct(b, a)?;
    let rhs = rat(-1, 4) + (rat(a, b) + rat(1, a * b) + rat(b, a)) / rat(12, 1);
    Ok(IdentityReport::new(
        Identity::Dedekind,
        params(&[("a", a), ("b", b)]),
        Value::Rat(lhs),
        Value::Rat(rhs),
    ))
}

fn two_ray_sides(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    x: i64,
    y: i64,
) -> Result<(LaurentPoly, LaurentPoly)> {
    let uv = mono([1, 1]);
    let um1 = minus_one([1, 0]);
    let vm1 = minus_one([0, 1]);
    let t1 = &(&(&uv * &um1) * &minus_one([a, b])) * &carlitz_2d_swapped(d, c);
    let t2 = &(&(&uv * &vm1) * &minus_one([c, d])) * &carlitz_2d(a, b).poly;
    let t3 =
        &(&um1 * &vm1) * &two_ray_carlitz(a, b, c, d, x, y)?.shift(&ExpVec::from([a - y, b + x]));
    let lhs = &(&t1 + &t2) + &t3;
    let ab_part = &(&mono([1, 1]) - &mono([0, 1])) + &LaurentPoly::one(2);
    let cd_part = &(&mono([1, 1]) - &mono([1, 0])) + &LaurentPoly::one(2);
    let rhs = &(&(&mono([a + c, b + d]) - &ab_part.shift(&ExpVec::from([a, b])))
        - &cd_part.shift(&ExpVec::from([c, d])))
        + &uv;
    Ok((lhs, rhs))
}

/// The three-cone polynomial identity for two rays `(a,b)`, `(c,d)` with an
/// explicit Bézout pair `ax + by = 1`.
pub fn check_two_ray_with(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    x: i64,
    y: i64,
) -> Result<IdentityReport> {
    check_two_ray_hypotheses(a, b, c, d).map_err(as_domain)?;
    if a * x + b * y != 1 {
        return domain(format!("({x}, {y}) is not a Bezout pair for ({a}, {b})"));
    }
    let (l, r) = two_ray_sides(a, b, c, d, x, y)?;
    Ok(IdentityReport::new(
        Identity::TwoRay,
        params(&[("a", a), ("b", b), ("c", c), ("d", d), ("x", x), ("y", y)]),
        Value::Poly(l),
        Value::Poly(r),
    ))
}

fn as_domain(e: Error) -> Error {
    match e {
        Error::Orientation(m) => Error::Domain(m),
        other => other,
    }
}

/// [`check_two_ray_with`] for the canonical Bézout pair, re-verified for the
/// shifted pairs `(x + bt, y - at)`, `t = ±1`.
pub fn check_two_ray(a: i64, b: i64, c: i64, d: i64) -> Result<IdentityReport> {
    check_two_ray_hypotheses(a, b, c, d).map_err(as_domain)?;
    let (_, x, y) = egcd_i64(a, b)?;
    let mut report = check_two_ray_with(a, b, c, d, x, y)?;
    for t in [-1, 1] {
        let (xs, ys) = (x + b * t, y - a * t);
        let ok = check_two_ray_with(a, b, c, d, xs, ys)?.holds;
        report = report.with_route(format!("bezout({xs},{ys})"), ok);
    }
    Ok(report)
}

/// The unimodular (`ad - bc = 1`) specialization with its 8-term right side.
pub fn check_unimodular_cor(a: i64, b: i64, c: i64, d: i64) -> Result<IdentityReport> {
    require_positive(&[a, b, c, d], "unimodular corollary")?;
    if a * d - b * c != 1 {
        return domain(format!(
            "unimodular corollary needs ad - bc = 1, got {}",
            a * d - b * c
        ));
    }
    let lhs = &(&(&minus_one([1, 0]) * &minus_one([a, b])) * &carlitz_2d_swapped(d, c))
        + &(&(&minus_one([0, 1]) * &minus_one([c, d])) * &carlitz_2d(a, b).poly);
    let terms: [([i64; 2], i64); 8] = [
        ([a + c - 1, b + d - 1], 1),
        ([a, b], -1),
        ([c, d], -1),
        ([a - 1, b], 1),
        ([c, d - 1], 1),
        ([a - 1, b - 1], -1),
        ([c - 1, d - 1], -1),
        ([0, 0], 1),
    ];
    let rhs = LaurentPoly::from_terms(2, terms)?;
    Ok(IdentityReport::new(
        Identity::Unimodular,
        params(&[("a", a), ("b", b), ("c", c), ("d", d)]),
        Value::Poly(lhs),
        Value::Poly(rhs),
    ))
}

/// `s(a,b) + s(c,d) = s(cx - dy, ad + bc) - 1/4 + (b/(d m) + d/(b m) + m/(bd)) / 12`
/// with `m = ad + bc`, for an explicit Bézout pair.
pub fn check_pommersheim_3term_with(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    x: i64,
    y: i64,
) -> Result<IdentityReport> {
    require_positive(&[a, b, c, d], "pommersheim")?;
    if a.gcd(&b) != 1 || c.gcd(&d) != 1 {
        return domain(format!(
            "pommersheim needs gcd(a,b) = gcd(c,d) = 1, got ({a}, {b}, {c}, {d})"
        ));
    }
    if a * x + b * y != 1 {
        return domain(format!("({x}, {y}) is not a Bezout pair for ({a}, {b})"));
    }
    let m = a * d + b * c;
    let lhs = dedekind_direct(a, b)? + dedekind_direct(c, d)?;
    let rhs = dedekind_direct(c * x - d * y, m)?
        + rat(-1, 4)
        + (rat(b, d * m) + rat(d, b * m) + rat(m, b * d)) / rat(12, 1);
    Ok(IdentityReport::new(
        Identity::Pommersheim,
        params(&[("a", a), ("b", b), ("c", c), ("d", d), ("x", x), ("y", y)]),
        Value::Rat(lhs),
        Value::Rat(rhs),
    ))
}

/// [`check_pommersheim_3term_with`] for the canonical pair, re-verified for
/// the shifted pairs `t = ±1`.
pub fn check_pommersheim_3term(a: i64, b: i64, c: i64, d: i64) -> Result<IdentityReport> {
    require_positive(&[a, b, c, d], "pommersheim")?;
    let (_, x, y) = egcd_i64(a, b)?;
    let mut report = check_pommersheim_3term_with(a, b, c, d, x, y)?;
    for t in [-1, 1] {
        let (xs, ys) = (x + b * t, y - a * t);
        let ok = check_pommersheim_3term_with(a, b, c, d, xs, ys)?.holds;
        report = report.with_route(format!("bezout({xs},{ys})"), ok);
    }
    Ok(report)
}

/// `s(a b^{-1}, c) + s(c a^{-1}, b) + s(b c^{-1}, a) = -1/4 + (a/(bc) + b/(ca) + c/(ab)) / 12`.
pub fn check_rademacher_3term(a: i64, b: i64, c: i64) -> Result<IdentityReport> {
    require_coprime(&[a, b, c], "rademacher three-term")?;
    let inv = |x: i64, m: i64| mod_inverse(&BigInt::from(x), &BigInt::from(m));
    let lhs = dedekind_direct(BigInt::from(a) * inv(b, c)?, c)?
        + dedekind_direct(BigInt::from(c) * inv(a, b)?, b)?
        + dedekind_direct(BigInt::from(b) * inv(c, a)?, a)?;
    let rhs = rat(-1, 4) + (rat(a, b * c) + rat(b, c * a) + rat(c, a * b)) / rat(12, 1);
    Ok(IdentityReport::new(
        Identity::Rademacher3,
        params(&[("a", a), ("b", b), ("c", c)]),
        Value::Rat(lhs),
        Value::Rat(rhs),
    ))
}

/// `s(a,b) + s(d,c) = -1/2 + (a/b + a/c + d/b + d/c) / 12` when `ad - bc = 1`.
pub fn check_rademacher_abcd(a: i64, b: i64, c: i64, d: i64) -> Result<IdentityReport> {
    require_positive(&[a, b, c, d], "rademacher abcd")?;
    if a * d - b * c != 1 {
        return domain(format!(
            "rademacher abcd needs ad - bc = 1, got {}",
            a * d - b * c
        ));
    }
    let lhs = dedekind_direct(a, b)? + dedekind_direct(d, c)?;
    let rhs = rat(-1, 2) + (rat(a, b) + rat(a, c) + rat(d, b) + rat(d, c)) / rat(12, 1);
    Ok(IdentityReport::new(
        Identity::RademacherAbcd,
        params(&[("a", a), ("b", b), ("c", c), ("d", d)]),
        Value::Rat(lhs),
        Value::Rat(rhs),
    ))
}

/// The triangle identity, both sides multiplied by `v - 1`.
pub fn check_triangle(a: i64, b: i64) -> Result<IdentityReport> {
    let (l, r) = brion::triangle_identity_sides(a, b)?;
    Ok(IdentityReport::new(
        Identity::Triangle,
        params(&[("a", a), ("b", b)]),
        Value::Poly(l),
        Value::Poly(r),
    ))
}

/// `D σ_{tT} = N`, plus the value `-12bc²` of the denominator's
/// `(1,2,3)`-derivative.
pub fn check_tetrahedron(a: i64, b: i64, c: i64, t: i64) -> Result<IdentityReport> {
    let (l, r) = brion::tetrahedron_sides(a, b, c, t)?;
    let deriv = brion::tetrahedron_denominator_derivative(a, b, c) == BigInt::from(-12 * b * c * c);
    Ok(IdentityReport::new(
        Identity::Tetrahedron,
        params(&[("a", a), ("b", b), ("c", c), ("t", t)]),
        Value::Poly(l),
        Value::Poly(r),
    )
    .with_route("denominator_derivative", deriv))
}

/// [`check_tetrahedron`] against the numerator as printed in the theorem.
pub fn check_tetrahedron_as_printed(a: i64, b: i64, c: i64, t: i64) -> Result<IdentityReport> {
    let (l, r) = brion::tetrahedron_sides_as_printed(a, b, c, t)?;
    Ok(IdentityReport::new(
        Identity::TetrahedronPrinted,
        params(&[("a", a), ("b", b), ("c", c), ("t", t)]),
        Value::Poly(l),
        Value::Poly(r),
    ))
}

/// Closed-form `L(t)` against the lattice count, with the L'Hospital
/// quotient as a second route.
pub fn check_ehrhart(a: i64, b: i64, c: i64, t: i64) -> Result<IdentityReport> {
    let closed = brion::ehrhart_mp(a, b, c)?.eval(t);
    let count = BigRat::from_integer(brion::count_tetrahedron(a, b, c, t)?.into());
    let via_limit = brion::ehrhart_via_lhospital(a, b, c, t)?;
    let ok = via_limit == count;
    Ok(IdentityReport::new(
        Identity::Ehrhart,
        params(&[("a", a), ("b", b), ("c", c), ("t", t)]),
        Value::Rat(closed),
        Value::Rat(count),
    )
    .with_route("lhospital", ok))
}

/// The three fractional-part double sums against their printed closed forms
/// `(ab-1)/2`, `c s(ab,c) + ab(c-1)/4` and `(ab-1)(2ab-1)/(6ab)`.
pub fn check_elementary_sums(a: i64, b: i64, c: i64) -> Result<IdentityReport> {
    require_coprime(&[a, b, c], "elementary sums")?;
    let (s0, s1, s2) = frac_double_sums(a, b, c)?;
    let ab = a * b;
    let closed0 = rat(ab - 1, 2);
    let closed1 = rat(c, 1) * dedekind_direct(ab, c)? + rat(ab * (c - 1), 4);
    let closed2 = rat((ab - 1) * (2 * ab - 1), 6 * ab);
    let mut report = IdentityReport::new(
        Identity::Elementary,
        params(&[("a", a), ("b", b), ("c", c)]),
        Value::Rats(vec![s0.clone(), s1.clone(), s2.clone()]),
        Value::Rats(vec![closed0.clone(), closed1.clone(), closed2.clone()]),
    );
    report.routes.insert("sum".into(), s0 == closed0);
    report.routes.insert("weighted_sum".into(), s1 == closed1);
    report.routes.insert("square_sum".into(), s2 == closed2);
    Ok(report)
}

/// The identities known to [`Identity::check`] and [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Carlitz,
    BerndtDieter,
    Quadrant,
    Dedekind,
    TwoRay,
    Unimodular,
    Pommersheim,
    Rademacher3,
    RademacherAbcd,
    Triangle,
    Tetrahedron,
    TetrahedronPrinted,
    Ehrhart,
    Elementary,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::Carlitz,
        Identity::BerndtDieter,
        Identity::Quadrant,
        Identity::Dedekind,
        Identity::TwoRay,
        Identity::Unimodular,
        Identity::Pommersheim,
        Identity::Rademacher3,
        Identity::RademacherAbcd,
        Identity::Triangle,
        Identity::Tetrahedron,
        Identity::TetrahedronPrinted,
        Identity::Ehrhart,
        Identity::Elementary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Carlitz => "carlitz",
            Identity::BerndtDieter => "berndt-dieter",
            Identity::Quadrant => "quadrant",
            Identity::Dedekind => "dedekind",
            Identity::TwoRay => "two-ray",
            Identity::Unimodular => "unimodular",
            Identity::Pommersheim => "pommersheim",
            Identity::Rademacher3 => "rademacher-3term",
            Identity::RademacherAbcd => "rademacher-abcd",
            Identity::Triangle => "triangle",
            Identity::Tetrahedron => "tetrahedron",
            Identity::TetrahedronPrinted => "tetrahedron-printed",
            Identity::Ehrhart => "ehrhart",
            Identity::Elementary => "elementary",
        }
    }

    /// Names of the integer parameters, in order. Identities over a whole
    /// sequence take a variable number of them.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Identity::Carlitz | Identity::Dedekind | Identity::Triangle => &["a", "b"],
            Identity::BerndtDieter | Identity::Quadrant => &[],
            Identity::TwoRay
            | Identity::Unimodular
            | Identity::Pommersheim
            | Identity::RademacherAbcd => &["a", "b", "c", "d"],
            Identity::Rademacher3 | Identity::Elementary => &["a", "b", "c"],
            Identity::Tetrahedron | Identity::TetrahedronPrinted | Identity::Ehrhart => {
                &["a", "b", "c", "t"]
            }
        }
    }

    pub fn takes_sequence(self) -> bool {
        matches!(self, Identity::BerndtDieter | Identity::Quadrant)
    }

    /// Runs the check on positional arguments.
    pub fn check(self, args: &[i64]) -> Result<IdentityReport> {
        if !self.takes_sequence() && args.len() != self.param_names().len() {
            return domain(format!(
                "{} takes parameters {:?}, got {} values",
                self.name(),
                self.param_names(),
                args.len()
            ));
        }
        match self {
            Identity::Carlitz => check_carlitz(args[0], args[1]),
            Identity::BerndtDieter => check_berndt_dieter(args),
            Identity::Quadrant => check_quadrant_decomposition(args),
            Identity::Dedekind => check_dedekind(args[0], args[1]),
            Identity::TwoRay => check_two_ray(args[0], args[1], args[2], args[3]),
            Identity::Unimodular => check_unimodular_cor(args[0], args[1], args[2], args[3]),
            Identity::Pommersheim => check_pommersheim_3term(args[0], args[1], args[2], args[3]),
            Identity::Rademacher3 => check_rademacher_3term(args[0], args[1], args[2]),
            Identity::RademacherAbcd => check_rademacher_abcd(args[0], args[1], args[2], args[3]),
            Identity::Triangle => check_triangle(args[0], args[1]),
            Identity::Tetrahedron => check_tetrahedron(args[0], args[1], args[2], args[3]),
            Identity::TetrahedronPrinted => {
                check_tetrahedron_as_printed(args[0], args[1], args[2], args[3])
            }
            Identity::Ehrhart => check_ehrhart(args[0], args[1], args[2], args[3]),
            Identity::Elementary => check_elementary_sums(args[0], args[1], args[2]),
        }
    }

    /// Every valid parameter tuple with entries in `1..=max`, in lexicographic
    /// order. Sequence identities use length-3 sequences; dilation factors
    /// `t` range over `1..=3` for the tetrahedron and `1..=4` for Ehrhart.
    pub fn grid(self, max: i64) -> Vec<Vec<i64>> {
        let r = 1..=max;
        let pairs = || r.clone().flat_map(|a| r.clone().map(move |b| vec![a, b]));
        let triples =
            || pairs().flat_map(|p| r.clone().map(move |c| [p.clone(), vec![c]].concat()));
        let quads =
            || triples().flat_map(|p| r.clone().map(move |d| [p.clone(), vec![d]].concat()));
        let coprime = |v: &Vec<i64>| pairwise_coprime(v);
        let with_t = |ts: i64| {
            triples()
                .filter(coprime)
                .flat_map(move |p| (1..=ts).map(move |t| [p.clone(), vec![t]].concat()))
                .collect()
        };
        match self {
            Identity::Carlitz | Identity::Dedekind | Identity::Triangle => {
                pairs().filter(coprime).collect()
            }
            Identity::BerndtDieter
            | Identity::Quadrant
            | Identity::Rademacher3
            | Identity::Elementary => triples().filter(coprime).collect(),
            Identity::TwoRay => quads()
                .filter(|v| check_two_ray_hypotheses(v[0], v[1], v[2], v[3]).is_ok())
                .collect(),
            Identity::Unimodular | Identity::RademacherAbcd => {
                quads().filter(|v| v[0] * v[3] - v[1] * v[2] == 1).collect()
            }
            Identity::Pommersheim => quads()
                .filter(|v| v[0].gcd(&v[1]) == 1 && v[2].gcd(&v[3]) == 1)
                .collect(),
            Identity::Tetrahedron | Identity::TetrahedronPrinted => with_t(3),
            Identity::Ehrhart => with_t(4),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
                Error::Domain(format!(
                    "unknown identity {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Checks every tuple of `identity.grid(max)` in parallel; reports come back
/// in grid order.
pub fn sweep(identity: Identity, max: i64) -> Result<Vec<IdentityReport>> {
    sweep_tuples(identity, &identity.grid(max))
}

/// Checks the given tuples in parallel, preserving their order.
pub fn sweep_tuples(identity: Identity, tuples: &[Vec<i64>]) -> Result<Vec<IdentityReport>> {
    tuples.par_iter().map(|args| identity.check(args)).collect()
}
