//! Vertex-cone (Brion) assemblies for the lattice triangle with vertices
//! `(0,0), (a,0), (0,b)` and for dilates of the tetrahedron with vertices
//! `0, (a,0,0), (0,b,0), (0,0,c)`, plus its Ehrhart polynomial.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::SimplicialCone;
use crate::error::{domain, Error, Result};
use crate::exact::{pairwise_coprime, ratio, serde_exact, BigInt, BigRat};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::ratfun::{lhospital_limit, normalize_term, Orientation, ShortRatFun, Sign};
use crate::sums::{carlitz_2d, dedekind_fast, drc_sum, require_positive};

use Orientation::{MinusOne, OneMinus};

fn mono(e: impl Into<ExpVec>) -> LaurentPoly {
    LaurentPoly::monomial(e, 1)
}

/// `z^e - z^f`
fn binom(e: impl Into<ExpVec>, f: impl Into<ExpVec>) -> LaurentPoly {
    &mono(e) - &mono(f)
}

fn check_triangle(a: i64, b: i64) -> Result<()> {
    require_positive(&[a, b], "triangle")?;
    if !pairwise_coprime(&[a, b]) {
        return domain(format!("triangle needs gcd(a, b) = 1, got ({a}, {b})"));
    }
    Ok(())
}

fn check_tetrahedron(a: i64, b: i64, c: i64, t: i64) -> Result<()> {
    require_positive(&[a, b, c, t], "tetrahedron")?;
    if !pairwise_coprime(&[a, b, c]) {
        return domain(format!(
            "tetrahedron needs pairwise coprime a, b, c, got ({a}, {b}, {c})"
        ));
    }
    Ok(())
}

/// `c(1/u, v; a, b)`
fn carlitz_recip_u(a: i64, b: i64) -> Result<LaurentPoly> {
    carlitz_2d(a, b)
        .poly
        .substitute_monomials(&[ExpVec::from([-1, 0]), ExpVec::from([0, 1])])
}

/// `c(1/v, u; b, a)`
fn carlitz_recip_v(a: i64, b: i64) -> Result<LaurentPoly> {
    carlitz_2d(b, a)
        .poly
        .substitute_monomials(&[ExpVec::from([0, -1]), ExpVec::from([1, 0])])
}

/// Closed-form transforms of the three vertex cones of the triangle, at
/// `(0,0)`, `(a,0)` and `(0,b)` in that order.
pub fn triangle_vertex_cones(a: i64, b: i64) -> Result<[ShortRatFun; 3]> {
    check_triangle(a, b)?;
    let k1 = normalize_term(
        Sign::Plus,
        LaurentPoly::one(2),
        &[
            (ExpVec::from([1, 0]), OneMinus),
            (ExpVec::from([0, 1]), OneMinus),
        ],
    )?;
    let n2 = &mono([a + 1, 0]) + &carlitz_recip_u(a, b)?.shift(&ExpVec::from([a, 1]));
    let k2 = normalize_term(
        Sign::Minus,
        n2,
        &[
            (ExpVec::from([1, 0]), MinusOne),
            (ExpVec::from([-a, b]), MinusOne),
        ],
    )?;
    let n3 = &mono([0, b + 1]) + &carlitz_recip_v(a, b)?.shift(&ExpVec::from([1, b]));
    let k3 = normalize_term(
        Sign::Minus,
        n3,
        &[
            (ExpVec::from([0, 1]), MinusOne),
            (ExpVec::from([a, -b]), MinusOne),
        ],
    )?;
    Ok([
        ShortRatFun::from_term(k1),
        ShortRatFun::from_term(k2),
        ShortRatFun::from_term(k3),
    ])
}

/// The same vertex cones as geometric objects.
pub fn triangle_vertex_cone_geometry(a: i64, b: i64) -> Result<[SimplicialCone; 3]> {
    check_triangle(a, b)?;
    Ok([
        SimplicialCone::closed(vec![vec![1, 0], vec![0, 1]])?,
        SimplicialCone::new(vec![a, 0], vec![vec![-1, 0], vec![-a, b]], vec![false; 2])?,
        SimplicialCone::new(vec![0, b], vec![vec![a, -b], vec![0, -1]], vec![false; 2])?,
    ])
}

/// Sum of `u^x v^y` over the lattice points of the triangle, `bx + ay <= ab`.
pub fn triangle_lattice_poly(a: i64, b: i64) -> Result<LaurentPoly> {
    require_positive(&[a, b], "triangle")?;
    let mut out = LaurentPoly::zero(2);
    for x in 0..=a {
        for y in 0..=(a * b - b * x) / a {
            out.add_term(ExpVec::from([x, y]), BigInt::from(1));
        }
    }
    Ok(out)
}

/// Both sides of the triangle identity multiplied through by `v - 1`:
/// `(u-1)(v-1) σ_Δ` against
/// `(v-1)[u^a v c(1/u, v; a, b) + u(u^a + v^b)] - (v^{b+1} - 1)`.
pub fn triangle_identity_sides(a: i64, b: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    check_triangle(a, b)?;
    let um1 = binom([1, 0], [0, 0]);
    let vm1 = binom([0, 1], [0, 0]);
    let lhs = &(&um1 * &vm1) * &triangle_lattice_poly(a, b)?;
    let inner =
        &carlitz_recip_u(a, b)?.shift(&ExpVec::from([a, 1])) + &(&mono([a + 1, 0]) + &mono([1, b]));
    let rhs = &(&vm1 * &inner) - &binom([0, b + 1], [0, 0]);
    Ok((lhs, rhs))
}

/// `drc(u^{-1}, v, w; a, b, c)`, `drc(v^{-1}, u, w; b, a, c)` and
/// `drc(w^{-1}, u, v; c, a, b)` in the variables `(u, v, w)`.
fn drc_pieces(a: i64, b: i64, c: i64) -> Result<[LaurentPoly; 3]> {
    let e = |x: [i64; 3]| ExpVec::from(x);
    Ok([
        drc_sum(a, b, c)?.substitute_monomials(&[e([-1, 0, 0]), e([0, 1, 0]), e([0, 0, 1])])?,
        drc_sum(b, a, c)?.substitute_monomials(&[e([0, -1, 0]), e([1, 0, 0]), e([0, 0, 1])])?,
        drc_sum(c, a, b)?.substitute_monomials(&[e([0, 0, -1]), e([1, 0, 0]), e([0, 1, 0])])?,
    ])
}

/// `(z_i - 1) + drc(...)` for each of the three nonzero vertices.
fn vertex_brackets(a: i64, b: i64, c: i64) -> Result<[LaurentPoly; 3]> {
    let [d1, d2, d3] = drc_pieces(a, b, c)?;
    Ok([
        &binom([1, 0, 0], [0, 0, 0]) + &d1,
        &binom([0, 1, 0], [0, 0, 0]) + &d2,
        &binom([0, 0, 1], [0, 0, 0]) + &d3,
    ])
}

/// `D = (u-1)(v-1)(w-1)(u^a - v^b)(u^a - w^c)(v^b - w^c)`.
pub fn tetrahedron_denominator(a: i64, b: i64, c: i64) -> LaurentPoly {
    let ua_vb = binom([a, 0, 0], [0, b, 0]);
    let ua_wc = binom([a, 0, 0], [0, 0, c]);
    let vb_wc = binom([0, b, 0], [0, 0, c]);
    let linear = &(&binom([1, 0, 0], [0, 0, 0]) * &binom([0, 1, 0], [0, 0, 0]))
        * &binom([0, 0, 1], [0, 0, 0]);
    &(&(&linear * &ua_vb) * &ua_wc) * &vb_wc
}

/// Numerator `N` with `σ_{tT} = N / D`, assembled from the four vertex-cone
/// transforms.
pub fn tetrahedron_numerator(a: i64, b: i64, c: i64, t: i64) -> Result<LaurentPoly> {
    numerator_with_third_factor(a, b, c, t, [0, 1, 0])
}

/// The numerator exactly as the theorem display prints it, whose third line
/// carries the factor `(u-1)(w-1)` instead of `(u-1)(v-1)`.
pub fn tetrahedron_numerator_as_printed(a: i64, b: i64, c: i64, t: i64) -> Result<LaurentPoly> {
    numerator_with_third_factor(a, b, c, t, [0, 0, 1])
}

fn numerator_with_third_factor(
    a: i64,
    b: i64,
    c: i64,
    t: i64,
    third: [i64; 3],
) -> Result<LaurentPoly> {
    check_tetrahedron(a, b, c, t)?;
    let [x1, x2, x3] = vertex_brackets(a, b, c)?;
    let um1 = binom([1, 0, 0], [0, 0, 0]);
    let vm1 = binom([0, 1, 0], [0, 0, 0]);
    let wm1 = binom([0, 0, 1], [0, 0, 0]);
    let ua_vb = binom([a, 0, 0], [0, b, 0]);
    let ua_wc = binom([a, 0, 0], [0, 0, c]);
    let vb_wc = binom([0, b, 0], [0, 0, c]);

    let l1 = &(&(&vm1 * &wm1) * &vb_wc) * &x1.shift(&ExpVec::from([(t + 2) * a, 0, 0]));
    let l2 = &(&(&um1 * &wm1) * &ua_wc) * &x2.shift(&ExpVec::from([0, (t + 2) * b, 0]));
    let l3 = &(&(&um1 * &binom(third, [0, 0, 0])) * &ua_vb)
        * &x3.shift(&ExpVec::from([0, 0, (t + 2) * c]));
    let l4 = &(&ua_vb * &ua_wc) * &vb_wc;
    Ok(&(&(&l1 - &l2) + &l3) - &l4)
}

/// Sum of `u^x v^y w^z` over the lattice points of `tT`,
/// `bc·x + ac·y + ab·z <= t·abc`, scanned slice by slice in `z`.
pub fn tetrahedron_lattice_poly(a: i64, b: i64, c: i64, t: i64) -> Result<LaurentPoly> {
    require_positive(&[a, b, c, t], "tetrahedron")?;
    let (a, b, c, t) = (a as i128, b as i128, c as i128, t as i128);
    let budget = t * a * b * c;
    let slices: Vec<Vec<ExpVec>> = (0..=t * c)
        .into_par_iter()
        .map(|z| {
            let mut pts = Vec::new();
            let rz = budget - a * b * z;
            for y in 0..=rz / (a * c) {
                let ry = rz - a * c * y;
                for x in 0..=ry / (b * c) {
                    pts.push(ExpVec::new(vec![x as i64, y as i64, z as i64]));
                }
            }
            pts
        })
        .collect();
    let mut out = LaurentPoly::zero(3);
    for p in slices.into_iter().flatten() {
        out.add_term(p, BigInt::from(1));
    }
    Ok(out)
}

/// `D · σ_{tT}` with `σ_{tT}` scanned, against the assembled numerator `N`.
pub fn tetrahedron_sides(a: i64, b: i64, c: i64, t: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    check_tetrahedron(a, b, c, t)?;
    let lhs = &tetrahedron_denominator(a, b, c) * &tetrahedron_lattice_poly(a, b, c, t)?;
    Ok((lhs, tetrahedron_numerator(a, b, c, t)?))
}

/// Same as [`tetrahedron_sides`] with the numerator as printed.
pub fn tetrahedron_sides_as_printed(
    a: i64,
    b: i64,
    c: i64,
    t: i64,
) -> Result<(LaurentPoly, LaurentPoly)> {
    check_tetrahedron(a, b, c, t)?;
    let lhs = &tetrahedron_denominator(a, b, c) * &tetrahedron_lattice_poly(a, b, c, t)?;
    Ok((lhs, tetrahedron_numerator_as_printed(a, b, c, t)?))
}

/// Closed-form transforms of the vertex cones of `tT`, at the origin,
/// `(ta,0,0)`, `(0,tb,0)` and `(0,0,tc)`.
pub fn tetrahedron_vertex_transforms(a: i64, b: i64, c: i64, t: i64) -> Result<[ShortRatFun; 4]> {
    check_tetrahedron(a, b, c, t)?;
    let [x1, x2, x3] = vertex_brackets(a, b, c)?;
    let e = |x: [i64; 3]| ExpVec::from(x);
    let k0 = normalize_term(
        Sign::Plus,
        LaurentPoly::one(3),
        &[
            (e([1, 0, 0]), OneMinus),
            (e([0, 1, 0]), OneMinus),
            (e([0, 0, 1]), OneMinus),
        ],
    )?;
    let k1 = normalize_term(
        Sign::Plus,
        x1.shift(&e([t * a, 0, 0])),
        &[
            (e([1, 0, 0]), MinusOne),
            (e([-a, b, 0]), OneMinus),
            (e([-a, 0, c]), OneMinus),
        ],
    )?;
    let k2 = normalize_term(
        Sign::Plus,
        x2.shift(&e([0, t * b, 0])),
        &[
            (e([0, 1, 0]), MinusOne),
            (e([a, -b, 0]), OneMinus),
            (e([0, -b, c]), OneMinus),
        ],
    )?;
    let k3 = normalize_term(
        Sign::Plus,
        x3.shift(&e([0, 0, t * c])),
        &[
            (e([0, 0, 1]), MinusOne),
            (e([a, 0, -c]), OneMinus),
            (e([0, b, -c]), OneMinus),
        ],
    )?;
    Ok([k0, k1, k2, k3].map(ShortRatFun::from_term))
}

/// The vertex cones of `tT` as geometric objects.
pub fn tetrahedron_vertex_cones(a: i64, b: i64, c: i64, t: i64) -> Result<[SimplicialCone; 4]> {
    check_tetrahedron(a, b, c, t)?;
    let closed = vec![false; 3];
    Ok([
        SimplicialCone::closed(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])?,
        SimplicialCone::new(
            vec![t * a, 0, 0],
            vec![vec![-1, 0, 0], vec![-a, b, 0], vec![-a, 0, c]],
            closed.clone(),
        )?,
        SimplicialCone::new(
            vec![0, t * b, 0],
            vec![vec![a, -b, 0], vec![0, -1, 0], vec![0, -b, c]],
            closed.clone(),
        )?,
        SimplicialCone::new(
            vec![0, 0, t * c],
            vec![vec![a, 0, -c], vec![0, b, -c], vec![0, 0, -1]],
            closed,
        )?,
    ])
}

/// `L(t) = c3 t^3 + c2 t^2 + c1 t + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartCubic {
    #[serde(with = "serde_exact::rat")]
    pub c3: BigRat,
    #[serde(with = "serde_exact::rat")]
    pub c2: BigRat,
    #[serde(with = "serde_exact::rat")]
    pub c1: BigRat,
    #[serde(with = "serde_exact::rat")]
    pub c0: BigRat,
}

impl EhrhartCubic {
    pub fn eval(&self, t: i64) -> BigRat {
        let t = BigRat::from_integer(t.into());
        ((&self.c3 * &t + &self.c2) * &t + &self.c1) * &t + &self.c0
    }
}

impl std::fmt::Display for EhrhartCubic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})*t^3 + ({})*t^2 + ({})*t + ({})",
            self.c3, self.c2, self.c1, self.c0
        )
    }
}

/// Closed-form Ehrhart polynomial of the tetrahedron, with Dedekind sums
/// evaluated by reciprocity.
pub fn ehrhart_mp(a: i64, b: i64, c: i64) -> Result<EhrhartCubic> {
    check_tetrahedron(a, b, c, 1)?;
    let (ai, bi, ci) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let c3 = ratio(&ai * &bi * &ci, 6);
    let c2 = ratio(&ai * &bi + &ai * &ci + &bi * &ci + 1, 4);
    let twelfth =
        ratio(&bi * &ci, a) + ratio(&ci * &ai, b) + ratio(&ai * &bi, c) + ratio(1, &ai * &bi * &ci);
    let dedekind =
        dedekind_fast(&bi * &ci, a)? + dedekind_fast(&ci * &ai, b)? + dedekind_fast(&ai * &bi, c)?;
    let c1 =
        ratio(3, 4) + ratio(a + b + c, 4) + twelfth / BigRat::from_integer(12.into()) - dedekind;
    Ok(EhrhartCubic {
        c3,
        c2,
        c1,
        c0: BigRat::from_integer(1.into()),
    })
}

/// `#(tT ∩ Z^3)` by counting, for each `(x, y)`, the admissible `z`.
pub fn count_tetrahedron(a: i64, b: i64, c: i64, t: i64) -> Result<u64> {
    require_positive(&[a, b, c, t], "tetrahedron count")?;
    let (a, b, c, t) = (a as i128, b as i128, c as i128, t as i128);
    let budget = t * a * b * c;
    let total: i128 = (0..=t * a)
        .into_par_iter()
        .map(|x| {
            let rx = budget - b * c * x;
            (0..=rx / (a * c))
                .map(|y| (rx - a * c * y) / (a * b) + 1)
                .sum::<i128>()
        })
        .sum();
    u64::try_from(total).map_err(|_| Error::Domain("count exceeds u64".into()))
}

/// `L(t)` as the `(1, 2, 3)`-derivative quotient `N / D` at `u = v = w = 1`.
pub fn ehrhart_via_lhospital(a: i64, b: i64, c: i64, t: i64) -> Result<BigRat> {
    let n = tetrahedron_numerator(a, b, c, t)?;
    let d = tetrahedron_denominator(a, b, c);
    lhospital_limit(&n, &d, &[1, 2, 3]).map_err(|e| match e {
        Error::Order(msg) => Error::Internal(format!("tetrahedron assembly: {msg}")),
        other => other,
    })
}

/// Value of the denominator's `(1, 2, 3)`-derivative at the all-ones point.
pub fn tetrahedron_denominator_derivative(a: i64, b: i64, c: i64) -> BigInt {
    tetrahedron_denominator(a, b, c).deriv_eval_at_one(&[1, 2, 3])
}
