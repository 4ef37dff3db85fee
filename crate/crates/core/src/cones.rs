//! Simplicial rational cones with per-generator half-open flags, their
//! fundamental parallelepipeds and integer-point transforms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::egcd_i64;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::ratfun::{normalize_term, BinFactor, Orientation, RatTerm, ShortRatFun, Sign};
use crate::sums::{carlitz_2d, require_positive};

/// `apex + { Σ λ_i g_i }` with `λ_i >= 0` on closed rays and `λ_i > 0` on open ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConeRepr", into = "ConeRepr")]
pub struct SimplicialCone {
    apex: Vec<i64>,
    generators: Vec<Vec<i64>>,
    open: Vec<bool>,
    det: i128,
    /// adjugate of the matrix whose columns are the generators
    adj: Vec<Vec<i128>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct ConeRepr {
    apex: Vec<i64>,
    generators: Vec<Vec<i64>>,
    open: Vec<bool>,
}

impl TryFrom<ConeRepr> for SimplicialCone {
    type Error = Error;

    fn try_from(r: ConeRepr) -> Result<Self> {
        SimplicialCone::new(r.apex, r.generators, r.open)
    }
}

impl From<SimplicialCone> for ConeRepr {
    fn from(c: SimplicialCone) -> Self {
        ConeRepr {
            apex: c.apex,
            generators: c.generators,
            open: c.open,
        }
    }
}

impl SimplicialCone {
    pub fn new(apex: Vec<i64>, generators: Vec<Vec<i64>>, open: Vec<bool>) -> Result<Self> {
        let d = apex.len();
        if generators.len() != d {
            return domain(format!("expected {d} generators, got {}", generators.len()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.len(),
            });
        }
        if open.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: open.len(),
            });
        }
        // column matrix: m[row][col] = generators[col][row]
        let m: Vec<Vec<i128>> = (0..d)
            .map(|row| (0..d).map(|col| generators[col][row] as i128).collect())
            .collect();
        let det = determinant(&m);
        if det == 0 {
            return domain("generators are linearly dependent");
        }
        let adj = adjugate(&m);
        Ok(SimplicialCone {
            apex,
            generators,
            open,
            det,
            adj,
        })
    }

    /// Closed cone with apex at the origin.
    pub fn closed(generators: Vec<Vec<i64>>) -> Result<Self> {
        let d = generators.len();
        Self::new(vec![0; d], generators, vec![false; d])
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    pub fn apex(&self) -> &[i64] {
        &self.apex
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn open_flags(&self) -> &[bool] {
        &self.open
    }

    /// Signed determinant of the generator matrix.
    pub fn det(&self) -> i128 {
        self.det
    }

    /// `det · λ` where `point - apex = Σ λ_i g_i`, oriented so that `|det|` is used.
    fn scaled_coords(&self, point: &[i64]) -> Vec<i128> {
        let rel: Vec<i128> = point
            .iter()
            .zip(&self.apex)
            .map(|(p, a)| (*p - *a) as i128)
            .collect();
        let sign = self.det.signum();
        self.adj
            .iter()
            .map(|row| sign * row.iter().zip(&rel).map(|(a, x)| a * x).sum::<i128>())
            .collect()
    }

    /// Exact membership test honoring the open flags.
    pub fn contains(&self, point: &[i64]) -> bool {
        self.scaled_coords(point)
            .iter()
            .zip(&self.open)
            .all(|(&mu, &open)| if open { mu > 0 } else { mu >= 0 })
    }

    /// Membership in the half-open fundamental parallelepiped: closed rays
    /// contribute `λ ∈ [0, 1)`, open rays `λ ∈ (0, 1]`.
    fn in_fundpar(&self, point: &[i64]) -> bool {
        let vol = self.det.abs();
        self.scaled_coords(point)
            .iter()
            .zip(&self.open)
            .all(|(&mu, &open)| {
                if open {
                    mu > 0 && mu <= vol
                } else {
                    mu >= 0 && mu < vol
                }
            })
    }

    /// The transform of a unimodular cone, `z^{apex + Σ_open g} / Π (1 - z^g)`,
    /// without enumerating anything.
    pub fn unimodular_term(&self) -> Result<RatTerm> {
        if self.det.abs() != 1 {
            return domain(format!("cone is not unimodular (det = {})", self.det));
        }
        let mut shift = self.apex.clone();
        for (g, &open) in self.generators.iter().zip(&self.open) {
            if open {
                for (s, x) in shift.iter_mut().zip(g) {
                    *s += x;
                }
            }
        }
        RatTerm::new(
            Sign::Plus,
            LaurentPoly::monomial(ExpVec::new(shift), 1),
            self.factors()?,
        )
    }

    fn factors(&self) -> Result<Vec<BinFactor>> {
        self.generators
            .iter()
            .map(|g| BinFactor::new(ExpVec::from(&g[..])))
            .collect()
    }
}

/// Integer points of a cone's half-open fundamental parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundParLattice {
    pub cone: SimplicialCone,
    /// absolute coordinates (apex included), sorted
    pub points: Vec<Vec<i64>>,
}

/// Enumerates the fundamental parallelepiped over its integer bounding box.
/// Cost is proportional to the box volume.
pub fn fundpar_points(cone: &SimplicialCone) -> Result<FundParLattice> {
    let d = cone.dim();
    let mut lo = cone.apex.clone();
    let mut hi = cone.apex.clone();
    for mask in 0u32..(1 << d) {
        let mut v = cone.apex.clone();
        for (i, g) in cone.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (x, y) in v.iter_mut().zip(g) {
                    *x += y;
                }
            }
        }
        for k in 0..d {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let mut points = Vec::new();
    for_each_box_point(&lo, &hi, |p| {
        if cone.in_fundpar(p) {
            points.push(p.to_vec());
        }
    });
    if points.len() as i128 != cone.det.abs() {
        return Err(Error::Internal(format!(
            "found {} parallelepiped points, expected |det| = {}",
            points.len(),
            cone.det.abs()
        )));
    }
    points.sort();
    Ok(FundParLattice {
        cone: cone.clone(),
        points,
    })
}

fn for_each_box_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut p = lo.to_vec();
    loop {
        f(&p);
        let mut k = 0;
        loop {
            if k == p.len() {
                return;
            }
            if p[k] < hi[k] {
                p[k] += 1;
                break;
            }
            p[k] = lo[k];
            k += 1;
        }
    }
}

/// `σ_K(z) = σ_Π(z) / Π (1 - z^{g_i})` from the parallelepiped points.
pub fn cone_ipt(cone: &SimplicialCone) -> Result<ShortRatFun> {
    let fp = fundpar_points(cone)?;
    let numer = LaurentPoly::from_terms(
        cone.dim(),
        fp.points.into_iter().map(|p| (ExpVec::new(p), 1)),
    )?;
    Ok(ShortRatFun::from_term(RatTerm::new(
        Sign::Plus,
        numer,
        cone.factors()?,
    )?))
}

/// Sum of `z^m` over the integer points `m` of the cone with `λ·m <= max_degree`,
/// found by scanning a bounding box and solving for cone coordinates exactly.
pub fn brute_force_cone_points(
    cone: &SimplicialCone,
    grading: &[i64],
    max_degree: i64,
) -> Result<LaurentPoly> {
    let d = cone.dim();
    if grading.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: grading.len(),
        });
    }
    let slopes: Vec<i64> = cone
        .generators
        .iter()
        .map(|g| ExpVec::from(&g[..]).dot(grading))
        .collect();
    if slopes.iter().any(|&s| s <= 0) {
        return Err(Error::Grading(format!(
            "cone is not pointed along {grading:?}"
        )));
    }
    let room = max_degree - ExpVec::from(&cone.apex[..]).dot(grading);
    let mut out = LaurentPoly::zero(d);
    if room < 0 {
        return Ok(out);
    }
    // the region is the simplex apex + conv(0, (room / slope_i) g_i)
    let mut lo = cone.apex.clone();
    let mut hi = cone.apex.clone();
    for (g, &s) in cone.generators.iter().zip(&slopes) {
        for k in 0..d {
            let reach = g[k] * room;
            lo[k] = lo[k].min(cone.apex[k] + Integer::div_floor(&reach, &s));
            hi[k] = hi[k].max(cone.apex[k] + Integer::div_ceil(&reach, &s));
        }
    }
    for_each_box_point(&lo, &hi, |p| {
        if ExpVec::from(p).dot(grading) <= max_degree && cone.contains(p) {
            out.add_term(ExpVec::from(p), 1.into());
        }
    });
    Ok(out)
}

/// The `n` half-open cones `K_1, ..., K_n` partitioning the nonnegative orthant:
/// `K_j` uses the unit vectors `e_i` (`i != j`) and the ray `a` in position `j`,
/// with the rays `e_1, ..., e_{j-1}` open.
pub fn orthant_decomposition(a: &[i64]) -> Result<Vec<SimplicialCone>> {
    let n = a.len();
    if n < 2 {
        return domain(format!("orthant decomposition needs n >= 2, got {n}"));
    }
    require_positive(a, "orthant decomposition")?;
    (0..n)
        .map(|j| {
            let gens = (0..n)
                .map(|i| {
                    if i == j {
                        a.to_vec()
                    } else {
                        ExpVec::unit(n, i).into_inner()
                    }
                })
                .collect();
            let open = (0..n).map(|i| i < j).collect();
            SimplicialCone::new(vec![0; n], gens, open)
        })
        .collect()
}

/// The closed cone spanned by `(a, b)` and `(c, d)`, via the canonical Bézout
/// pair of `(a, b)`.
pub fn cone_transform_2d(a: i64, b: i64, c: i64, d: i64) -> Result<ShortRatFun> {
    check_two_ray_hypotheses(a, b, c, d)?;
    let (_, x, y) = egcd_i64(a, b)?;
    cone_transform_2d_with_bezout(a, b, c, d, x, y)
}

pub(crate) fn check_two_ray_hypotheses(a: i64, b: i64, c: i64, d: i64) -> Result<()> {
    require_positive(&[a, b, c, d], "two-ray cone")?;
    if a * d <= b * c {
        return Err(Error::Orientation(format!(
            "need ad > bc, got ad = {}, bc = {}",
            a * d,
            b * c
        )));
    }
    if a.gcd(&b) != 1 || c.gcd(&d) != 1 {
        return domain(format!(
            "need gcd(a,b) = gcd(c,d) = 1, got ({a}, {b}, {c}, {d})"
        ));
    }
    Ok(())
}

/// The closed cone spanned by `(a, b)` and `(c, d)` as
/// `(1 + u^{a-y} v^{b+x} c(u^a v^b, u^{-y} v^x; cx+dy, ad-bc)) / ((u^a v^b - 1)(u^c v^d - 1))`
/// for any Bézout pair `ax + by = 1`.
pub fn cone_transform_2d_with_bezout(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    x: i64,
    y: i64,
) -> Result<ShortRatFun> {
    check_two_ray_hypotheses(a, b, c, d)?;
    if a * x + b * y != 1 {
        return domain(format!("({x}, {y}) is not a Bezout pair for ({a}, {b})"));
    }
    let numer = two_ray_numerator(a, b, c, d, x, y)?;
    let term = normalize_term(
        Sign::Plus,
        numer,
        &[
            (ExpVec::new(vec![a, b]), Orientation::MinusOne),
            (ExpVec::new(vec![c, d]), Orientation::MinusOne),
        ],
    )?;
    Ok(ShortRatFun::from_term(term))
}

/// `c(u^a v^b, u^{-y} v^x; cx+dy, ad-bc)` as a bivariate Laurent polynomial.
pub fn two_ray_carlitz(a: i64, b: i64, c: i64, d: i64, x: i64, y: i64) -> Result<LaurentPoly> {
    let p = c * x + d * y;
    let q = a * d - b * c;
    if p.gcd(&q) != 1 {
        return Err(Error::Internal(format!(
            "gcd(cx+dy, ad-bc) = gcd({p}, {q}) != 1"
        )));
    }
    carlitz_2d(p, q)
        .poly
        .substitute_monomials(&[ExpVec::new(vec![a, b]), ExpVec::new(vec![-y, x])])
}

fn two_ray_numerator(a: i64, b: i64, c: i64, d: i64, x: i64, y: i64) -> Result<LaurentPoly> {
    let car = two_ray_carlitz(a, b, c, d, x, y)?;
    Ok(&LaurentPoly::one(2) + &car.shift(&ExpVec::new(vec![a - y, b + x])))
}

/// Writes a 2-dimensional cone as a signed sum of unimodular half-open cones,
/// `O(log |det|)` of them, following a nearest-integer continued fraction.
///
/// Both generators must be primitive. The identity holds at the level of
/// indicator functions, hence also for integer-point transforms.
pub fn signed_unimodular_decomposition_2d(
    cone: &SimplicialCone,
) -> Result<Vec<(Sign, SimplicialCone)>> {
    if cone.dim() != 2 {
        return domain(format!(
            "expected a 2-dimensional cone, got dimension {}",
            cone.dim()
        ));
    }
    for g in &cone.generators {
        if g[0].gcd(&g[1]) != 1 {
            return domain(format!("generator {g:?} is not primitive"));
        }
    }
    let det2 = |p: [i64; 2], q: [i64; 2]| p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128;
    let g = &cone.generators;
    let (mut p, mut p_open, mut q, mut q_open) = (
        [g[0][0], g[0][1]],
        cone.open[0],
        [g[1][0], g[1][1]],
        cone.open[1],
    );
    if det2(p, q) < 0 {
        std::mem::swap(&mut p, &mut q);
        std::mem::swap(&mut p_open, &mut q_open);
    }
    let apex = cone.apex.clone();
    let piece = |p: [i64; 2], po: bool, q: [i64; 2], qo: bool| {
        SimplicialCone::new(apex.clone(), vec![p.to_vec(), q.to_vec()], vec![po, qo])
    };
    let mut sign = Sign::Plus;
    let mut out = Vec::new();
    loop {
        let d = det2(p, q);
        if d == 1 {
            out.push((sign, piece(p, p_open, q, q_open)?));
            return Ok(out);
        }
        // r completes p to a unimodular basis: det(p, r) = 1
        let (_, bx, by) = egcd_i64(p[0], p[1])?;
        let r = [-by, bx];
        // q = alpha p + d r; shift r by multiples of p to centre alpha
        let alpha = det2(q, r);
        let mut centred = alpha.rem_euclid(d);
        if 2 * centred > d {
            centred -= d;
        }
        let k = ((alpha - centred) / d) as i64;
        let r = [r[0] + k * p[0], r[1] + k * p[1]];
        out.push((sign, piece(p, p_open, r, q_open)?));
        // the flag of one generator decides whether the opposite ray belongs to the cone
        if centred > 0 {
            // q lies inside cone(p, r): cone(p, q) = cone(p, r) - cone(q, r)
            (p, q, q_open, sign) = (q, r, !p_open, -sign);
        } else {
            // r lies inside cone(p, q): cone(p, q) = cone(p, r) + cone(r, q)
            (p, q_open) = (r, !p_open);
        }
    }
}

/// Sum of the unimodular pieces of [`signed_unimodular_decomposition_2d`].
pub fn short_cone_ipt_2d(cone: &SimplicialCone) -> Result<ShortRatFun> {
    let mut out = ShortRatFun::zero(2);
    for (sign, piece) in signed_unimodular_decomposition_2d(cone)? {
        let t = piece.unimodular_term()?;
        out.push(RatTerm::new(sign * t.sign, t.numer, t.denom)?)?;
    }
    Ok(out)
}

fn determinant(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let cof = determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}
