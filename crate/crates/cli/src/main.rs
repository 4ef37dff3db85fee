use std::process::ExitCode;

use carlitz::brion::{
    count_tetrahedron, ehrhart_mp, tetrahedron_denominator, tetrahedron_numerator,
    tetrahedron_sides, triangle_identity_sides, triangle_vertex_cones,
};
use carlitz::cones::{
    brute_force_cone_points, cone_ipt, cone_transform_2d, fundpar_points, SimplicialCone,
};
use carlitz::exact::BigInt;
use carlitz::identities::{
    check_pommersheim_3term_with, check_two_ray_with, sweep_tuples, Identity, IdentityReport,
};
use carlitz::ratfun::expand_truncated;
use carlitz::sums::{
    carlitz_2d, carlitz_nd, carlitz_short_2d, dedekind_direct, dedekind_fast, drc_sum,
};
use carlitz::{Error, ShortRatFun};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "carlitz",
    version,
    about = "Dedekind-Carlitz polynomials, cone transforms and reciprocity checks"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Truncation degree for series expansions.
    #[arg(long, default_value_t = 10, global = true)]
    degree: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dedekind sum s(a, b).
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        a: BigInt,
        b: BigInt,
        /// Evaluate by the defining sum even when reciprocity applies.
        #[arg(long)]
        direct: bool,
    },
    /// c(u, v; a, b).
    Carlitz {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        b: i64,
    },
    /// c(u_1, ..., u_n; a_1, ..., a_n).
    CarlitzNd {
        #[arg(required = true, num_args = 2..)]
        a: Vec<i64>,
    },
    /// The DRC sum in (u, v, w).
    Drc { a: i64, b: i64, c: i64 },
    /// Integer-point transform of a simplicial cone given as JSON
    /// {"apex": [...], "generators": [[...], ...], "open": [...]}.
    ConeIpt {
        cone: String,
        /// Also expand to --degree under the total-degree grading.
        #[arg(long)]
        expand: bool,
    },
    /// Transform of the closed cone spanned by (a, b) and (c, d).
    ConeTransform {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        #[arg(long)]
        expand: bool,
    },
    /// Short rational-function form of c(u, v; a, b).
    CarlitzShort { a: i64, b: i64 },
    /// Vertex cones of the triangle (0,0), (a,0), (0,b) and its identity.
    Triangle { a: i64, b: i64 },
    /// Numerator and denominator of the dilated tetrahedron transform.
    Tetra {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long, default_value_t = 1)]
        t: i64,
    },
    /// Ehrhart polynomial of the tetrahedron.
    Ehrhart { a: i64, b: i64, c: i64 },
    /// Lattice points in the t-th dilate of the tetrahedron.
    Count {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long, default_value_t = 1)]
        t: i64,
    },
    /// Check one identity; exits 1 if it is violated.
    Verify {
        identity: Identity,
        #[command(flatten)]
        params: VerifyParams,
    },
    /// Check an identity over its whole parameter grid; exits 1 on any violation.
    Sweep {
        identity: Identity,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
        max: i64,
        /// Check a random sample of the grid instead of all of it.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
}

#[derive(Args)]
struct VerifyParams {
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    c: Option<i64>,
    #[arg(long)]
    d: Option<i64>,
    #[arg(long)]
    t: Option<i64>,
    /// Bezout pair for two-ray and pommersheim.
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    x: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    y: Option<i64>,
    /// Comma-separated sequence for berndt-dieter and quadrant.
    #[arg(long, value_delimiter = ',')]
    seq: Vec<i64>,
}

enum Failure {
    Usage(String),
    Violated,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, text: impl FnOnce() -> String, doc: impl FnOnce() -> Value) {
        match self.format {
            Format::Text => println!("{}", text()),
            Format::Json => println!("{}", doc()),
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn rat_fun_text(f: &ShortRatFun) -> String {
    format!("{f}")
}

fn report_text(r: &IdentityReport) -> String {
    let verdict = if r.holds { "holds" } else { "VIOLATED" };
    let mut s = format!(
        "{} {} {verdict}",
        r.identity,
        Value::Object(r.params.clone())
    );
    s.push_str(&format!("\n  lhs = {}\n  rhs = {}", r.lhs, r.rhs));
    if let Some(d) = &r.diff {
        s.push_str(&format!("\n  lhs - rhs = {d}"));
    }
    for (route, ok) in &r.routes {
        s.push_str(&format!(
            "\n  {route}: {}",
            if *ok { "ok" } else { "FAILED" }
        ));
    }
    s
}

fn verify_args(identity: Identity, p: &VerifyParams) -> Result<Vec<i64>, Failure> {
    if identity.takes_sequence() {
        if p.seq.is_empty() {
            return Err(Failure::Usage(format!("{identity} needs --seq a1,a2,...")));
        }
        return Ok(p.seq.clone());
    }
    identity
        .param_names()
        .iter()
        .map(|&name| {
            let v = match name {
                "a" => p.a,
                "b" => p.b,
                "c" => p.c,
                "d" => p.d,
                "t" => p.t,
                _ => None,
            };
            v.ok_or_else(|| Failure::Usage(format!("{identity} needs --{name}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Out { format: cli.format };
    let degree = i64::from(cli.degree);
    match cli.command {
        Command::Dedekind { a, b, direct } => {
            let coprime = num_integer::Integer::gcd(&a, &b) == BigInt::from(1);
            let s = if direct || !coprime {
                dedekind_direct(a.clone(), b.clone())?
            } else {
                dedekind_fast(a.clone(), b.clone())?
            };
            out.emit(
                || s.to_string(),
                || json!({"a": a.to_string(), "b": b.to_string(), "value": s.to_string()}),
            );
        }
        Command::Carlitz { a, b } => {
            let c = carlitz_2d(a, b);
            out.emit(|| c.poly.to_string(), || to_json(&c));
        }
        Command::CarlitzNd { a } => {
            let c = carlitz_nd(&a)?;
            out.emit(|| c.poly.to_string(), || to_json(&c));
        }
        Command::Drc { a, b, c } => {
            let p = drc_sum(a, b, c)?;
            out.emit(
                || p.to_string(),
                || json!({"params": [a, b, c], "poly": to_json(&p)}),
            );
        }
        Command::ConeIpt { cone, expand } => {
            let k: SimplicialCone = serde_json::from_str(&cone)
                .map_err(|e| Failure::Usage(format!("bad cone: {e}")))?;
            let f = cone_ipt(&k)?;
            let fp = fundpar_points(&k)?;
            let grading = vec![1; k.dim()];
            let expansion = if expand {
                let series = expand_truncated(&f, &grading, degree)?;
                let brute = brute_force_cone_points(&k, &grading, degree)?;
                if series != brute {
                    return Err(Failure::Internal(
                        "expansion disagrees with enumeration".into(),
                    ));
                }
                Some(series)
            } else {
                None
            };
            out.emit(
                || {
                    let mut s = format!("{}\nparallelepiped points: {:?}", rat_fun_text(&f), fp.points);
                    if let Some(e) = &expansion {
                        s.push_str(&format!("\nup to degree {degree}: {e}"));
                    }
                    s
                },
                || json!({"cone": to_json(&k), "fundpar": fp.points, "transform": to_json(&f), "expansion": expansion.as_ref().map(to_json)}),
            );
        }
        Command::ConeTransform { a, b, c, d, expand } => {
            let f = cone_transform_2d(a, b, c, d)?;
            let expansion = if expand {
                Some(expand_truncated(&f, &[1, 1], degree)?)
            } else {
                None
            };
            out.emit(
                || match &expansion {
                    Some(e) => format!("{}\nup to degree {degree}: {e}", rat_fun_text(&f)),
                    None => rat_fun_text(&f),
                },
                || json!({"params": [a, b, c, d], "transform": to_json(&f), "expansion": expansion.as_ref().map(to_json)}),
            );
        }
        Command::CarlitzShort { a, b } => {
            let f = carlitz_short_2d(a, b)?;
            out.emit(
                || format!("{} terms\n{}", f.len(), rat_fun_text(&f)),
                || json!({"params": [a, b], "terms": f.len(), "short": to_json(&f)}),
            );
        }
        Command::Triangle { a, b } => {
            let cones = triangle_vertex_cones(a, b)?;
            let (lhs, rhs) = triangle_identity_sides(a, b)?;
            let holds = lhs == rhs;
            out.emit(
                || {
                    let mut s = String::new();
                    for (i, k) in cones.iter().enumerate() {
                        s.push_str(&format!("K{}: {}\n", i + 1, rat_fun_text(k)));
                    }
                    s.push_str(&format!("identity {}", if holds { "holds" } else { "VIOLATED" }));
                    s
                },
                || json!({"params": [a, b], "vertex_cones": to_json(&cones), "lhs": to_json(&lhs), "rhs": to_json(&rhs), "holds": holds}),
            );
            if !holds {
                return Err(Failure::Violated);
            }
        }
        Command::Tetra { a, b, c, t } => {
            let n = tetrahedron_numerator(a, b, c, t)?;
            let d = tetrahedron_denominator(a, b, c);
            let (lhs, rhs) = tetrahedron_sides(a, b, c, t)?;
            let holds = lhs == rhs;
            out.emit(
                || format!("N = {n}\nD = {d}\nD * scan == N: {holds}"),
                || json!({"params": [a, b, c, t], "numerator": to_json(&n), "denominator": to_json(&d), "holds": holds}),
            );
            if !holds {
                return Err(Failure::Violated);
            }
        }
        Command::Ehrhart { a, b, c } => {
            let p = ehrhart_mp(a, b, c)?;
            out.emit(|| format!("L(t) = {p}"), || to_json(&p));
        }
        Command::Count { a, b, c, t } => {
            let n = count_tetrahedron(a, b, c, t)?;
            out.emit(
                || n.to_string(),
                || json!({"params": [a, b, c, t], "count": n}),
            );
        }
        Command::Verify { identity, params } => {
            let args = verify_args(identity, &params)?;
            let report = match (identity, params.x, params.y) {
                (Identity::TwoRay, Some(x), Some(y)) => {
                    check_two_ray_with(args[0], args[1], args[2], args[3], x, y)?
                }
                (Identity::Pommersheim, Some(x), Some(y)) => {
                    check_pommersheim_3term_with(args[0], args[1], args[2], args[3], x, y)?
                }
                _ => identity.check(&args)?,
            };
            out.emit(|| report_text(&report), || to_json(&report));
            if !report.holds {
                return Err(Failure::Violated);
            }
        }
        Command::Sweep {
            identity,
            max,
            seed,
            samples,
        } => {
            let mut grid = identity.grid(max);
            if let Some(seed) = seed {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picked: Vec<usize> = (0..grid.len()).collect::<Vec<_>>();
                picked.shuffle(&mut rng);
                picked.truncate(samples);
                picked.sort_unstable();
                grid = picked.into_iter().map(|i| grid[i].clone()).collect();
            }
            let reports = sweep_tuples(identity, &grid)?;
            let failing: Vec<&IdentityReport> = reports.iter().filter(|r| !r.holds).collect();
            out.emit(
                || {
                    let mut s = format!(
                        "{identity}: {} of {} checked tuples hold",
                        reports.len() - failing.len(),
                        reports.len()
                    );
                    for r in &failing {
                        s.push_str(&format!(
                            "\n  VIOLATED at {}",
                            Value::Object(r.params.clone())
                        ));
                    }
                    s
                },
                || {
                    json!({
                        "identity": identity.name(),
                        "max": max,
                        "seed": seed,
                        "checked": reports.len(),
                        "holds": failing.is_empty(),
                        "failures": failing.iter().map(|r| to_json(r)).collect::<Vec<_>>(),
                    })
                },
            );
            if !failing.is_empty() {
                return Err(Failure::Violated);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
