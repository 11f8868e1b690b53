//! Problem files, evaluation and rendering for the `toric-zeta` binary.
//!
//! A problem file is one JSON document:
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "generators": [[1, 0], [0, 1]],
//!   "polynomials": [
//!     {"name": "f", "terms": [{"exponent": [2, 0], "coefficient": "1"},
//!                             {"exponent": [0, 3], "coefficient": "1"}]}
//!   ],
//!   "mode": "single",
//!   "local_systems": [{"face": [0, 1], "matrices": [[["1/2"]], [["3"]]]}]
//! }
//! ```
//!
//! Coefficients and matrix entries are rationals written `"p"` or `"p/q"`
//! (bare JSON integers are accepted too). Local systems are keyed by the
//! sorted indices of the generators on a face and written in the Hermite
//! basis of the sublattice those generators span.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{
    euler_complete_intersection, euler_fixed_point, zeta_complete_intersection, zeta_fixed_point, zeta_sheaf,
    CheckTally, FaceReport, LocalSystemData, Options,
};
use crate::error::Error;
use crate::lattice::{fmt_vec, IntVec};
use crate::matrix::RationalMatrix;
use crate::newton::{build_presentation, ToricPolynomial};
use crate::zeta::{Poly, RationalFunction, ZetaFactorization};

pub const BANNER: &str = "note: result valid under the non-degeneracy hypothesis \
(face polynomials define smooth reduced complete intersections in the torus)";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Single,
    Ci,
    Sheaf,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Single => "single",
            Mode::Ci => "ci",
            Mode::Sheaf => "sheaf",
        }
    }
}

/// A rational as it appears in a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn parse(&self) -> Result<BigRational, ParseError> {
        match self {
            RationalText::Int(i) => Ok(BigRational::from(BigInt::from(*i))),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exponent: Vec<i64>,
    pub coefficient: RationalText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    #[serde(default)]
    pub name: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemSpec {
    pub face: Vec<usize>,
    pub matrices: Vec<Vec<Vec<RationalText>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<i64>>,
    pub polynomials: Vec<PolynomialSpec>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub local_systems: Vec<LocalSystemSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("invalid problem file: {0}")]
    Json(String),
    #[error("invalid rational {0:?}: expected \"p\" or \"p/q\" with q ≠ 0")]
    Rational(String),
    #[error("matrix {index} on face {face:?} is not square")]
    NotSquare { face: Vec<usize>, index: usize },
}

/// `"p"` or `"p/q"` with optional sign; surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    if t.is_empty() || t.contains(char::is_whitespace) || t.starts_with('+') {
        return Err(bad());
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.starts_with(['-', '+']) {
            return Err(bad());
        }
    }
    BigRational::from_str(t).map_err(|_| bad())
}

fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let p: ProblemFile = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    for poly in &p.polynomials {
        for t in &poly.terms {
            t.coefficient.parse()?;
        }
    }
    for ls in &p.local_systems {
        for (index, m) in ls.matrices.iter().enumerate() {
            if m.iter().any(|row| row.len() != m.len()) {
                return Err(ParseError::NotSquare { face: ls.face.clone(), index });
            }
            for x in m.iter().flatten() {
                x.parse()?;
            }
        }
    }
    Ok(p)
}

/// Everything produced by one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub mode: Mode,
    pub zeta: ZetaFactorization,
    pub rational: RationalFunction,
    pub chi: BigInt,
    pub reports: Vec<FaceReport>,
    pub checks: Option<CheckTally>,
    /// The input with coefficients normalized and the mode resolved.
    pub input: ProblemFile,
}

fn to_poly(spec: &PolynomialSpec, n: usize) -> Result<ToricPolynomial, Error> {
    let mut terms = Vec::with_capacity(spec.terms.len());
    for t in &spec.terms {
        if t.exponent.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.exponent.len() });
        }
        let c = t.coefficient.parse().map_err(|e| Error::Invariant(e.to_string()))?;
        terms.push((t.exponent.iter().map(|&x| BigInt::from(x)).collect(), c));
    }
    Ok(ToricPolynomial::new(terms))
}

fn to_matrix(m: &[Vec<RationalText>], face: &[usize]) -> Result<RationalMatrix, Error> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| x.parse().map_err(|e| Error::Invariant(e.to_string()))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    RationalMatrix::from_rows(rows)
        .ok_or_else(|| Error::MatrixShape { face: face.to_vec(), detail: "matrix is not square".into() })
}

fn normalized_input(p: &ProblemFile, polys: &[ToricPolynomial], mode: Mode) -> ProblemFile {
    let polynomials = p
        .polynomials
        .iter()
        .zip(polys)
        .enumerate()
        .map(|(j, (spec, f))| PolynomialSpec {
            name: if spec.name.is_empty() { format!("f{}", j + 1) } else { spec.name.clone() },
            terms: f
                .terms
                .iter()
                .map(|(v, c)| TermSpec {
                    exponent: v.iter().map(|x| x.to_i64().expect("exponent came from i64")).collect(),
                    coefficient: RationalText::Text(rational_string(c)),
                })
                .collect(),
        })
        .collect();
    let mut local_systems: Vec<LocalSystemSpec> = p
        .local_systems
        .iter()
        .map(|ls| LocalSystemSpec {
            face: ls.face.clone(),
            matrices: ls
                .matrices
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|x| RationalText::Text(rational_string(&x.parse().expect("checked")))).collect())
                        .collect()
                })
                .collect(),
        })
        .collect();
    local_systems.sort_by(|a, b| a.face.cmp(&b.face));
    ProblemFile {
        ambient_dim: p.ambient_dim,
        generators: p.generators.clone(),
        polynomials,
        mode,
        local_systems,
    }
}

/// Runs the pipeline selected by `mode` (or the file's own mode).
pub fn evaluate(p: &ProblemFile, mode: Option<Mode>, opts: Options) -> Result<Outcome, Error> {
    let mode = mode.unwrap_or(p.mode);
    let n = p.ambient_dim;
    for g in &p.generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
    }
    let gens: Vec<IntVec> = p.generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let s = build_presentation(&gens)?;
    let polys = p.polynomials.iter().map(|f| to_poly(f, n)).collect::<Result<Vec<_>, _>>()?;
    let single = || -> Result<&ToricPolynomial, Error> {
        match polys.as_slice() {
            [f] => Ok(f),
            _ => Err(Error::PolynomialCount { mode: mode.as_str().into(), found: polys.len() }),
        }
    };
    let (eval, chi) = match mode {
        Mode::Single => {
            let f = single()?;
            let eval = zeta_fixed_point(&s, f, opts)?;
            (eval, euler_fixed_point(&s, f, opts)?.chi)
        }
        Mode::Ci => {
            let eval = zeta_complete_intersection(&s, &polys, opts)?;
            (eval, euler_complete_intersection(&s, &polys, opts)?)
        }
        Mode::Sheaf => {
            let f = single()?;
            let mut ls = LocalSystemData::default();
            for spec in &p.local_systems {
                let mats = spec.matrices.iter().map(|m| to_matrix(m, &spec.face)).collect::<Result<_, _>>()?;
                if ls.systems.insert(spec.face.clone(), mats).is_some() {
                    return Err(Error::MatrixShape { face: spec.face.clone(), detail: "face listed twice".into() });
                }
            }
            let eval = zeta_sheaf(&s, f, &ls, opts)?;
            let chi = eval.zeta.degree();
            (eval, chi)
        }
    };
    if eval.zeta.degree() != chi {
        return Err(Error::Invariant(format!("degree {} of zeta differs from Euler sum {chi}", eval.zeta.degree())));
    }
    let rational = eval.zeta.to_rational()?;
    Ok(Outcome {
        mode,
        rational,
        chi,
        checks: opts.check.then_some(eval.checks),
        zeta: eval.zeta,
        reports: eval.reports,
        input: normalized_input(p, &polys, mode),
    })
}

fn fmt_points(pts: &[IntVec]) -> String {
    pts.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" ")
}

fn fmt_face(face: &[usize]) -> String {
    let inner: Vec<String> = face.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Plain-text rendering; with `faces` the per-face table is appended.
pub fn render_human(o: &Outcome, faces: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{BANNER}");
    let _ = writeln!(out, "mode: {}", o.mode.as_str());
    let _ = writeln!(out, "zeta: {}", o.zeta);
    let _ = writeln!(out, "rational: {}", o.rational);
    let _ = writeln!(out, "chi = {}", o.chi);
    if let Some(c) = o.checks {
        let _ = writeln!(out, "check: {} verified, {} skipped", c.verified, c.skipped);
    }
    if faces {
        let _ = writeln!(out, "faces:");
        for r in &o.reports {
            let _ = write!(out, "  {} dim {}", fmt_face(&r.face), r.dim);
            if o.mode == Mode::Ci && !r.involved.is_empty() {
                let eqs: Vec<String> = r.involved.iter().map(|j| (j + 1).to_string()).collect();
                let _ = write!(out, " equations {}", eqs.join(","));
            }
            match &r.skipped {
                Some(why) => {
                    let _ = writeln!(out, ": skipped ({why})");
                }
                None => {
                    let _ = writeln!(out, ": {} facet(s)", r.facets.len());
                }
            }
            for f in &r.facets {
                let label = if o.mode == Mode::Ci { "K" } else { "vol" };
                let _ = writeln!(
                    out,
                    "    u = {}  d = {}  {label} = {}  exponent = {}  vertices {}",
                    f.normal,
                    f.distance,
                    f.volume,
                    f.exponent,
                    fmt_points(&f.vertices)
                );
                for (j, g) in &f.supporting_faces {
                    let _ = writeln!(out, "      face of f{}: {}", j + 1, fmt_points(g));
                }
            }
        }
    }
    out
}

fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn coeffs(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(rational_string(c))).collect())
}

fn points(pts: &[IntVec]) -> Value {
    Value::Array(pts.iter().map(|v| Value::Array(v.iter().map(big).collect())).collect())
}

/// Machine-readable rendering, pretty-printed with a trailing newline.
pub fn render_json(o: &Outcome) -> String {
    let mut factors: Vec<Value> =
        o.zeta.cyclotomic.iter().map(|(d, e)| json!({"d": d, "exponent": big(e)})).collect();
    factors.extend(o.zeta.matrix.iter().map(|(p, e)| json!({"poly": coeffs(p), "exponent": big(e)})));
    let reports: Vec<Value> = o
        .reports
        .iter()
        .map(|r| {
            let facets: Vec<Value> = r
                .facets
                .iter()
                .map(|f| {
                    let mut rec = json!({
                        "vertices": points(&f.vertices),
                        "normal": Value::Array(f.normal.coords.iter().map(big).collect()),
                        "d": f.distance,
                        "volume": big(&f.volume),
                        "exponent": big(&f.exponent),
                    });
                    if let Some(pv) = &f.pyramid_volume {
                        rec["pyramid_volume"] = big(pv);
                    }
                    if !f.supporting_faces.is_empty() {
                        rec["supporting_faces"] = Value::Array(
                            f.supporting_faces
                                .iter()
                                .map(|(j, g)| json!({"equation": j, "vertices": points(g)}))
                                .collect(),
                        );
                    }
                    rec
                })
                .collect();
            json!({
                "face": r.face,
                "dim": r.dim,
                "involved": r.involved,
                "skipped": r.skipped.as_ref().map(ToString::to_string),
                "facets": facets,
            })
        })
        .collect();
    let mut doc = json!({
        "banner": BANNER,
        "mode": o.mode.as_str(),
        "factors": factors,
        "rational": {"num": coeffs(&o.rational.numerator), "den": coeffs(&o.rational.denominator)},
        "chi": big(&o.chi),
        "face_reports": reports,
    });
    if let Some(c) = o.checks {
        doc["checks"] = json!({"verified": c.verified, "skipped": c.skipped});
    }
    doc["input"] = serde_json::to_value(&o.input).expect("problem files serialize");
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "toric-zeta", version, about = "Monodromy zeta functions on affine toric varieties")]
pub struct Args {
    /// Problem file (JSON).
    pub file: PathBuf,
    /// Override the mode given in the file.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Print the per-face report table.
    #[arg(long)]
    pub faces: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Cross-check volumes against the brute-force oracles.
    #[arg(long)]
    pub check: bool,
    /// Evaluate faces in parallel.
    #[arg(long)]
    pub parallel: bool,
}

/// Exit status: 0 success, 1 validation error, 2 parse error.
pub fn run(args: &Args) -> (u8, String, String) {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let err = ParseError::Io { path: args.file.display().to_string(), reason: e.to_string() };
            return (2, String::new(), format!("error: {err}\n"));
        }
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    let opts = Options { parallel: args.parallel, check: args.check };
    match evaluate(&problem, args.mode, opts) {
        Ok(o) => {
            let out = if args.json { render_json(&o) } else { render_human(&o, args.faces) };
            (0, out, String::new())
        }
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}

pub fn main() -> ExitCode {
    let args = Args::parse();
    let (code, out, err) = run(&args);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code)
}
