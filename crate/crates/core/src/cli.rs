//! Command-line front end. Everything printed to stdout is JSON; diagnostics
//! and the corpus summary table go to stderr.
//!
//! Exit codes: 0 success or valid certificate, 1 invalid certificate or a
//! failing corpus entry, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{integralize, parse_rational, QPoly, Rational};
use crate::corpus::{parse_corpus, run_corpus, FamilySpec, SHIPPED_CORPUS};
use crate::families::{
    build_family, distinguished_point, expected_orders, CurveModel, CurveModelJson, Family, MarkedPoint,
};
use crate::jacobian::{CurvePoint, HyperellipticCurve};
use crate::modp::{cross_check, select_good_primes};
use crate::torsion::{certify_exact_order, evaluate_l_certificate, verify_relation_matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides `--jobs` for the corpus runner.
pub const JOBS_ENV: &str = "TORSION_FORGE_JOBS";

#[derive(Parser, Debug)]
#[command(name = "torsion-forge", version, about = "Torsion certificates for hyperelliptic curve families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member and print its model as JSON.
    Family(FamilyCmd),
    /// Certify the exact order of a point class.
    Certify(CertifyCmd),
    /// Run a corpus of printed curves and claimed orders.
    Corpus(CorpusCmd),
    /// Check both relation-matrix rows for a family member.
    Relations(FamilySelect),
    /// Print the version.
    Version,
}

#[derive(Args, Debug, Clone)]
struct FamilySelect {
    /// thmA, thmB, genericT, thm41 or cor43
    #[arg(long)]
    family: Family,
    #[arg(long)]
    g: u32,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

impl FamilySelect {
    fn spec(&self) -> FamilySpec {
        FamilySpec { family: self.family, g: self.g, t: self.t.clone(), beta: self.beta.clone() }
    }
}

#[derive(Args, Debug)]
struct FamilyCmd {
    #[command(flatten)]
    select: FamilySelect,
    /// Also list the marked points on the integral model.
    #[arg(long)]
    integral: bool,
    /// Output is always JSON; accepted for scripts that pass it.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CertifyCmd {
    /// Curve file: output of `family`, or {"f": [...]} with ascending coefficients.
    #[arg(long, conflicts_with_all = ["family", "g", "t", "beta"])]
    curve: Option<PathBuf>,
    #[arg(long, requires = "g")]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    g: Option<u32>,
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    beta: Option<String>,
    /// `x,y`, or a marked point P0, P1, P0' (P0p), P1' (P1p).
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Claimed order; defaults to the family's claim for its distinguished point.
    #[arg(long)]
    order: Option<u64>,
    /// Number of good primes to cross-check modulo.
    #[arg(long, default_value_t = 0)]
    modp: usize,
    /// Attach both relation-matrix rows.
    #[arg(long)]
    relations: bool,
    /// Attach the L-function certificate (thmA and thmB only).
    #[arg(long = "l-cert")]
    l_cert: bool,
    /// Work on the integral model; explicit coordinates refer to it.
    #[arg(long)]
    integral: bool,
}

#[derive(Args, Debug)]
struct CorpusCmd {
    /// Corpus JSON file; the shipped corpus when omitted.
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    modp: usize,
    /// Worker threads (overridden by TORSION_FORGE_JOBS).
    #[arg(long)]
    jobs: Option<usize>,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Family(cmd) => cmd_family(&cmd, out),
        Command::Certify(cmd) => cmd_certify(&cmd, out),
        Command::Corpus(cmd) => cmd_corpus(&cmd, out, err),
        Command::Relations(sel) => cmd_relations(&sel, out),
        Command::Version => {
            let _ = writeln!(out, "torsion-forge {}", env!("CARGO_PKG_VERSION"));
            Ok(EXIT_OK)
        }
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), UsageError> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn point_strings(p: &CurvePoint<Rational>) -> [String; 2] {
    match p {
        CurvePoint::Affine { x, y } => [x.to_string(), y.to_string()],
        CurvePoint::Infinity => ["inf".into(), "inf".into()],
    }
}

#[derive(Serialize)]
struct FamilyOutput {
    #[serde(flatten)]
    model: CurveModelJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    integral_marked_points: Option<Vec<[String; 2]>>,
}

fn cmd_family(cmd: &FamilyCmd, out: &mut dyn Write) -> CmdResult {
    let model = build_family(&cmd.select.spec().to_params()?)?;
    let integral_marked_points = cmd.integral.then(|| {
        MarkedPoint::ALL
            .iter()
            .map(|&m| point_strings(&model.to_integral(&model.marked_point(m))))
            .collect()
    });
    emit(out, &FamilyOutput { model: model.to_json(), integral_marked_points })?;
    Ok(EXIT_OK)
}

enum Source {
    Family(Box<CurveModel>),
    Literal(QPoly),
}

fn load_curve_file(path: &PathBuf) -> Result<Source, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("family").is_some() {
        let json: CurveModelJson = serde_json::from_value(value)?;
        return Ok(Source::Family(Box::new(json.rebuild()?)));
    }
    let coeffs = value
        .get("f")
        .or_else(|| value.get("f_int"))
        .ok_or_else(|| UsageError("curve file needs \"family\", \"f\" or \"f_int\"".into()))?;
    let coeffs: Vec<String> = serde_json::from_value(coeffs.clone())?;
    Ok(Source::Literal(QPoly::from_strings(&coeffs)?))
}

fn cmd_certify(cmd: &CertifyCmd, out: &mut dyn Write) -> CmdResult {
    let source = match (&cmd.curve, cmd.family) {
        (Some(path), _) => load_curve_file(path)?,
        (None, Some(family)) => {
            let spec = FamilySpec { family, g: cmd.g.unwrap(), t: cmd.t.clone(), beta: cmd.beta.clone() };
            Source::Family(Box::new(build_family(&spec.to_params()?)?))
        }
        (None, None) => return Err(UsageError("give --curve FILE or --family with --g".into())),
    };
    let model = match &source {
        Source::Family(m) => Some(m.as_ref()),
        Source::Literal(_) => None,
    };
    let curve = match &source {
        Source::Family(m) if cmd.integral => m.integral_curve().clone(),
        Source::Family(m) => m.curve().clone(),
        Source::Literal(f) if cmd.integral => HyperellipticCurve::new(integralize(f).0)?,
        Source::Literal(f) => HyperellipticCurve::new(f.clone())?,
    };

    let (point, marked) = match cmd.point.parse::<MarkedPoint>() {
        Ok(m) => {
            let model = model.ok_or_else(|| UsageError("marked points need a family curve".into()))?;
            let p = model.marked_point(m);
            (if cmd.integral { model.to_integral(&p) } else { p }, Some(m))
        }
        Err(_) => {
            let (x, y) = cmd
                .point
                .split_once(',')
                .ok_or_else(|| UsageError(format!("cannot parse point {:?}; use x,y or P0/P1", cmd.point)))?;
            (CurvePoint::affine(parse_rational(x)?, parse_rational(y)?), None)
        }
    };
    if let CurvePoint::Affine { x, y } = &point {
        if !curve.contains(x, y) {
            return Err(UsageError(format!("point ({x}, {y}) is not on the curve")));
        }
    }

    let order = match (cmd.order, model, marked) {
        (Some(n), _, _) => n,
        (None, Some(m), Some(mp)) if distinguished_point(m.params().family()) == mp => expected_orders(m.params())
            .exact
            .ok_or_else(|| UsageError("this family makes no order claim; pass --order".into()))?,
        _ => return Err(UsageError("pass --order".into())),
    };

    let mut cert = certify_exact_order(&curve, &point, order)?;
    if cmd.relations {
        let m = model.ok_or_else(|| UsageError("--relations needs a family curve".into()))?;
        cert.attach_relations(verify_relation_matrix(m)?);
    }
    if cmd.l_cert {
        let m = model.ok_or_else(|| UsageError("--l-cert needs a family curve".into()))?;
        cert.attach_l_certificate(evaluate_l_certificate(m)?);
    }
    if cmd.modp > 0 {
        let primes = select_good_primes(curve.f(), order, cmd.modp)?;
        cert.attach_modp(&cross_check(curve.f(), &point, order, &primes)?);
    }
    emit(out, &cert)?;
    Ok(if cert.valid { EXIT_OK } else { EXIT_INVALID })
}

fn jobs(flag: Option<usize>) -> Result<usize, UsageError> {
    if let Ok(v) = std::env::var(JOBS_ENV) {
        return v
            .trim()
            .parse::<usize>()
            .map_err(|_| UsageError(format!("{JOBS_ENV}={v:?} is not a thread count")));
    }
    Ok(flag.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
}

fn cmd_corpus(cmd: &CorpusCmd, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = match &cmd.file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        None => SHIPPED_CORPUS.to_string(),
    };
    let entries = parse_corpus(&text)?;
    let report = run_corpus(&entries, cmd.modp, jobs(cmd.jobs)?)?;
    emit(out, &report)?;
    writeln!(err, "{:<16} {:>8} {:>8}  status", "name", "claimed", "computed")?;
    for row in &report.summary {
        let computed = row.computed.map_or("-".to_string(), |c| c.to_string());
        writeln!(err, "{:<16} {:>8} {:>8}  {}", row.name, row.claimed, computed, row.status)?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_INVALID })
}

#[derive(Serialize)]
struct RelationsOutput {
    family: Family,
    g: u32,
    matrix: [[i64; 2]; 2],
    determinant: i64,
    bound: u64,
    rows: [bool; 2],
    pass: bool,
}

fn cmd_relations(sel: &FamilySelect, out: &mut dyn Write) -> CmdResult {
    let params = sel.spec().to_params()?;
    let model = build_family(&params)?;
    let expected = expected_orders(&params);
    let rows = verify_relation_matrix(&model)?;
    let pass = rows.iter().all(|&r| r);
    emit(
        out,
        &RelationsOutput {
            family: params.family(),
            g: params.g(),
            matrix: expected.matrix,
            determinant: expected.determinant(),
            bound: expected.bound,
            rows,
            pass,
        },
    )?;
    Ok(if pass { EXIT_OK } else { EXIT_INVALID })
}
