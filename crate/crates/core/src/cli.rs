//! Command-line front end.
//!
//! Spectral parameters are given as pairings (λ, α∨) for α ∈ B and points as
//! root coordinates α(log a) for α ∈ B. Output is JSON (default) or CSV on
//! standard output; exit codes are 0 (success), 2 (usage) and 3 (numerical
//! failure: resonance, pole or accuracy).

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::assemble::{limit_main, limit_prop22, SweepOptions, SweepResult, Workspace};
use crate::error::Error;
use crate::factors::{c_bold, c_bold_tilde, c_tilde, f_factor, log_m_word};
use crate::rootsystem::{ChamberPoint, Covector, RootSystem};
use crate::series::{phi, psi_cm, Character, MultiplicityFunction, SeriesValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

const AFTER_HELP: &str = "\
Coordinates: --lambda takes the pairings (λ,α∨) for the simple roots α of the
doubled system, as complex literals <re>[+|-]<im>i (e.g. 0.9+0.31i,1.3-0.27i).
--point takes α(log a) for the same simple roots. Toda and Whittaker
evaluations accept any point; Harish-Chandra quantities need all coordinates
positive. In `limit` sweeps the point a is the Toda-side point; a_M is formed
internally and rows with a_M outside the positive chamber are flagged.

CSV columns: eval prints function,value_re,value_im,tail_est; limit prints
M,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,tail_est,height,in_chamber.";

#[derive(Debug, Parser)]
#[command(name = "hgtoda", version, about = "Hypergeometric and Whittaker functions on root systems", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single function.
    Eval(EvalArgs),
    /// Run an M-sweep of one of the limit statements.
    Limit(LimitArgs),
    /// Root-system data.
    Roots {
        #[command(subcommand)]
        action: RootsAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum RootsAction {
    /// Positive roots, Weyl group order and ρ∨ pairings.
    Info {
        #[arg(long = "type", value_name = "SYSTEM")]
        system: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// Heckman-Opdam F(λ,k;a)
    F,
    /// Harish-Chandra series Φ(λ,k;a)
    Phi,
    /// δ(k;a)^{1/2} Φ(λ,k;a)
    PsiCm,
    /// Toda series Ψ_T(λ,ψ;a)
    PsiToda,
    /// Whittaker function W(λ,ψ;a)
    Whittaker,
    /// c̃(λ,k)
    CTilde,
    /// c̃(λ,1/2)
    CBoldTilde,
    /// c(λ,1/2)
    CBold,
    /// f(λ)
    FFactor,
    /// M(w,λ,ψ) for the word given by --word
    MIntertwiner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Prop22,
    Main,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Root system label: A1-A4, B2, B3, C2, C3, D4, G2.
    #[arg(long = "type", value_name = "SYSTEM")]
    pub system: String,
    /// Pairings (λ,α∨), α ∈ B, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
    pub lambda: Vec<Complex64>,
    /// α(log a), α ∈ B, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Vec<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub common: Common,
    /// Multiplicities, one per root orbit (or one for all).
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<f64>,
    /// Character values l_α, α ∈ B (default all 1).
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<f64>,
    /// Truncation height N.
    #[arg(long, default_value_t = 40, value_parser = parse_positive)]
    pub trunc: usize,
    /// Reduced word i₁,…,i_k for m-intertwiner (w = s_{i₁}⋯s_{i_k}).
    #[arg(long, value_delimiter = ',')]
    pub word: Vec<usize>,
    /// Evaluate F as a contour mean around λ (for non-generic λ such as ρ(k)).
    #[arg(long)]
    pub regularize: bool,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(value_enum)]
    pub kind: LimitKind,
    #[command(flatten)]
    pub common: Common,
    /// M values as start:end[:step] (step defaults to 1).
    #[arg(long = "m-range", value_parser = parse_range)]
    pub m_range: MRange,
    /// Maximal truncation height for the adaptive series.
    #[arg(long, default_value_t = 80, value_parser = parse_positive)]
    pub trunc: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MRange {
    pub values: Vec<f64>,
}

/// Parses `<re>`, `<re>+<im>i` or `<re>-<im>i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("malformed complex literal {s:?} (expected e.g. 0.9+0.31i)");
    let Some(body) = s.strip_suffix('i') else {
        return f64::from_str(s).map(|r| Complex64::new(r, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re = f64::from_str(&body[..split]).map_err(|_| bad())?;
    let im = f64::from_str(&body[split..]).map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

/// Parses `start:end[:step]`, inclusive of `end` up to rounding.
pub fn parse_range(s: &str) -> Result<MRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("malformed M range {s:?}"));
    let (start, end, step) = match parts.as_slice() {
        [a, b] => (num(a)?, num(b)?, 1.0),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(format!("malformed M range {s:?} (expected start:end[:step])")),
    };
    if !(start > 0.0) || !(end >= start) || !(step > 0.0) || !end.is_finite() {
        return Err(format!("M range {s:?} needs 0 < start <= end and step > 0"));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000 {
        return Err(format!("M range {s:?} has too many points"));
    }
    Ok(MRange {
        values: (0..count).map(|i| start + step * i as f64).collect(),
    })
}

/// A failure together with the exit code it maps to.
struct Failure {
    code: i32,
    error: Error,
    parameter: &'static str,
    params: Map<String, Value>,
}

impl Failure {
    fn usage(error: Error, parameter: &'static str) -> Self {
        Failure {
            code: EXIT_USAGE,
            error,
            parameter,
            params: Map::new(),
        }
    }

    fn with_params(mut self, params: &Map<String, Value>) -> Self {
        self.params = params.clone();
        self
    }
}

fn classify(error: Error) -> Failure {
    let (code, parameter) = match error.root_cause() {
        Error::Resonance { .. } | Error::Pole { .. } | Error::ZeroByPole { .. } => (EXIT_NUMERIC, "lambda"),
        Error::Accuracy { .. } => (EXIT_NUMERIC, "trunc"),
        Error::DegenerateCharacter { .. } => (EXIT_USAGE, "l"),
        Error::Domain(_) => (EXIT_USAGE, "point"),
        _ => (EXIT_USAGE, "type"),
    };
    Failure {
        code,
        error,
        parameter,
        params: Map::new(),
    }
}

fn error_object(error: &Error, parameter: &str) -> Value {
    json!({
        "error_kind": error.kind(),
        "detail": error.to_string(),
        "offending_parameter": parameter,
    })
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn complex_list(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&z| Value::String(format_complex(z))).collect())
}

fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `args` (including the program name), runs the request and writes
/// the result. Returns the process exit code.
pub fn run_from<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (command, format, result) = match &cli.command {
        Command::Eval(a) => ("eval", a.common.format, run_eval(a)),
        Command::Limit(a) => ("limit", a.common.format, run_limit(a)),
        Command::Roots {
            action: RootsAction::Info { system, format },
        } => ("roots info", *format, run_roots(system)),
    };
    match result {
        Ok(report) => {
            let text = match format {
                Format::Json => report.json(command),
                Format::Csv => report.csv(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.numeric_failure {
                for e in &report.errors {
                    let _ = writeln!(err, "error: {}", e["detail"].as_str().unwrap_or(""));
                }
                EXIT_NUMERIC
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            let obj = error_object(&f.error, f.parameter);
            if f.code == EXIT_NUMERIC {
                let report = Report {
                    params: f.params.clone(),
                    body: Body::Value(Value::Null),
                    errors: vec![obj],
                    numeric_failure: true,
                };
                let text = match format {
                    Format::Json => report.json(command),
                    Format::Csv => String::new(),
                };
                let _ = out.write_all(text.as_bytes());
            }
            let _ = writeln!(err, "error: {} (parameter --{})", f.error, f.parameter);
            f.code
        }
    }
}

enum Body {
    Value(Value),
    Eval { function: String, value: SeriesValue<f64> },
    Sweep(SweepResult<f64>),
    Table(Vec<(String, String)>),
}

struct Report {
    params: Map<String, Value>,
    body: Body,
    errors: Vec<Value>,
    numeric_failure: bool,
}

impl Report {
    fn json(&self, command: &str) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(command.into()));
        top.insert("params".into(), Value::Object(self.params.clone()));
        match &self.body {
            Body::Value(v) => {
                top.insert("value".into(), v.clone());
            }
            Body::Eval { function, value } => {
                top.insert(
                    "value".into(),
                    json!({
                        "function": function,
                        "re": num(value.value.re),
                        "im": num(value.value.im),
                        "tail_est": num(value.tail),
                    }),
                );
            }
            Body::Sweep(s) => {
                let rows = s
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "M": num(r.m),
                            "lhs_re": num(r.lhs.re),
                            "lhs_im": num(r.lhs.im),
                            "rhs_re": num(r.rhs.re),
                            "rhs_im": num(r.rhs.im),
                            "rel_err": num(r.rel_err),
                            "tail_est": num(r.tail_estimate()),
                            "height": r.height,
                            "in_chamber": r.in_chamber,
                        })
                    })
                    .collect();
                top.insert("rows".into(), Value::Array(rows));
                if let Some(t) = s.termwise_limit {
                    top.insert("termwise_limit".into(), complex_json(t));
                }
                if let Some(slope) = s.slope() {
                    top.insert("log_error_slope".into(), num(slope));
                }
            }
            Body::Table(rows) => {
                let obj: Map<String, Value> = rows
                    .iter()
                    .map(|(k, v)| {
                        let parsed = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.clone()));
                        (k.clone(), parsed)
                    })
                    .collect();
                top.insert("value".into(), Value::Object(obj));
            }
        }
        top.insert("errors".into(), Value::Array(self.errors.clone()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON serialisation");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let f = csv_number;
        match &self.body {
            Body::Value(_) => {}
            Body::Eval { function, value } => {
                let _ = w.write_record(["function", "value_re", "value_im", "tail_est"]);
                let _ = w.write_record([function.clone(), f(value.value.re), f(value.value.im), f(value.tail)]);
            }
            Body::Sweep(s) => {
                let _ = w.write_record([
                    "M", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err", "tail_est", "height", "in_chamber",
                ]);
                for r in &s.rows {
                    let _ = w.write_record([
                        f(r.m),
                        f(r.lhs.re),
                        f(r.lhs.im),
                        f(r.rhs.re),
                        f(r.rhs.im),
                        f(r.rel_err),
                        f(r.tail_estimate()),
                        r.height.to_string(),
                        r.in_chamber.to_string(),
                    ]);
                }
            }
            Body::Table(rows) => {
                let _ = w.write_record(["key", "value"]);
                for (k, v) in rows {
                    let _ = w.write_record([k, v]);
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
    }
}

/// Shortest round-trip representation; exponent form outside [1e-4, 1e15).
fn csv_number(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn root_system(label: &str) -> Result<RootSystem, Failure> {
    RootSystem::from_label(label).map_err(|e| Failure::usage(e, "type"))
}

fn spectral(rs: &RootSystem, lambda: &[Complex64]) -> Result<Covector<f64>, Failure> {
    if lambda.len() != rs.rank() {
        return Err(Failure::usage(
            Error::Configuration(format!("{} needs {} pairings, got {}", rs.label(), rs.rank(), lambda.len())),
            "lambda",
        ));
    }
    Covector::from_pairings(rs, lambda).map_err(|e| Failure::usage(e, "lambda"))
}

fn point(rs: &RootSystem, x: &[f64], chamber: bool) -> Result<ChamberPoint<f64>, Failure> {
    if x.len() != rs.rank() {
        return Err(Failure::usage(
            Error::Configuration(format!("{} needs {} point coordinates, got {}", rs.label(), rs.rank(), x.len())),
            "point",
        ));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Failure::usage(Error::Domain("point coordinates must be finite".into()), "point"));
    }
    let p = ChamberPoint::new(x.to_vec());
    if chamber && !p.in_positive_chamber() {
        return Err(Failure::usage(
            Error::Domain("this function needs all point coordinates positive".into()),
            "point",
        ));
    }
    Ok(p)
}

fn multiplicity(rs: &RootSystem, k: &[f64]) -> Result<MultiplicityFunction<f64>, Failure> {
    if k.is_empty() {
        return Err(Failure::usage(Error::Configuration("--k is required".into()), "k"));
    }
    MultiplicityFunction::new(rs, k).map_err(|e| Failure::usage(e, "k"))
}

fn character(rs: &RootSystem, l: &[f64]) -> Result<Character<f64>, Failure> {
    if l.is_empty() {
        return Ok(Character::standard(rs.rank()));
    }
    Character::new(rs, l).map_err(|e| Failure::usage(e, "l"))
}

fn common_params(c: &Common, rs: &RootSystem) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("type".into(), Value::String(rs.label()));
    p.insert("lambda".into(), complex_list(&c.lambda));
    p.insert("point".into(), Value::Array(c.point.iter().map(|&x| num(x)).collect()));
    p
}

fn run_eval(a: &EvalArgs) -> Result<Report, Failure> {
    let rs = root_system(&a.common.system)?;
    let lam = spectral(&rs, &a.common.lambda)?;
    let n = a.trunc;
    let needs_point = !matches!(
        a.function,
        Function::CTilde | Function::CBoldTilde | Function::CBold | Function::FFactor | Function::MIntertwiner
    );
    let chamber = matches!(a.function, Function::F | Function::Phi | Function::PsiCm);
    let pt = if needs_point { Some(point(&rs, &a.common.point, chamber)?) } else { None };
    let exact = |v: Complex64| SeriesValue { value: v, tail: 0.0 };
    let mut params = common_params(&a.common, &rs);
    params.insert("trunc".into(), json!(n));
    let value = match a.function {
        Function::F | Function::Phi | Function::PsiCm => {
            let k = multiplicity(&rs, &a.k)?;
            params.insert("k".into(), Value::Array(a.k.iter().map(|&x| num(x)).collect()));
            let p = pt.as_ref().expect("point parsed");
            match a.function {
                Function::F => {
                    let ws = Workspace::new(rs.clone());
                    if a.regularize {
                        params.insert("regularize".into(), Value::Bool(true));
                        ws.hypergeom_f_regularized(&lam, &k, p, n)
                    } else {
                        ws.hypergeom_f(&lam, &k, p, n)
                    }
                }
                Function::Phi => phi(&rs, &lam, &k, p, n),
                _ => psi_cm(&rs, &lam, &k, p, n),
            }
        }
        Function::PsiToda | Function::Whittaker => {
            let psi = character(&rs, &a.l)?;
            params.insert("l".into(), Value::Array(psi.values().iter().map(|&x| num(x)).collect()));
            let p = pt.as_ref().expect("point parsed");
            let ws = Workspace::new(rs.clone());
            if a.function == Function::PsiToda {
                ws.psi_toda(&lam, &psi, p, n).map(|s| s.value())
            } else {
                ws.whittaker_w(&lam, &psi, p, n)
            }
        }
        Function::CTilde => {
            let k = multiplicity(&rs, &a.k)?;
            params.insert("k".into(), Value::Array(a.k.iter().map(|&x| num(x)).collect()));
            c_tilde(&rs, &lam, &k).map(exact)
        }
        Function::CBoldTilde => c_bold_tilde(&rs, &lam).map(exact),
        Function::CBold => c_bold(&rs, &lam).map(exact),
        Function::FFactor => f_factor(&rs, &lam).map(exact),
        Function::MIntertwiner => {
            let psi = character(&rs, &a.l)?;
            if let Some(&bad) = a.word.iter().find(|&&i| i >= rs.rank()) {
                return Err(Failure::usage(
                    Error::Configuration(format!("word letter {bad} out of range for {}", rs.label())),
                    "word",
                ));
            }
            params.insert("word".into(), json!(a.word));
            log_m_word(&rs, &a.word, &lam, &psi).map(|v| exact(v.exp()))
        }
    }
    .map_err(|e| classify(e).with_params(&params))?;
    let function = a.function.to_possible_value().expect("named variant").get_name().to_string();
    Ok(Report {
        params,
        body: Body::Eval { function, value },
        errors: Vec::new(),
        numeric_failure: false,
    })
}

fn run_limit(a: &LimitArgs) -> Result<Report, Failure> {
    let rs = root_system(&a.common.system)?;
    let lam = spectral(&rs, &a.common.lambda)?;
    let pt = point(&rs, &a.common.point, false)?;
    let ws = Workspace::new(rs.clone());
    let opts = SweepOptions::with_max(a.trunc);
    let ms = &a.m_range.values;
    let mut params = common_params(&a.common, &rs);
    params.insert("trunc".into(), json!(a.trunc));
    params.insert("m".into(), Value::Array(ms.iter().map(|&m| num(m)).collect()));
    let result = match a.kind {
        LimitKind::Prop22 => limit_prop22(&ws, &lam, &pt, ms, &opts),
        LimitKind::Main => limit_main(&ws, &lam, &pt, ms, &opts),
    }
    .map_err(|e| classify(e).with_params(&params))?;
    params.insert("kind".into(), Value::String(result.kind.label().into()));
    let mut errors = Vec::new();
    for row in &result.rows {
        if let Some(e) = &row.error {
            let mut obj = error_object(e, classify(e.clone()).parameter);
            obj["M"] = num(row.m);
            errors.push(obj);
        }
    }
    let numeric_failure = !errors.is_empty();
    Ok(Report {
        params,
        body: Body::Sweep(result),
        errors,
        numeric_failure,
    })
}

fn run_roots(label: &str) -> Result<Report, Failure> {
    let rs = root_system(label)?;
    let group = rs.weyl_group();
    let rho_vee: Vec<String> = rs.rho_vee().iter().map(|q| q.to_string()).collect();
    let rho: Vec<String> = rs.rho().iter().map(|q| q.to_string()).collect();
    let roots: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coords.clone()).collect();
    let pairings: Vec<i64> = rs.positive_roots().iter().map(|r| rs.rho_vee_pairing(&r.coords)).collect();
    let norms: Vec<i64> = rs.positive_roots().iter().map(|r| r.norm_sq()).collect();
    let table = vec![
        ("system".to_string(), format!("\"{}\"", rs.label())),
        ("rank".to_string(), rs.rank().to_string()),
        ("positive_roots".to_string(), rs.positive_roots().len().to_string()),
        ("weyl_order".to_string(), group.len().to_string()),
        ("root_orbits".to_string(), rs.num_orbits().to_string()),
        ("gram".to_string(), serde_json::to_string(rs.gram()).expect("JSON")),
        ("roots".to_string(), serde_json::to_string(&roots).expect("JSON")),
        ("root_norms".to_string(), serde_json::to_string(&norms).expect("JSON")),
        ("rho_vee_pairings".to_string(), serde_json::to_string(&pairings).expect("JSON")),
        ("rho_vee".to_string(), serde_json::to_string(&rho_vee).expect("JSON")),
        ("rho".to_string(), serde_json::to_string(&rho).expect("JSON")),
        ("longest_word".to_string(), serde_json::to_string(&group.longest().word).expect("JSON")),
    ];
    let mut params = Map::new();
    params.insert("type".into(), Value::String(rs.label()));
    Ok(Report {
        params,
        body: Body::Table(table),
        errors: Vec::new(),
        numeric_failure: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.9+0.31i").unwrap(), Complex64::new(0.9, 0.31));
        assert_eq!(parse_complex("1.3-0.27i").unwrap(), Complex64::new(1.3, -0.27));
        assert_eq!(parse_complex("-1.5e-3+2E+1i").unwrap(), Complex64::new(-1.5e-3, 20.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        for bad in ["", "i", "1+i", "1 + 2i", "abc", "1+2j", "nan+1i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2:6").unwrap().values, vec![2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(parse_range("1:2:0.5").unwrap().values, vec![1.0, 1.5, 2.0]);
        assert!(parse_range("6:2").is_err());
        assert!(parse_range("0:2").is_err());
        assert!(parse_range("1:2:0").is_err());
        assert!(parse_range("1").is_err());
    }
}
