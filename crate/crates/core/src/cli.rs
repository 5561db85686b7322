//! Command-line front end.
//!
//! Parameters are written as sums of terms such as `-3/2-2*eps` or
//! `-pi/2+eps`; with the complex backend a term may also carry `i`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{
    classify_lower, expand_appell_f4, expand_pfq, Appell4Request, Expansion, ExpansionRequest, LaurentSeries,
    LinearParam, LowerClassification, TruncationPolicy,
};
use crate::numerics::{
    parse_coefficient, render_rational, with_precision, Backend, Coefficient, ComplexScalar, ExactScalar,
    FloatScalar, FromScalar, Number, Scalar,
};
use crate::oracle::{direct_appell_value, direct_series_value, finite_difference_coeffs, OracleConfig};
use crate::{Error, Result};

/// Step used by `--oracle-check` finite differences.
const FD_STEP: f64 = 1e-12;
/// First checkpoint of `--trunc auto`.
const AUTO_M_START: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Pfq,
    Appell4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Everything needed for one run. Also the schema of `--config` files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub kind: Kind,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    pub z: Option<String>,
    pub x1: Option<String>,
    pub x2: Option<String>,
    /// Highest order `n_max`.
    pub order: usize,
    pub backend: String,
    pub precision: u32,
    /// A fixed `M` or `auto`.
    pub trunc: String,
    pub tol: f64,
    pub m_cap: usize,
    pub format: Format,
    pub digits: usize,
    pub oracle_check: bool,
    pub formal: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            kind: Kind::Pfq,
            upper: Vec::new(),
            lower: Vec::new(),
            z: None,
            x1: None,
            x2: None,
            order: 6,
            backend: "exact".into(),
            precision: crate::numerics::DEFAULT_PRECISION,
            trunc: "auto".into(),
            tol: 1e-15,
            m_cap: 8192,
            format: Format::Text,
            digits: 15,
            oracle_check: false,
            formal: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "epsexp", version, about = "Epsilon expansion of pFq and Appell F4 functions")]
pub struct Args {
    /// Function family.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Comma-separated upper parameters, e.g. "-4*eps,-1/2-eps".
    #[arg(long, allow_hyphen_values = true)]
    pub upper: Option<String>,
    /// Comma-separated lower parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub lower: Option<String>,
    /// Argument of pFq.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// First Appell variable.
    #[arg(long, allow_hyphen_values = true)]
    pub x1: Option<String>,
    /// Second Appell variable.
    #[arg(long, allow_hyphen_values = true)]
    pub x2: Option<String>,
    /// Highest order of eps to compute.
    #[arg(long)]
    pub order: Option<usize>,
    /// exact, float or complex.
    #[arg(long)]
    pub backend: Option<String>,
    /// Float precision in bits.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Truncation M, or "auto".
    #[arg(long)]
    pub trunc: Option<String>,
    /// Relative tolerance for --trunc auto.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest M tried by --trunc auto.
    #[arg(long)]
    pub m_cap: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Significant digits of decimal output.
    #[arg(long)]
    pub digits: Option<usize>,
    /// Append finite-difference and remainder checks.
    #[arg(long)]
    pub oracle_check: bool,
    /// Skip the Appell convergence-domain check.
    #[arg(long)]
    pub formal: bool,
    /// JSON file with the same fields; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn split_list(text: &str) -> Vec<String> {
    if text.trim().is_empty() {
        return Vec::new();
    }
    text.split(',').map(|s| s.trim().to_string()).collect()
}

impl Args {
    pub fn into_config(self) -> Result<CliConfig> {
        let mut cfg = match &self.config {
            None => CliConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidRequest(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::InvalidRequest(format!("bad config {}: {e}", path.display())))?
            }
        };
        if let Some(v) = self.kind {
            cfg.kind = v;
        }
        if let Some(v) = self.upper {
            cfg.upper = split_list(&v);
        }
        if let Some(v) = self.lower {
            cfg.lower = split_list(&v);
        }
        if self.z.is_some() {
            cfg.z = self.z;
        }
        if self.x1.is_some() {
            cfg.x1 = self.x1;
        }
        if self.x2.is_some() {
            cfg.x2 = self.x2;
        }
        if let Some(v) = self.order {
            cfg.order = v;
        }
        if let Some(v) = self.backend {
            cfg.backend = v;
        }
        if let Some(v) = self.precision {
            cfg.precision = v;
        }
        if let Some(v) = self.trunc {
            cfg.trunc = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.m_cap {
            cfg.m_cap = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.digits {
            cfg.digits = v;
        }
        cfg.oracle_check |= self.oracle_check;
        cfg.formal |= self.formal;
        Ok(cfg)
    }
}

struct Term {
    coeff: Coefficient,
    eps: bool,
    imaginary: bool,
}

fn parse_term(term: &str, whole: &str) -> Result<Term> {
    let (negative, mut body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(Error::parse(whole, "empty term"));
    }
    let eps = match body.strip_suffix("eps") {
        Some(rest) => {
            body = rest.strip_suffix('*').unwrap_or(rest);
            true
        }
        None => false,
    };
    let imaginary = if body == "i" {
        body = "";
        true
    } else if let Some(rest) = body.strip_suffix("*i") {
        body = rest;
        true
    } else if body.ends_with('i') && !body.ends_with("pi") {
        body = &body[..body.len() - 1];
        true
    } else {
        false
    };
    let coeff = if body.is_empty() {
        if !(eps || imaginary) {
            return Err(Error::parse(whole, "empty term"));
        }
        Coefficient::Rational(1.into())
    } else {
        if body.starts_with(['+', '-']) {
            return Err(Error::parse(whole, format!("misplaced sign in `{term}`")));
        }
        parse_coefficient(body).map_err(|e| match e {
            Error::Parse { reason, .. } => Error::parse(whole, format!("in term `{term}`: {reason}")),
            other => other,
        })?
    };
    Ok(Term {
        coeff: if negative { coeff.negate() } else { coeff },
        eps,
        imaginary,
    })
}

fn split_terms(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if i > 0 && (c == '+' || c == '-') {
            out.push(&text[start..i]);
            start = i;
        }
    }
    out.push(&text[start..]);
    out
}

fn realize<T: FromScalar>(term: &Term, precision: u32) -> Result<T> {
    let value = term.coeff.realize(T::BACKEND, precision)?;
    let value = match (term.imaginary, value) {
        (false, v) => v,
        (true, Scalar::Complex(c)) => Scalar::Complex(ComplexScalar::new(
            FloatScalar::with_prec(precision, 0.0),
            c.re().clone(),
        )),
        (true, _) => return Err(Error::InvalidRequest("imaginary terms need the complex backend".into())),
    };
    T::from_scalar(value)
}

/// Parses `term (('+'|'-') term)*` where a term is a literal, optionally
/// followed by `eps` (with or without `*`), or `eps` alone.
pub fn parse_param<T: FromScalar>(text: &str, precision: u32) -> Result<LinearParam<T>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse(text, "empty parameter"));
    }
    with_precision(precision, || {
        let mut constant = T::zero();
        let mut slope = T::zero();
        for piece in split_terms(&compact) {
            let term = parse_term(piece, text)?;
            let value: T = realize(&term, precision)?;
            if term.eps {
                slope = slope + value;
            } else {
                constant = constant + value;
            }
        }
        Ok(LinearParam::new(constant, slope))
    })
}

/// Parses an `eps`-free value such as `1/2` or `-pi/4`.
pub fn parse_value<T: FromScalar>(text: &str, precision: u32) -> Result<T> {
    let p = parse_param::<T>(text, precision)?;
    if !p.slope.is_zero() {
        return Err(Error::parse(text, "a variable cannot depend on eps"));
    }
    Ok(p.constant)
}

fn truncation(cfg: &CliConfig) -> Result<TruncationPolicy> {
    if cfg.trunc.trim().eq_ignore_ascii_case("auto") {
        return Ok(TruncationPolicy::Adaptive {
            m_start: AUTO_M_START,
            tol: cfg.tol,
            m_cap: cfg.m_cap,
        });
    }
    let m = cfg
        .trunc
        .trim()
        .parse()
        .map_err(|_| Error::parse(&cfg.trunc, "expected an integer M or `auto`"))?;
    Ok(TruncationPolicy::Fixed { m })
}

/// Exit status and text produced by one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 on success, 1 for bad input, 2 for numerical failure.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &CliConfig) -> Outcome {
    match execute(config) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_numerical() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cfg: &CliConfig) -> Result<String> {
    if cfg.digits == 0 {
        return Err(Error::InvalidRequest("--digits must be at least 1".into()));
    }
    match Backend::from_str(cfg.backend.trim())? {
        Backend::Exact => execute_typed::<ExactScalar>(cfg),
        Backend::Float => execute_typed::<FloatScalar>(cfg),
        Backend::Complex => execute_typed::<ComplexScalar>(cfg),
        Backend::Machine => Err(Error::InvalidRequest("machine floats are library-only".into())),
    }
}

struct Report<T> {
    expansion: Expansion<T>,
    p: usize,
    q: usize,
    oracle: Option<OracleReport>,
}

#[derive(Default)]
struct OracleReport {
    fd_digits: Vec<(i64, f64)>,
    fd_note: Option<String>,
    remainders: (f64, f64),
}

impl OracleReport {
    fn ratio(&self) -> Option<f64> {
        (self.remainders.1 > 0.0).then(|| self.remainders.0 / self.remainders.1)
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidRequest(format!("--{flag} is required")))
}

fn execute_typed<T: FromScalar>(cfg: &CliConfig) -> Result<String> {
    let prec = cfg.precision;
    let params = |list: &[String]| -> Result<Vec<LinearParam<T>>> {
        list.iter().map(|s| parse_param::<T>(s, prec)).collect()
    };
    let upper = params(&cfg.upper)?;
    let lower = params(&cfg.lower)?;
    let trunc = truncation(cfg)?;
    let report = match cfg.kind {
        Kind::Pfq => {
            let z = parse_value::<T>(required(&cfg.z, "z")?, prec)?;
            let req = ExpansionRequest {
                upper,
                lower,
                z,
                n_max: cfg.order,
                truncation: trunc,
                precision: prec,
            };
            let expansion = expand_pfq(&req)?;
            let oracle = if cfg.oracle_check {
                Some(pfq_oracle(&req, &expansion)?)
            } else {
                None
            };
            Report {
                expansion,
                p: req.upper.len(),
                q: req.lower.len(),
                oracle,
            }
        }
        Kind::Appell4 => {
            let (Ok(upper), Ok(lower)) = (<[_; 2]>::try_from(upper), <[_; 2]>::try_from(lower)) else {
                return Err(Error::InvalidRequest(
                    "appell4 needs exactly two upper and two lower parameters".into(),
                ));
            };
            let x1 = parse_value::<T>(required(&cfg.x1, "x1")?, prec)?;
            let x2 = parse_value::<T>(required(&cfg.x2, "x2")?, prec)?;
            let req = Appell4Request {
                upper,
                lower,
                x1,
                x2,
                n_max: cfg.order,
                truncation: trunc,
                formal_mode: cfg.formal,
                precision: prec,
            };
            let expansion = expand_appell_f4(&req)?;
            let oracle = if cfg.oracle_check {
                Some(appell_oracle(&req, &expansion)?)
            } else {
                None
            };
            Report {
                expansion,
                p: 2,
                q: 2,
                oracle,
            }
        }
    };
    Ok(match cfg.format {
        Format::Text => render_text(&report, cfg),
        Format::Json => render_json(&report, cfg),
        Format::Csv => render_csv(&report, cfg),
    })
}

fn remainder<T: Number>(series: &LaurentSeries<T>, direct: impl Fn(&T) -> Result<T>) -> Result<(f64, f64)> {
    let at = |den: i64| -> Result<f64> {
        let eps = T::from_ratio(1, den);
        Ok((direct(&eps)? - series.eval(&eps)).magnitude())
    };
    Ok((at(64)?, at(128)?))
}

fn to_float<T: Number>(x: &T) -> Result<FloatScalar> {
    let (re, im) = x
        .to_rational_parts()
        .ok_or_else(|| Error::InvalidRequest("non-finite value".into()))?;
    if im != 0 {
        return Err(Error::InvalidRequest("finite differences need real values".into()));
    }
    Ok(FloatScalar::from_rational(&re))
}

fn float_param<T: Number>(p: &LinearParam<T>) -> Result<LinearParam<FloatScalar>> {
    Ok(LinearParam::new(to_float(&p.constant)?, to_float(&p.slope)?))
}

fn pfq_oracle<T: Number>(req: &ExpansionRequest<T>, exp: &Expansion<T>) -> Result<OracleReport> {
    let m = exp.m_used.max(1);
    let remainders = with_precision(req.precision, || {
        remainder(&exp.series, |eps| direct_series_value(&req.upper, &req.lower, &req.z, eps, m))
    })?;
    let mut report = OracleReport {
        remainders,
        ..OracleReport::default()
    };
    let singular = classify_lower(&req.lower)?
        .kinds
        .iter()
        .any(|k| matches!(k, LowerClassification::Singular { .. }));
    if T::BACKEND == Backend::Complex {
        report.fd_note = Some("finite differences skipped: complex backend".into());
    } else if singular {
        report.fd_note = Some("finite differences skipped: singular lower parameters".into());
    } else {
        // enough guard bits that h^-n amplification leaves ~256 good bits
        let fd_prec = req.precision.max(256) + 40 * req.n_max as u32;
        let fd = with_precision(fd_prec, || -> Result<Vec<(i64, f64)>> {
            let float_req = ExpansionRequest {
                upper: req.upper.iter().map(float_param).collect::<Result<_>>()?,
                lower: req.lower.iter().map(float_param).collect::<Result<_>>()?,
                z: to_float(&req.z)?,
                n_max: req.n_max,
                truncation: TruncationPolicy::Fixed { m },
                precision: fd_prec,
            };
            let estimates = finite_difference_coeffs(&float_req, &OracleConfig::new(m, fd_prec, FD_STEP))?;
            exp.series
                .iter()
                .zip(estimates)
                .map(|((n, c), f)| Ok((n, agreement_digits(&to_float(c)?, &f))))
                .collect()
        })?;
        report.fd_digits = fd;
    }
    Ok(report)
}

fn appell_oracle<T: Number>(req: &Appell4Request<T>, exp: &Expansion<T>) -> Result<OracleReport> {
    let m = exp.m_used;
    let remainders = with_precision(req.precision, || {
        remainder(&exp.series, |eps| {
            direct_appell_value(&req.upper, &req.lower, &req.x1, &req.x2, eps, m)
        })
    })?;
    Ok(OracleReport {
        remainders,
        fd_note: Some("finite differences cover pFq only".into()),
        ..OracleReport::default()
    })
}

/// `-log10` of the relative difference (absolute when `exact` is zero).
fn agreement_digits(exact: &FloatScalar, approx: &FloatScalar) -> f64 {
    let diff = (exact.clone() - approx).magnitude();
    let scale = exact.magnitude();
    let rel = if scale > 0.0 { diff / scale } else { diff };
    if rel == 0.0 {
        f64::INFINITY
    } else {
        -rel.log10()
    }
}

fn parts<T: Number>(c: &T) -> (rug::Rational, rug::Rational) {
    c.to_rational_parts()
        .unwrap_or_else(|| (rug::Rational::new(), rug::Rational::new()))
}

fn text_value<T: Number>(c: &T, digits: usize) -> String {
    if T::BACKEND == Backend::Exact {
        let (re, _) = parts(c);
        if *re.denom() == 1 {
            return re.numer().to_string();
        }
    }
    c.to_decimal(digits)
}

fn label(order: i64) -> String {
    format!("eps^{order}")
}

fn fmt_digits(d: f64) -> String {
    if d.is_infinite() {
        "exact".into()
    } else {
        format!("{d:.1}")
    }
}

fn render_text<T: Number>(report: &Report<T>, cfg: &CliConfig) -> String {
    let mut out = String::new();
    for (n, c) in report.expansion.series.iter() {
        let _ = writeln!(out, "{:<8}{}", label(n), text_value(c, cfg.digits));
    }
    let _ = writeln!(
        out,
        "# M = {}, backend = {}, p = {}, q = {}{}",
        report.expansion.m_used,
        T::BACKEND.name(),
        report.p,
        report.q,
        if report.expansion.coincident_thresholds {
            ", coincident singular thresholds"
        } else {
            ""
        }
    );
    if let Some(oracle) = &report.oracle {
        let _ = writeln!(out, "# oracle check");
        if let Some(note) = &oracle.fd_note {
            let _ = writeln!(out, "{note}");
        }
        for (n, d) in &oracle.fd_digits {
            let _ = writeln!(out, "fd {:<8}agreement digits {}", label(*n), fmt_digits(*d));
        }
        let (r64, r128) = oracle.remainders;
        let ratio = oracle
            .ratio()
            .map_or_else(|| "n/a".to_string(), |r| format!("{r:.3}"));
        let _ = writeln!(out, "laurent remainder eps=1/64 {r64:.3e} eps=1/128 {r128:.3e} ratio {ratio}");
    }
    out
}

fn oracle_json(oracle: &OracleReport) -> Value {
    let fd: Vec<Value> = oracle
        .fd_digits
        .iter()
        .map(|(n, d)| json!({ "order": n, "digits": if d.is_finite() { json!(format!("{d:.1}")) } else { Value::Null } }))
        .collect();
    json!({
        "fd_agreement": fd,
        "fd_note": oracle.fd_note,
        "remainder_eps_1_64": format!("{:.3e}", oracle.remainders.0),
        "remainder_eps_1_128": format!("{:.3e}", oracle.remainders.1),
        "remainder_ratio": oracle.ratio().map(|r| format!("{r:.3}")),
    })
}

fn render_json<T: Number>(report: &Report<T>, cfg: &CliConfig) -> String {
    let coefficients: Vec<Value> = report
        .expansion
        .series
        .iter()
        .map(|(n, c)| {
            let (re, im) = parts(c);
            let exact = (T::BACKEND == Backend::Exact).then(|| format!("{}/{}", re.numer(), re.denom()));
            let imag = (T::BACKEND == Backend::Complex).then(|| render_rational(&im, cfg.digits));
            json!({
                "order": n,
                "exact": exact,
                "decimal": render_rational(&re, cfg.digits),
                "imag_decimal": imag,
            })
        })
        .collect();
    let mut doc = json!({
        "min_order": report.expansion.series.min_order,
        "coefficients": coefficients,
        "meta": {
            "M_used": report.expansion.m_used,
            "backend": T::BACKEND.name(),
            "precision_bits": cfg.precision,
            "p": report.p,
            "q": report.q,
            "coincident_thresholds": report.expansion.coincident_thresholds,
        },
    });
    if let Some(oracle) = &report.oracle {
        doc["oracle_check"] = oracle_json(oracle);
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn render_csv<T: Number>(report: &Report<T>, cfg: &CliConfig) -> String {
    let complex = T::BACKEND == Backend::Complex;
    let mut out = String::from(if complex { "order,decimal,imag_decimal\n" } else { "order,decimal\n" });
    for (n, c) in report.expansion.series.iter() {
        let (re, im) = parts(c);
        let _ = write!(out, "{n},{}", render_rational(&re, cfg.digits));
        if complex {
            let _ = write!(out, ",{}", render_rational(&im, cfg.digits));
        }
        out.push('\n');
    }
    out
}
