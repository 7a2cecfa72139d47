//! The `fps` command-line front end.
//!
//! Every verb maps to one library operation. Series inputs are file paths,
//! `-` for standard input, or inline JSON. Results go to standard output (or
//! `--out`) as JSON by default; diagnostics go to standard error.
//!
//! Exit codes: 0 success, 1 verification failed, 2 parse error,
//! 3 domain error, 4 internal assertion, 5 inputs inconsistent with each
//! other or with `--field` / `--N` (including per-coefficient field errors).

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::{self, ConstructError, FreeCoefficientSpec};
use crate::exactfield::{FieldContext, FieldElement, FieldError, FieldKind};
use crate::finiteorder::{self, ConjugacyError, Order};
use crate::io::{self, element_from_text, element_to_json, jet_to_json, Format, ParseError};
use crate::series::{GroupJet, Jet, SeriesError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Compose,
    Invert,
    Iterate,
    Order,
    Star,
    Linearize,
    Centralizer,
    CompleteConjugator,
    Build,
    BuildExistence,
    Forced,
    Schroder,
    Normalize,
    StanleyCheck,
    StanleyBuild,
    Growth,
    Verify,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "fps", about = "Exact computations in the composition group of formal power series")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Series inputs: file paths, `-` for stdin, or inline JSON.
    pub inputs: Vec<String>,
    /// Additional series inputs, same forms as the positional ones.
    #[arg(long = "in")]
    pub input: Vec<String>,
    /// Output path; `-` or absent means stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// `rational` or `cyclotomic:n`.
    #[arg(long)]
    pub field: Option<String>,
    /// Truncation order.
    #[arg(long = "N")]
    pub truncation: Option<usize>,
    /// Compositional order n (build, verify, forced, centralizer).
    #[arg(long)]
    pub order: Option<u64>,
    /// Sparse coefficients `k=v,k=v`; unlisted free indices are 0.
    /// For complete-conjugator these are the prescribed g_{nj+1}.
    #[arg(long)]
    pub free: Vec<String>,
    /// Helper coefficients h_{nj+1} for build-existence.
    #[arg(long = "free-h")]
    pub free_h: Vec<String>,
    /// Multiplier for build; defaults to a primitive root found in the field.
    #[arg(long)]
    pub omega: Option<String>,
    /// Iteration count for `iterate`.
    #[arg(long)]
    pub times: Option<u64>,
    /// Coefficient index for `forced`.
    #[arg(long)]
    pub index: Option<usize>,
    /// Bound on |a_k|^(1/k) for `growth`.
    #[arg(long, default_value_t = 1000.0)]
    pub bound: f64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Domain(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Parse(ParseError::ZeroLinearTerm) => 3,
            CliError::Parse(ParseError::Json(_)) => 2,
            CliError::Parse(_) => 5,
            CliError::Mismatch(_) => 5,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::TruncationMismatch { .. }
            | SeriesError::CoefficientField { .. }
            | SeriesError::Field(FieldError::ContextMismatch { .. }) => CliError::Mismatch(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Parse(_) => CliError::Usage(e.to_string()),
            FieldError::WrongDegree { .. } | FieldError::ContextMismatch { .. } => {
                CliError::Mismatch(e.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ConjugacyError> for CliError {
    fn from(e: ConjugacyError) -> Self {
        match e {
            ConjugacyError::Series(s) => s.into(),
            ConjugacyError::Internal(m) => CliError::Internal(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Series(s) => s.into(),
            ConstructError::Field(f) => f.into(),
            ConstructError::Internal(m) => CliError::Internal(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// Result of a successful dispatch. `exit_code` is 1 only when `verify`
/// found the series does not have the requested order.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn new(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            exit_code: 0,
        }
    }

    fn series(jet: &Jet) -> Self {
        Outcome::new(jet_to_json(jet), jet.to_string())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.to_string(),
            Format::Text => self.text.clone(),
        }
    }
}

fn read_input(spec: &str) -> Result<String, CliError> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        return Ok(buf);
    }
    fs::read_to_string(spec).map_err(|source| CliError::Io {
        path: spec.to_string(),
        source,
    })
}

/// Accepts either a bare series or a construction record (its `series`).
fn series_from_text(text: &str) -> Result<GroupJet, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let series = match value.get("series") {
        Some(inner) => inner,
        None => &value,
    };
    Ok(io::group_jet_from_json(series)?)
}

/// Splits `k=v,k=v` at commas outside brackets, so array values survive.
fn split_entries(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_index_map(
    ctx: &Arc<FieldContext>,
    args: &[String],
) -> Result<BTreeMap<usize, FieldElement>, CliError> {
    let mut map = BTreeMap::new();
    for arg in args {
        for entry in split_entries(arg) {
            let (k, v) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected k=v, got {entry:?}")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index in {entry:?}")))?;
            let v = element_from_text(ctx, v).map_err(|e| match e {
                FieldError::WrongDegree { .. } => CliError::Mismatch(format!("value for index {k}: {e}")),
                other => CliError::Usage(format!("value for index {k}: {other}")),
            })?;
            map.insert(k, v);
        }
    }
    Ok(map)
}

fn require<T>(value: Option<T>, flag: &str, verb: Verb) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{verb:?} needs {flag}")))
}

/// A primitive n-th root of unity in the field: ±ζ^e for some e.
fn default_omega(ctx: &Arc<FieldContext>, n: u64) -> Result<FieldElement, CliError> {
    let zeta = ctx.zeta();
    let mut power = ctx.one();
    for _ in 0..ctx.index().max(1) {
        for candidate in [power.clone(), -&power] {
            if candidate.is_primitive_root(n) {
                return Ok(candidate);
            }
        }
        power = &power * &zeta;
    }
    Err(CliError::Domain(format!(
        "field {ctx} has no primitive root of unity of order {n}"
    )))
}

impl Command {
    fn series_inputs(&self) -> Result<Vec<GroupJet>, CliError> {
        let jets = self
            .inputs
            .iter()
            .chain(&self.input)
            .map(|s| read_input(s).and_then(|t| series_from_text(&t)))
            .collect::<Result<Vec<_>, _>>()?;
        let field = self.field.as_deref().map(io::context_from_descriptor).transpose()?;
        for (i, j) in jets.iter().enumerate() {
            if let Some(ctx) = &field {
                if ctx.as_ref() != j.context().as_ref() {
                    return Err(CliError::Mismatch(format!(
                        "input {} is over {}, but --field is {ctx}",
                        i + 1,
                        j.context()
                    )));
                }
            }
            if let Some(n) = self.truncation {
                if n != j.order() {
                    return Err(CliError::Mismatch(format!(
                        "input {} has N = {}, but --N is {n}",
                        i + 1,
                        j.order()
                    )));
                }
            }
            if j.context() != jets[0].context() || j.order() != jets[0].order() {
                return Err(CliError::Mismatch(format!(
                    "input {} (N = {}, {}) differs from input 1 (N = {}, {})",
                    i + 1,
                    j.order(),
                    j.context(),
                    jets[0].order(),
                    jets[0].context()
                )));
            }
        }
        Ok(jets)
    }

    fn exactly<const K: usize>(&self) -> Result<[GroupJet; K], CliError> {
        let jets = self.series_inputs()?;
        let found = jets.len();
        jets.try_into().map_err(|_| {
            CliError::Usage(format!("{:?} takes {K} series input(s), got {found}", self.verb))
        })
    }

    fn build_spec(&self) -> Result<FreeCoefficientSpec, CliError> {
        let n = require(self.order, "--order", self.verb)?;
        let order = require(self.truncation, "--N", self.verb)?;
        let ctx = match &self.field {
            Some(d) => io::context_from_descriptor(d)?,
            None if n <= 2 => FieldContext::rational(),
            None => FieldContext::cyclotomic(n)?,
        };
        let omega = match &self.omega {
            Some(text) => element_from_text(&ctx, text)?,
            None => default_omega(&ctx, n)?,
        };
        let free = parse_index_map(&ctx, &self.free)?;
        Ok(FreeCoefficientSpec::from_sparse(omega, n, order, &free)?)
    }

    /// Executes the command and returns its output without writing it.
    pub fn run(&self) -> Result<Outcome, CliError> {
        match self.verb {
            Verb::Compose => {
                let [f, g] = self.exactly::<2>()?;
                Ok(Outcome::series((f.compose(&g)?).as_jet()))
            }
            Verb::Invert => {
                let [f] = self.exactly::<1>()?;
                Ok(Outcome::series(&f.invert()))
            }
            Verb::Iterate => {
                let [f] = self.exactly::<1>()?;
                let m = require(self.times, "--times", self.verb)?;
                Ok(Outcome::series(&f.iterate(m)))
            }
            Verb::Order => {
                let [f] = self.exactly::<1>()?;
                let result = finiteorder::compositional_order(&f);
                let json = match result.order {
                    Order::Finite(n) => json!({ "order": n }),
                    Order::Infinite(_) => json!({ "order": "infinite" }),
                };
                Ok(Outcome::new(json, format!("order: {}", result.order)))
            }
            Verb::Star => {
                let [f] = self.exactly::<1>()?;
                Ok(Outcome::series((finiteorder::star(&f)?).as_jet()))
            }
            Verb::Linearize => {
                let [f] = self.exactly::<1>()?;
                let (conj, omega) = finiteorder::linearize_finite(&f)?;
                Ok(Outcome::new(
                    json!({ "conjugator": jet_to_json(&conj), "omega": element_to_json(&omega) }),
                    format!("conjugator: {conj}\nomega: {omega}"),
                ))
            }
            Verb::Centralizer => {
                let [h] = self.exactly::<1>()?;
                let n = require(self.order, "--order", self.verb)?;
                if n == 0 {
                    return Err(CliError::Usage("--order must be positive".into()));
                }
                let member = finiteorder::in_centralizer(&h, n);
                Ok(Outcome::new(
                    json!({ "in_centralizer": member }),
                    format!("in_centralizer: {member}"),
                ))
            }
            Verb::CompleteConjugator => {
                let [f] = self.exactly::<1>()?;
                let ctx = f.context();
                let n = finiteorder::compositional_order(&f)
                    .finite()
                    .ok_or_else(|| CliError::from(ConjugacyError::NotFiniteOrder))?;
                let mut prescribed = parse_index_map(ctx, &self.free)?;
                prescribed.entry(1).or_insert_with(|| ctx.one());
                for k in (1..=f.order()).step_by(n as usize) {
                    prescribed.entry(k).or_insert_with(|| ctx.zero());
                }
                Ok(Outcome::series((finiteorder::complete_conjugator(&f, &prescribed)?).as_jet()))
            }
            Verb::Build => {
                let record = construct::build_unique(&self.build_spec()?)?;
                Ok(record_outcome(&record))
            }
            Verb::BuildExistence => {
                let spec = self.build_spec()?;
                let free_h = parse_index_map(spec.context(), &self.free_h)?;
                Ok(record_outcome(&construct::build_existence(&spec, &free_h)?))
            }
            Verb::Forced => {
                let [f] = self.exactly::<1>()?;
                let n = require(self.order, "--order", self.verb)?;
                let k = require(self.index, "--index", self.verb)?;
                let (a_k, p) = construct::forced_coefficient(&f, k, n)?;
                Ok(Outcome::new(
                    json!({ "index": k, "a_k": element_to_json(&a_k), "p_value": element_to_json(&p) }),
                    format!("a{k} = {a_k}\nP = {p}"),
                ))
            }
            Verb::Schroder => {
                let [f] = self.exactly::<1>()?;
                Ok(Outcome::series((construct::schroder_linearize(&f)?).as_jet()))
            }
            Verb::Normalize => {
                let [f] = self.exactly::<1>()?;
                let (g, c) = construct::normal_form(&f)?;
                Ok(Outcome::new(
                    json!({ "normal_form": jet_to_json(&g), "conjugator": jet_to_json(&c) }),
                    format!("normal_form: {g}\nconjugator: {c}"),
                ))
            }
            Verb::StanleyCheck => {
                let [f] = self.exactly::<1>()?;
                let ok = construct::stanley_involution_check(&f);
                Ok(Outcome::new(json!({ "involutive": ok }), format!("involutive: {ok}")))
            }
            Verb::StanleyBuild => {
                let [g] = self.exactly::<1>()?;
                Ok(Outcome::series((construct::stanley_build(&g)?).as_jet()))
            }
            Verb::Growth => {
                let order = require(self.truncation, "--N", self.verb)?;
                let ctx = FieldContext::rational();
                if let Some(d) = &self.field {
                    if io::context_from_descriptor(d)?.kind() != FieldKind::Rational {
                        return Err(CliError::Domain("growth runs over the rational field".into()));
                    }
                }
                let free = parse_index_map(&ctx, &self.free)?;
                let spec = FreeCoefficientSpec::from_sparse(ctx.from_int(-1), 2, order, &free)?;
                let report = construct::growth_report(&spec, self.bound)?;
                let text = report
                    .roots
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("k={:<3} |a_k|^(1/k) = {r:.6e}", i + 1))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Outcome::new(
                    json!({
                        "series": jet_to_json(&report.record.series),
                        "roots": report.roots,
                        "bound": report.bound,
                        "exceeds": report.exceeds_bound(),
                        "first_exceeding": report.first_exceeding,
                    }),
                    text,
                ))
            }
            Verb::Verify => {
                let [f] = self.exactly::<1>()?;
                let n = require(self.order, "--order", self.verb)?;
                let ok = f.is_identity_iterate(n);
                let mut out = Outcome::new(json!({ "verified": ok }), format!("verified: {ok}"));
                if !ok {
                    out.exit_code = 1;
                }
                Ok(out)
            }
        }
    }

    /// Runs the command, writes the output, and returns the exit code.
    pub fn execute(&self) -> i32 {
        match self.run() {
            Ok(outcome) => {
                let mut rendered = outcome.render(self.format);
                rendered.push('\n');
                match self.out.as_deref() {
                    None | Some("-") => print!("{rendered}"),
                    Some(path) => {
                        if let Err(e) = fs::write(path, rendered) {
                            eprintln!("fps: error: {path}: {e}");
                            return 2;
                        }
                    }
                }
                outcome.exit_code
            }
            Err(e) => {
                eprintln!("fps: error: {e}");
                e.exit_code()
            }
        }
    }
}

fn record_outcome(record: &construct::ConstructionRecord) -> Outcome {
    let mut text = format!("series: {}", record.series);
    for (k, v) in &record.forced {
        text.push_str(&format!("\nforced a{k} = {v}"));
    }
    if let Some(h) = &record.helper {
        text.push_str(&format!("\nhelper: {h}"));
    }
    Outcome::new(io::record_to_json(record), text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmd(args: &[&str]) -> Command {
        Command::try_parse_from(std::iter::once("fps").chain(args.iter().copied())).unwrap()
    }

    const INVOLUTION3: &str = r#"{"field":{"kind":"rational"},"N":3,"coeffs":["-1","-1","-1"]}"#;

    #[test]
    fn entry_splitting_respects_brackets() {
        assert_eq!(
            split_entries(r#"2=-1, 3=["0","1"],4=1/2"#),
            vec!["2=-1", r#"3=["0","1"]"#, "4=1/2"]
        );
    }

    #[test]
    fn order_of_minus_z() {
        let out = cmd(&["order", r#"{"field":{"kind":"rational"},"N":4,"coeffs":["-1","0","0","0"]}"#])
            .run()
            .unwrap();
        assert_eq!(out.json.to_string(), r#"{"order":2}"#);
    }

    #[test]
    fn build_involution() {
        let out = cmd(&["build", "--order", "2", "--N", "5", "--free", "2=-1,4=-1"]).run().unwrap();
        assert_eq!(out.json["forced"], json!({"3": "-1", "5": "-1"}));
        assert_eq!(out.json["helper"], Value::Null);
    }

    #[test]
    fn text_format() {
        let out = cmd(&["invert", INVOLUTION3, "--format", "text"]).run().unwrap();
        assert_eq!(out.render(Format::Text), "-1·z + -1·z^2 + -1·z^3");
    }

    #[test]
    fn verify_failure_exit_code() {
        let out = cmd(&["verify", INVOLUTION3, "--order", "3"]).run().unwrap();
        assert_eq!(out.exit_code, 1);
        let out = cmd(&["verify", INVOLUTION3, "--order", "2"]).run().unwrap();
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn error_codes() {
        let e = cmd(&["invert", "{"]).run().unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = cmd(&["invert", r#"{"field":{"kind":"rational"},"N":1,"coeffs":["0"]}"#])
            .run()
            .unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = cmd(&["compose", INVOLUTION3, r#"{"field":{"kind":"rational"},"N":1,"coeffs":["1"]}"#])
            .run()
            .unwrap_err();
        assert_eq!(e.exit_code(), 5);
        let e = cmd(&["star", r#"{"field":{"kind":"rational"},"N":2,"coeffs":["1","1"]}"#])
            .run()
            .unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = cmd(&["invert", INVOLUTION3, "--field", "cyclotomic:4"]).run().unwrap_err();
        assert_eq!(e.exit_code(), 5);
    }

    #[test]
    fn default_omegas() {
        let f3 = FieldContext::cyclotomic(3).unwrap();
        assert!(default_omega(&f3, 6).unwrap().is_primitive_root(6));
        assert!(default_omega(&f3, 3).unwrap().is_primitive_root(3));
        assert!(default_omega(&f3, 4).is_err());
        let q = FieldContext::rational();
        assert_eq!(default_omega(&q, 2).unwrap(), q.from_int(-1));
    }

    #[test]
    fn complete_conjugator_defaults() {
        let out = cmd(&["complete-conjugator", INVOLUTION3]).run().unwrap();
        // g1 = 1, g3 = 0: g = z + g2 z² with g2 from f* = z + ½z² + ½z³.
        assert_eq!(out.json["coeffs"][0], json!("1"));
        assert_eq!(out.json["coeffs"][2], json!("0"));
    }
}
