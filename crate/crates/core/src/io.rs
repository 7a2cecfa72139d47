//! JSON interchange formats.
//!
//! * field: `{"kind":"rational"}` or `{"kind":"cyclotomic","n":4}`
//! * element: `"p/q"` (or `"p"`) over ℚ; over ℚ(ζₙ) an array of φ(n)
//!   rational strings, lowest power of ζ first, e.g. `["0/1","1/1"]` for ζ
//! * series: `{"field":…, "N":3, "coeffs":[a₁, …, a_N]}`
//! * construction record: `{"series":…, "forced":{k:…}, "p_values":{k:…},
//!   "helper":…|null}`
//!
//! Output goes through `serde_json`'s sorted maps, so key order is stable and
//! emitting a parsed series reproduces the original text byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::construct::ConstructionRecord;
use crate::exactfield::{
    format_rational, parse_rational, FieldContext, FieldElement, FieldError, FieldKind,
};
use crate::series::{GroupJet, Jet, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
    #[error("coefficient a{index}: {reason}")]
    Coefficient { index: usize, reason: String },
    #[error("a1 = 0: the series is not in the composition group")]
    ZeroLinearTerm,
}

fn schema(msg: impl Into<String>) -> ParseError {
    ParseError::Schema(msg.into())
}

pub fn context_to_json(ctx: &FieldContext) -> Value {
    match ctx.kind() {
        FieldKind::Rational => json!({ "kind": "rational" }),
        FieldKind::Cyclotomic => json!({ "kind": "cyclotomic", "n": ctx.index() }),
    }
}

pub fn context_from_json(value: &Value) -> Result<Arc<FieldContext>, ParseError> {
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("field descriptor needs a string \"kind\""))?;
    match kind {
        "rational" => Ok(FieldContext::rational()),
        "cyclotomic" => {
            let n = value
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema("cyclotomic field needs a positive integer \"n\""))?;
            FieldContext::cyclotomic(n).map_err(|e| schema(e.to_string()))
        }
        other => Err(schema(format!("unknown field kind {other:?}"))),
    }
}

/// Parses the `rational` / `cyclotomic:n` command-line shorthand.
pub fn context_from_descriptor(text: &str) -> Result<Arc<FieldContext>, ParseError> {
    match text.trim() {
        "rational" => Ok(FieldContext::rational()),
        other => {
            let n = other
                .strip_prefix("cyclotomic:")
                .and_then(|n| n.parse::<u64>().ok())
                .ok_or_else(|| schema(format!("bad field descriptor {other:?}")))?;
            FieldContext::cyclotomic(n).map_err(|e| schema(e.to_string()))
        }
    }
}

pub fn element_to_json(x: &FieldElement) -> Value {
    match x.context().kind() {
        FieldKind::Rational => Value::String(format_rational(&x.coords()[0], false)),
        FieldKind::Cyclotomic => Value::Array(
            x.coords()
                .iter()
                .map(|c| Value::String(format_rational(c, true)))
                .collect(),
        ),
    }
}

/// Parses an element. A bare rational (string or integer) is accepted in
/// any field and embedded; an array must have exactly φ(n) coordinates.
pub fn element_from_json(ctx: &Arc<FieldContext>, value: &Value) -> Result<FieldElement, FieldError> {
    match value {
        Value::String(s) => Ok(ctx.from_rational(parse_rational(s)?)),
        Value::Number(n) => Ok(ctx.from_rational(parse_rational(&n.to_string())?)),
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    other => Err(FieldError::Parse(other.to_string())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            ctx.from_coords(coords)
        }
        other => Err(FieldError::Parse(other.to_string())),
    }
}

/// Parses the command-line element shorthand: `p/q` or a JSON array.
pub fn element_from_text(ctx: &Arc<FieldContext>, text: &str) -> Result<FieldElement, FieldError> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|_| FieldError::Parse(t.to_string()))?;
        element_from_json(ctx, &v)
    } else {
        Ok(ctx.from_rational(parse_rational(t)?))
    }
}

pub fn jet_to_json(jet: &Jet) -> Value {
    json!({
        "field": context_to_json(jet.context()),
        "N": jet.order(),
        "coeffs": jet.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn jet_from_json(value: &Value) -> Result<Jet, ParseError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema("series must be a JSON object"))?;
    let ctx = context_from_json(obj.get("field").ok_or_else(|| schema("series needs \"field\""))?)?;
    let order = obj
        .get("N")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("series needs a positive integer \"N\""))? as usize;
    let raw = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("series needs a \"coeffs\" array"))?;
    if order == 0 {
        return Err(schema("N must be at least 1"));
    }
    if raw.len() != order {
        return Err(schema(format!(
            "N = {order} but {} coefficients given",
            raw.len()
        )));
    }
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(i, v)| {
            element_from_json(&ctx, v).map_err(|e| ParseError::Coefficient {
                index: i + 1,
                reason: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Jet::new(&ctx, coeffs).map_err(|e| schema(e.to_string()))
}

/// Parses a series and checks membership in the group (a₁ ≠ 0).
pub fn parse_series(text: &str) -> Result<GroupJet, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    group_jet_from_json(&value)
}

pub fn group_jet_from_json(value: &Value) -> Result<GroupJet, ParseError> {
    let jet = jet_from_json(value)?;
    GroupJet::try_from(jet).map_err(|e| match e {
        SeriesError::NotInvertible => ParseError::ZeroLinearTerm,
        other => schema(other.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Renders a series; JSON output round-trips exactly through [`parse_series`].
pub fn emit_series(jet: &Jet, format: Format) -> String {
    match format {
        Format::Json => jet_to_json(jet).to_string(),
        Format::Text => jet.to_string(),
    }
}

fn index_map(map: &BTreeMap<usize, FieldElement>) -> Value {
    Value::Object(
        map.iter()
            .map(|(k, v)| (k.to_string(), element_to_json(v)))
            .collect::<Map<_, _>>(),
    )
}

pub fn record_to_json(record: &ConstructionRecord) -> Value {
    json!({
        "series": jet_to_json(&record.series),
        "forced": index_map(&record.forced),
        "p_values": index_map(&record.p_values),
        "helper": record.helper.as_ref().map(|h| jet_to_json(h)),
    })
}

/// Reads back a record written by [`record_to_json`].
pub fn record_from_json(value: &Value) -> Result<ConstructionRecord, ParseError> {
    let series = group_jet_from_json(value.get("series").ok_or_else(|| schema("record needs \"series\""))?)?;
    let ctx = Arc::clone(series.context());
    let read_map = |key: &str| -> Result<BTreeMap<usize, FieldElement>, ParseError> {
        let obj = value
            .get(key)
            .and_then(Value::as_object)
            .ok_or_else(|| schema(format!("record needs an object {key:?}")))?;
        obj.iter()
            .map(|(k, v)| {
                let idx: usize = k.parse().map_err(|_| schema(format!("bad index {k:?}")))?;
                let x = element_from_json(&ctx, v).map_err(|e| ParseError::Coefficient {
                    index: idx,
                    reason: e.to_string(),
                })?;
                Ok((idx, x))
            })
            .collect()
    };
    let helper = match value.get("helper") {
        None | Some(Value::Null) => None,
        Some(h) => Some(group_jet_from_json(h)?),
    };
    Ok(ConstructionRecord {
        forced: read_map("forced")?,
        p_values: read_map("p_values")?,
        series,
        helper,
    })
}
