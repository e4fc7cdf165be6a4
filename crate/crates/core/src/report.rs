//! Report envelope and its JSON, CSV and text renderings.
//!
//! JSON objects are written with keys in alphabetical order and every
//! floating-point value with 17 significant digits (`%.17g`), so a given
//! payload always renders to the same bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::verify::campaign::CampaignReport;
use crate::verify::compare::ComparisonTable;
use crate::verify::lemmas::LemmaReport;
use crate::verify::limit::LimitReport;
use crate::verify::sharpness::SharpnessReport;
use crate::verify::theorem::VerificationReport;

pub const TOOL_NAME: &str = "ratgrow";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Renders `x` like C's `%.17g`: 17 significant digits, trailing zeros
/// dropped, exponent form outside `1e-4 <= |x| < 1e17`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    if !(-4..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let exp_sign = if exp < 0 { '-' } else { '+' };
        let point = if frac.is_empty() { "" } else { "." };
        return format!("{sign}{}{point}{frac}e{exp_sign}{:02}", &digits[..1], exp.abs());
    }
    let mut out = String::from(sign);
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(digits.trim_end_matches('0'));
    } else {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        out.push_str(int);
        let frac = frac.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    out
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64 number");
                out.push_str(&format_g17(x));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string escapes")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // Short numeric arrays (complex pairs, η sets) stay on one line.
            if items.iter().all(|i| matches!(i, Value::Number(_) | Value::Null)) {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_json(item, indent, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(item, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, key) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("key escapes"));
                out.push_str(": ");
                write_json(&map[*key], indent + 1, out);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

/// Deterministic JSON text of any serializable value, newline-terminated.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_json(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Verification(VerificationReport),
    Campaign(Box<CampaignReport>),
    Comparison(ComparisonTable),
    Sharpness(SharpnessReport),
    Limit(LimitReport),
    Lemmas(LemmaReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub config: Value,
    pub payload: Payload,
}

impl ReportEnvelope {
    pub fn new(config: Value, payload: Payload, with_timestamp: bool) -> Self {
        let timestamp = with_timestamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        Self { tool: TOOL_NAME.into(), version: env!("CARGO_PKG_VERSION").into(), timestamp, config, payload }
    }
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn num(x: f64) -> String {
    format_g17(x)
}

fn opt(x: Option<f64>) -> String {
    x.map(format_g17).unwrap_or_default()
}

fn enum_tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn table(payload: &Payload) -> Table {
    match payload {
        Payload::Verification(r) => Table {
            headers: vec![
                "theorem", "eta", "k", "nu", "n", "factor", "correction_term", "min_observed", "argmin_theta", "slack",
                "status", "pass", "violations", "skipped_points", "instance_digest",
            ],
            rows: vec![vec![
                r.theorem.tag().into(),
                num(r.params.eta),
                num(r.params.k),
                num(r.params.nu),
                r.n.to_string(),
                opt(r.factor),
                opt(r.correction_term),
                opt(r.min_observed),
                opt(r.argmin_theta),
                opt(r.slack),
                enum_tag(&r.status),
                r.pass.to_string(),
                r.violations.to_string(),
                r.skipped_points.to_string(),
                r.instance_digest.clone(),
            ]],
        },
        Payload::Comparison(t) => Table {
            headers: vec!["eta", "theorem", "factor", "correction_term"],
            rows: t
                .rows
                .iter()
                .flat_map(|row| {
                    row.entries.iter().map(move |e| {
                        vec![num(row.eta), e.theorem.tag().into(), num(e.factor), num(e.correction_term)]
                    })
                })
                .collect(),
        },
        Payload::Campaign(c) => Table {
            headers: vec![
                "theorem", "n", "k", "seed", "trials", "checks", "pass", "fail", "vacuous", "hypothesis_unmet", "errors",
                "min_slack", "mean_slack", "min_relative_slack", "witness_trial", "witness_eta",
            ],
            rows: vec![vec![
                c.theorem.tag().into(),
                c.generator.n.to_string(),
                num(c.generator.k),
                c.generator.seed.to_string(),
                c.trials.to_string(),
                c.counts.checks.to_string(),
                c.counts.pass.to_string(),
                c.counts.fail.to_string(),
                c.counts.vacuous.to_string(),
                c.counts.hypothesis_unmet.to_string(),
                c.counts.errors.to_string(),
                opt(c.slack.as_ref().map(|s| s.min)),
                opt(c.slack.as_ref().map(|s| s.mean)),
                opt(c.slack.as_ref().map(|s| s.min_relative)),
                c.witness.as_ref().map(|w| w.trial.to_string()).unwrap_or_default(),
                opt(c.witness.as_ref().map(|w| w.eta)),
            ]],
        },
        Payload::Sharpness(s) => Table {
            headers: vec![
                "family", "theorem", "n", "eta", "k", "factor", "min_ratio", "argmin_theta", "expected_argmin", "abs_error",
                "equality",
            ],
            rows: vec![vec![
                s.family.tag().into(),
                s.theorem.tag().into(),
                s.n.to_string(),
                num(s.params.eta),
                num(s.params.k),
                num(s.factor),
                num(s.min_ratio),
                num(s.argmin_theta),
                num(s.expected_argmin),
                num(s.abs_error),
                s.equality.to_string(),
            ]],
        },
        Payload::Limit(l) => Table {
            headers: vec!["n", "eta", "k", "beta_modulus", "difference"],
            rows: l
                .points
                .iter()
                .map(|p| vec![l.n.to_string(), num(l.eta), num(l.k), num(p.beta_modulus), num(p.difference)])
                .collect(),
        },
        Payload::Lemmas(r) => Table {
            headers: vec!["lemma", "samples", "failures", "min_slack", "n1_samples", "n1_max_gap"],
            rows: [("lemma1", &r.lemma1), ("lemma2", &r.lemma2)]
                .into_iter()
                .map(|(name, s)| {
                    vec![
                        name.into(),
                        s.samples.to_string(),
                        s.failures.to_string(),
                        num(s.min_slack),
                        s.n1_samples.to_string(),
                        num(s.n1_max_gap),
                    ]
                })
                .collect(),
        },
    }
}

fn render_csv(t: &Table) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| crate::error::Error::Io(e.to_string());
    w.write_record(&t.headers).map_err(io)?;
    for row in &t.rows {
        w.write_record(row).map_err(io)?;
    }
    w.into_inner().map_err(|e| crate::error::Error::Io(e.to_string()))
}

fn render_text(env: &ReportEnvelope, t: &Table) -> String {
    let mut out = format!("{} {}", env.tool, env.version);
    if let Some(ts) = &env.timestamp {
        let _ = write!(out, "  {ts}");
    }
    out.push('\n');
    let widths: Vec<usize> = (0..t.headers.len())
        .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.headers[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    out.push_str(&line(t.headers.clone()));
    for row in &t.rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn serialize_report(env: &ReportEnvelope, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => Ok(to_json_string(env)?.into_bytes()),
        Format::Csv => render_csv(&table(&env.payload)),
        Format::Text => Ok(render_text(env, &table(&env.payload)).into_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::TheoremId;
    use crate::verify::compare::{ComparisonRow, FactorEntry};

    #[test]
    fn g17_matches_printf() {
        // Expected strings are what C's printf("%.17g") prints.
        let cases = [
            (1.0 / 3.0, "0.33333333333333331"),
            (0.1, "0.10000000000000001"),
            (0.5, "0.5"),
            (2.0, "2"),
            (-1.5, "-1.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1e8, "100000000"),
            (1e17, "1e+17"),
            (123456.789, "123456.789"),
            (0.000123, "0.00012300000000000001"),
            (f64::MAX, "1.7976931348623157e+308"),
            (5e-324, "4.9406564584124654e-324"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g17(x), s, "{x:e}");
        }
    }

    #[test]
    fn g17_round_trips() {
        for x in [1.0 / 3.0, std::f64::consts::PI, 1e-300, 6.02214076e23, -2.5e-7] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_keys_sorted() {
        let v = serde_json::json!({"b": 1, "a": {"d": 0.25, "c": [1.5, 2.0]}});
        let s = to_json_string(&v).unwrap();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
        assert!(s.contains("[1.5, 2]"));
    }

    fn comparison() -> ReportEnvelope {
        let rows = [0.1, 0.5, 0.9]
            .iter()
            .map(|&eta| ComparisonRow {
                eta,
                entries: vec![
                    FactorEntry { theorem: TheoremId::T1New, factor: 1.0 / 3.0, correction_term: 0.1 },
                    FactorEntry { theorem: TheoremId::GRather, factor: 0.25, correction_term: 0.0 },
                ],
            })
            .collect();
        let t = ComparisonTable { n: 2, k: 1.0, a0: 4.0, an: 1.0, theorems: vec![TheoremId::T1New, TheoremId::GRather], rows, orderings: vec![] };
        ReportEnvelope::new(serde_json::json!({}), Payload::Comparison(t), false)
    }

    #[test]
    fn comparison_csv_has_row_per_eta_and_theorem() {
        let bytes = serialize_report(&comparison(), Format::Csv).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 6);
        assert_eq!(lines[0], "eta,theorem,factor,correction_term");
        assert_eq!(lines[1], "0.10000000000000001,t1,0.33333333333333331,0.10000000000000001");
    }

    #[test]
    fn no_timestamp_is_byte_stable() {
        let a = serialize_report(&comparison(), Format::Json).unwrap();
        let b = serialize_report(&comparison(), Format::Json).unwrap();
        assert_eq!(a, b);
        assert!(!String::from_utf8(a).unwrap().contains("timestamp"));
        let stamped = ReportEnvelope::new(serde_json::json!({}), comparison().payload, true);
        assert!(stamped.timestamp.is_some());
    }

    #[test]
    fn text_is_aligned() {
        let text = String::from_utf8(serialize_report(&comparison(), Format::Text).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("ratgrow "));
        let col = lines[1].find("theorem").unwrap();
        assert_eq!(&lines[2][col..col + 2], "t1");
    }
}
