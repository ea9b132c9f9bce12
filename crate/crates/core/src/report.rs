//! JSON and text renderings of case results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Verdict;
use crate::cases::{CaseInfo, CaseResult, Quantity, VerdictEntry};
use crate::error::{Error, Result};
use crate::hilbert::C64;
use crate::verify::PropertyOutcome;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonQuantity {
    pub name: String,
    pub computed: [f64; 2],
    pub expected: [f64; 2],
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonVerdict {
    pub context: String,
    pub verdict: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonCase {
    pub case_id: String,
    pub quantities: Vec<JsonQuantity>,
    pub max_abs_deviation: f64,
    pub verdicts: Vec<JsonVerdict>,
    #[serde(default)]
    pub parameters: BTreeMap<String, Vec<[f64; 2]>>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn parse_verdict(s: &str) -> Result<Verdict> {
    Verdict::parse(s).ok_or_else(|| Error::InvalidArgument(format!("unknown verdict {s:?}")))
}

impl From<&CaseResult> for JsonCase {
    fn from(r: &CaseResult) -> Self {
        Self {
            case_id: r.case_id.clone(),
            quantities: r
                .quantities
                .iter()
                .map(|q| JsonQuantity {
                    name: q.name.clone(),
                    computed: pair(q.computed),
                    expected: pair(q.expected),
                    provenance: q.provenance.clone(),
                })
                .collect(),
            max_abs_deviation: r.max_abs_deviation,
            verdicts: r
                .verdicts
                .iter()
                .map(|v| JsonVerdict {
                    context: v.context.clone(),
                    verdict: v.verdict.as_str().to_string(),
                    expected: v.expected.as_str().to_string(),
                })
                .collect(),
            parameters: r
                .parameters
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().copied().map(pair).collect()))
                .collect(),
        }
    }
}

impl TryFrom<JsonCase> for CaseResult {
    type Error = Error;

    fn try_from(j: JsonCase) -> Result<Self> {
        Ok(Self {
            case_id: j.case_id,
            quantities: j
                .quantities
                .into_iter()
                .map(|q| Quantity {
                    name: q.name,
                    computed: complex(q.computed),
                    expected: complex(q.expected),
                    provenance: q.provenance,
                })
                .collect(),
            max_abs_deviation: j.max_abs_deviation,
            verdicts: j
                .verdicts
                .into_iter()
                .map(|v| {
                    Ok(VerdictEntry {
                        context: v.context,
                        verdict: parse_verdict(&v.verdict)?,
                        expected: parse_verdict(&v.expected)?,
                    })
                })
                .collect::<Result<_>>()?,
            parameters: j
                .parameters
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().map(complex).collect()))
                .collect(),
        })
    }
}

/// A JSON array with one object per case.
pub fn emit_json(results: &[CaseResult]) -> String {
    let cases: Vec<JsonCase> = results.iter().map(JsonCase::from).collect();
    serde_json::to_string_pretty(&cases).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<Vec<CaseResult>> {
    let cases: Vec<JsonCase> =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed report: {e}")))?;
    cases.into_iter().map(CaseResult::try_from).collect()
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12}{:+.12}i", z.re, z.im)
    }
}

pub fn case_table(result: &CaseResult, tolerance: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "== {} [{}] max |computed - expected| = {:.3e}",
        result.case_id,
        status(result.passed(tolerance)),
        result.max_abs_deviation
    );
    let width = result.quantities.iter().map(|q| q.name.chars().count()).max().unwrap_or(0).max(8);
    let _ = writeln!(out, "  {:<width$}  {:>32}  {:>32}  {:>10}", "quantity", "computed", "expected", "|dev|");
    for q in &result.quantities {
        let _ = writeln!(
            out,
            "  {:<width$}  {:>32}  {:>32}  {:>10.3e}  {}",
            q.name,
            fmt_complex(q.computed),
            fmt_complex(q.expected),
            q.deviation(),
            if q.deviation() <= tolerance { "" } else { "<-- mismatch" }
        );
    }
    for v in &result.verdicts {
        let _ = writeln!(
            out,
            "  verdict  {}: {} (expected {}){}",
            v.context,
            v.verdict.as_str(),
            v.expected.as_str(),
            if v.verdict == v.expected { "" } else { "  <-- mismatch" }
        );
    }
    out
}

pub fn emit_text(results: &[CaseResult], tolerance: f64) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&case_table(r, tolerance));
        out.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed(tolerance)).count();
    let _ = writeln!(
        out,
        "{} cases, {} passed, {} failed (tolerance {:e})",
        results.len(),
        results.len() - failed,
        failed,
        tolerance
    );
    out
}

pub fn case_listing(cases: &[CaseInfo]) -> String {
    let width = cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in cases {
        let _ = writeln!(out, "{:<width$}  {}  [{}]", c.id, c.description, c.topic);
    }
    out
}

pub fn property_table(outcomes: &[PropertyOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(
            out,
            "{:<width$}  [{}]  checks = {:>4}  max deviation = {:.3e}  tolerance = {:e}",
            o.name,
            status(o.passed()),
            o.checks,
            o.max_deviation,
            o.tolerance
        );
        if !o.passed() {
            let _ = writeln!(out, "  witness: {}", o.witness);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::run_all;

    #[test]
    fn json_round_trip() {
        let results = run_all().unwrap();
        let text = emit_json(&results);
        assert_eq!(parse_json(&text).unwrap(), results);
    }

    #[test]
    fn text_is_stable() {
        let results = run_all().unwrap();
        assert_eq!(emit_text(&results, 1e-9), emit_text(&results, 1e-9));
        assert!(emit_text(&results, 1e-9).contains("14 cases, 14 passed, 0 failed"));
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(parse_json("{").is_err());
        assert!(parse_json(r#"[{"case_id":"x","quantities":[],"max_abs_deviation":0,"verdicts":[{"context":"c","verdict":"maybe","expected":"separable_wrt"}]}]"#).is_err());
    }
}
