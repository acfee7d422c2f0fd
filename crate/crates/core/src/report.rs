//! Flat report records for the command line: one CSV row or one JSON object
//! per line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decider::{end_vertex_rule, theorem2_predicate, Answer, PgstVerdict, Reason, Witness};
use crate::spectrum::PathSpec;

pub const CSV_HEADER: &str = "n,a,b,verdict,reason,theorem2_match,end_rule_match";

/// Serde adapter writing big integers as bare JSON numbers, in full.
pub mod exact_ints {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::value::RawValue;

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            let raw = RawValue::from_string(v.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&raw)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Box<RawValue>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|r| {
                r.get()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("not an integer: {}", r.get())))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub verdict: Answer,
    pub reason: Reason,
    pub witness: Option<Witness>,
    /// The pair is strongly cospectral and covered by the `2^t p - 1` family.
    pub theorem2_match: bool,
    /// For the end pair `{1, n}`: whether the verdict agrees with the
    /// end-vertex rule. Absent for every other pair.
    pub end_rule_match: Option<bool>,
}

impl ReportRecord {
    pub fn from_verdict(verdict: &PgstVerdict) -> Self {
        let (n, a, b) = (verdict.n, verdict.a, verdict.b);
        let end_pair = n >= 2 && a.min(b) == 1 && a.max(b) == n;
        let end_rule_match = end_pair
            .then(|| end_vertex_rule(n).ok().map(|rule| rule == verdict.answer.is_yes()))
            .flatten();
        ReportRecord {
            n,
            a,
            b,
            verdict: verdict.answer,
            reason: verdict.reason,
            witness: verdict.witness.clone(),
            theorem2_match: a + b == n + 1 && theorem2_predicate(n, a),
            end_rule_match,
        }
    }

    pub fn to_csv_row(&self) -> String {
        let end = self.end_rule_match.map_or(String::new(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.a,
            self.b,
            self.verdict.as_str(),
            self.reason.as_str(),
            self.theorem2_match,
            end
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report records always serialize")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

/// `x` with `digits` significant digits, positional notation for moderate
/// magnitudes and scientific notation otherwise.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("scientific format") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub j: usize,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub vertex: usize,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumListing {
    pub n: usize,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub supports: Vec<SupportEntry>,
}

impl SpectrumListing {
    pub fn new(spec: &PathSpec) -> Self {
        let eigenvalues = spec
            .eigenvalues()
            .iter()
            .map(|ev| EigenvalueEntry {
                j: ev.index(),
                theta: ev.to_f64(),
            })
            .collect();
        let supports = (1..=spec.n())
            .map(|vertex| SupportEntry {
                vertex,
                support: spec
                    .eigenvalue_support(vertex)
                    .expect("vertex in range")
                    .indices()
                    .to_vec(),
            })
            .collect();
        SpectrumListing {
            n: spec.n(),
            eigenvalues,
            supports,
        }
    }

    /// Eigenvalue list followed by a vertex-by-index membership table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "P{}: {} eigenvalues", self.n, self.eigenvalues.len()).unwrap();
        writeln!(out, "{:>4}  theta_j", "j").unwrap();
        for e in &self.eigenvalues {
            // keep "-0" out of the listing
            let theta = if e.theta == 0.0 { 0.0 } else { e.theta };
            writeln!(out, "{:>4}  {}", e.j, format_significant(theta, 15)).unwrap();
        }
        let width = self.n.to_string().len().max(2);
        write!(out, "\nsupport {:>w$}", "v\\j", w = width + 1).unwrap();
        for e in &self.eigenvalues {
            write!(out, " {:>w$}", e.j, w = width).unwrap();
        }
        out.push('\n');
        for s in &self.supports {
            write!(out, "        {:>w$}", s.vertex, w = width + 1).unwrap();
            for e in &self.eigenvalues {
                let mark = if s.support.contains(&e.j) { "x" } else { "." };
                write!(out, " {:>w$}", mark, w = width).unwrap();
            }
            out.push('\n');
        }
        out
    }
}
