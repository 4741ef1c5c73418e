//! Per-command output payloads and their text / JSON / CSV renderings.
//!
//! Every command builds one payload struct; the text and CSV forms are pure
//! functions of it, and the JSON form is its serde serialization. Parsing the
//! JSON back and re-rendering therefore reproduces the text output exactly.

use std::str::FromStr;

use qrook_core::{BigInt, IntPolynomial};
use serde::{Deserialize, Serialize};

use crate::records::WitnessRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `{"coeffs": [a_0, a_1, ...]}` with decimal-string big integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coeffs: Vec<String>,
}

impl From<&IntPolynomial> for PolynomialJson {
    fn from(p: &IntPolynomial) -> Self {
        PolynomialJson {
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(
            self.coeffs
                .iter()
                .map(|s| BigInt::from_str(s).expect("coefficients are decimal strings")),
        )
    }

    /// Descending-power human form.
    pub fn to_text(&self) -> String {
        self.to_polynomial().to_string()
    }
}

fn partition_text(parts: &[u32]) -> String {
    let joined = parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if joined.is_empty() {
        "(empty)".to_string()
    } else {
        joined
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPolynomial {
    pub rank: usize,
    pub polynomial: PolynomialJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeOutput {
    pub partition: Vec<u32>,
    pub method: String,
    pub polynomials: Vec<RankPolynomial>,
    /// Present when `--verify` ran: true means all routes agreed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl ComputeOutput {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rp in &self.polynomials {
            out.push_str(&format!(
                "R_{}({}; q) = {}\n",
                rp.rank,
                partition_text(&self.partition),
                rp.polynomial.to_text()
            ));
        }
        if let Some(ok) = self.verified {
            out.push_str(if ok {
                "verified: all methods agree\n"
            } else {
                "verified: MISMATCH\n"
            });
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,exponent,coefficient\n");
        for rp in &self.polynomials {
            for (e, c) in rp.polynomial.coeffs.iter().enumerate().rev() {
                out.push_str(&format!("{},{},{}\n", rp.rank, e, c));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub partition: Vec<u32>,
    /// Absent when the total polynomial was checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub total: bool,
    pub property: String,
    pub polynomial: PolynomialJson,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

impl CheckOutput {
    pub fn to_text(&self) -> String {
        let name = match self.rank {
            Some(k) => format!("R_{}({}; q)", k, partition_text(&self.partition)),
            None => format!("R({}; q)", partition_text(&self.partition)),
        };
        let mut out = format!("{} = {}\n", name, self.polynomial.to_text());
        out.push_str(&format!("{}: {}\n", self.property, self.holds));
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {}\n", w.describe()));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("property,holds,witness\n");
        let witness = self
            .witness
            .as_ref()
            .map(|w| w.describe())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},\"{}\"\n",
            self.property, self.holds, witness
        ));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingOutput {
    pub n: usize,
    pub k: usize,
    pub polynomial: PolynomialJson,
}

impl StirlingOutput {
    pub fn to_text(&self) -> String {
        format!(
            "S_q({}, {}) = {}\n",
            self.n,
            self.k,
            self.polynomial.to_text()
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (e, c) in self.polynomial.coeffs.iter().enumerate().rev() {
            out.push_str(&format!("{},{}\n", e, c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingEntry {
    pub k: usize,
    pub polynomial: PolynomialJson,
}

/// A whole row of the q-Stirling triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingRowOutput {
    pub n: usize,
    pub entries: Vec<StirlingEntry>,
}

impl StirlingRowOutput {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "S_q({}, {}) = {}\n",
                self.n,
                e.k,
                e.polynomial.to_text()
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,exponent,coefficient\n");
        for e in &self.entries {
            for (exp, c) in e.polynomial.coeffs.iter().enumerate().rev() {
                out.push_str(&format!("{},{},{}\n", e.k, exp, c));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixCountOutput {
    pub partition: Vec<u32>,
    pub order: u64,
    pub rank: usize,
    pub count: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

impl MatrixCountOutput {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "rank-{} matrices over GF({}) on board {}: {}\n",
            self.rank,
            self.order,
            partition_text(&self.partition),
            self.count
        );
        if let Some(p) = &self.predicted {
            out.push_str(&format!("q-rook prediction: {}\n", p));
        }
        if let Some(a) = self.agree {
            out.push_str(if a {
                "agreement: yes\n"
            } else {
                "agreement: NO\n"
            });
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,rank,count,predicted,agree\n");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            self.order,
            self.rank,
            self.count,
            self.predicted.as_deref().unwrap_or(""),
            self.agree.map(|a| a.to_string()).unwrap_or_default()
        ));
        out
    }
}

/// Renders any payload in the requested format.
pub fn render<T>(
    payload: &T,
    format: Format,
    text: impl Fn(&T) -> String,
    csv: impl Fn(&T) -> String,
) -> String
where
    T: Serialize,
{
    match format {
        Format::Text => text(payload),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(payload).expect("payloads serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv(payload),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_to_identical_text() {
        let poly = IntPolynomial::from_coeffs([0i64, 1, 1, 2, 1]);
        let out = ComputeOutput {
            partition: vec![4, 1],
            method: "recurrence".into(),
            polynomials: vec![RankPolynomial {
                rank: 1,
                polynomial: (&poly).into(),
            }],
            verified: None,
        };
        let text = out.to_text();
        assert_eq!(text, "R_1(4,1; q) = q^4 + 2*q^3 + q^2 + q\n");
        let json = serde_json::to_string(&out).unwrap();
        let parsed: ComputeOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn polynomial_json_uses_decimal_strings() {
        let poly = IntPolynomial::from_coeffs([1i64, 2]);
        let pj = PolynomialJson::from(&poly);
        assert_eq!(pj.coeffs, vec!["1", "2"]);
        assert_eq!(pj.to_polynomial(), poly);
    }
}
