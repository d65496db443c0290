use std::collections::BTreeMap;
use std::fmt::Write as _;

use casson_core::exact::rational::format_rational;
use casson_core::exact::Rational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A computed value. Rationals are carried as `"n/d"` strings so they stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "kebab-case")]
pub enum Value {
    Integer(i64),
    Rational(String),
    Bit(u8),
    Bool(bool),
    Vector(Vec<i64>),
    Polynomial(String),
    Text(String),
}

impl Value {
    pub fn rational(r: &Rational) -> Self {
        Value::Rational(format_rational(r))
    }

    fn render(&self) -> String {
        match self {
            Value::Integer(n) => n.to_string(),
            Value::Rational(s) | Value::Polynomial(s) | Value::Text(s) => s.clone(),
            Value::Bit(b) => b.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Vector(v) => format!("{v:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub command: String,
    pub input_digest: String,
    pub invariants: BTreeMap<String, Value>,
    pub congruences: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn new(command: &str, input_digest: String) -> Self {
        Self {
            command: command.to_string(),
            input_digest,
            invariants: BTreeMap::new(),
            congruences: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.invariants.insert(key.to_string(), value);
        self
    }

    pub fn check(&mut self, key: &str, holds: bool) -> &mut Self {
        self.congruences.insert(key.to_string(), holds);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn all_congruent(&self) -> bool {
        self.congruences.values().all(|&b| b)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (input sha256 {})", self.command, self.input_digest);
        let width = self.invariants.keys().chain(self.congruences.keys()).map(String::len).max().unwrap_or(0);
        for (k, v) in &self.invariants {
            let _ = writeln!(out, "  {k:<width$}  {}", v.render());
        }
        for (k, ok) in &self.congruences {
            let _ = writeln!(out, "  {k:<width$}  {}", if *ok { "holds" } else { "FAILS" });
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub congruent: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub family: String,
    pub range: Option<String>,
    pub input_digest: String,
    pub rows: Vec<InvariantReport>,
    pub summary: SweepSummary,
}

impl SweepTable {
    pub fn new(family: &str, range: Option<&str>, rows: Vec<InvariantReport>) -> Self {
        let key = format!("{family}\n{}", range.unwrap_or(""));
        let congruent = rows.iter().filter(|r| r.all_congruent()).count();
        Self {
            family: family.to_string(),
            range: range.map(str::to_string),
            input_digest: digest(key.as_bytes()),
            summary: SweepSummary { total: rows.len(), congruent, failed: rows.len() - congruent },
            rows,
        }
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sweep {} (sha256 {})", self.family, self.input_digest);
        for r in &self.rows {
            let label = match r.invariants.get("label") {
                Some(Value::Text(t)) => t.clone(),
                _ => r.command.clone(),
            };
            let values: Vec<String> = r
                .invariants
                .iter()
                .filter(|(k, _)| k.as_str() != "label")
                .map(|(k, v)| format!("{k}={}", v.render()))
                .collect();
            let status = if r.all_congruent() { "ok" } else { "FAIL" };
            let _ = writeln!(out, "  {label:<36} {:<48} {status}", values.join(" "));
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} instances, {} congruent, {} failed", s.total, s.congruent, s.failed);
        out
    }
}
