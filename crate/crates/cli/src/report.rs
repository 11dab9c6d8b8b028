use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// One named pass/fail check with an optional witness on failure.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Check {
        Check { name: name.into(), pass, witness: None }
    }

    pub fn with_witness(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Check {
        Check { name: name.into(), pass, witness: (!pass).then(witness) }
    }
}

/// Versioned report; `timing_ms` is only filled in on request so that the
/// default output is byte-for-byte reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub inputs_digest: String,
    pub results: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    /// Aligned text rows for `--format table` (not serialized).
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: &str, inputs: Value, extra_digest: &[&str], results: Value, checks: Vec<Check>) -> Report {
        let canon = inputs.to_string();
        let mut parts = vec![command, canon.as_str()];
        parts.extend_from_slice(extra_digest);
        let pass = checks.iter().all(|c| c.pass);
        Report {
            schema: 1,
            command: command.into(),
            inputs,
            inputs_digest: digest(&parts),
            results,
            checks,
            pass,
            timing_ms: None,
            table: Vec::new(),
        }
    }

    pub fn with_table(mut self, rows: Vec<Vec<String>>) -> Report {
        self.table = rows;
        self
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}  (schema {}, digest {})\n", self.command, self.schema, &self.inputs_digest[..16]));
        out.push_str(&align(&self.table));
        for c in &self.checks {
            out.push_str(&format!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time {t:.1} ms\n"));
        }
        out.trim_end().to_string()
    }
}

pub fn align(rows: &[Vec<String>]) -> String {
    let ncol = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncol).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count()))).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
