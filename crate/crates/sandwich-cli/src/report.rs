//! The one report shape every command emits.
//!
//! JSON output carries full doubles and sorts keys, so reruns with the same
//! seed are byte-identical apart from the wall time. The human rendering
//! trims margins to six significant digits.

use sandwich_core::{ConditionReport, SandwichCertificate};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub conditions: Vec<ConditionReport>,
    pub certificate: Option<SandwichCertificate>,
    pub oracle: Option<Value>,
    pub facts: Vec<(String, Value)>,
    pub suite: Option<Value>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(command: &str, digest: String) -> Self {
        RunReport {
            command: command.to_string(),
            digest,
            conditions: Vec::new(),
            certificate: None,
            oracle: None,
            facts: Vec::new(),
            suite: None,
            wall_ms: 0,
        }
    }

    pub fn fact(&mut self, label: &str, value: Value) {
        self.facts.push((label.to_string(), value));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "digest": self.digest,
            "conditions": self.conditions.iter().map(ConditionReport::to_json).collect::<Vec<_>>(),
            "certificate": self.certificate.as_ref().map(SandwichCertificate::to_json),
            "oracle": self.oracle,
            "facts": self.facts.iter().map(|(label, value)| json!({"label": label, "value": value})).collect::<Vec<_>>(),
            "suite": self.suite,
            "wall_time_ms": self.wall_ms,
        })
    }

    pub fn print_human(&self) {
        println!("command: {}", self.command);
        println!("inputs digest: {}", &self.digest[..12.min(self.digest.len())]);
        for c in &self.conditions {
            let verdict = if c.holds { "holds" } else { "FAILS" };
            let mut line = format!(
                "condition ({}): {verdict}, worst margin {} ({}, {} samples)",
                c.condition.id(),
                sig6(c.worst_margin),
                c.method.as_str(),
                c.samples
            );
            if let Some(w) = &c.witness {
                line.push_str(&format!(" at witness {:?}", w.as_slice()));
            }
            println!("{line}");
            if !c.detail.is_empty() {
                println!("  {}", c.detail);
            }
        }
        for (label, value) in &self.facts {
            println!("{label}: {value}");
        }
        if let Some(cert) = &self.certificate {
            println!("L = {:?}", cert.functional.coeffs.as_slice());
            println!(
                "restriction residual {}, margins: S {}, P {}, reflected {}",
                sig6(cert.restriction_residual),
                sig6(cert.margin_s),
                sig6(cert.margin_p),
                sig6(cert.margin_reflected)
            );
            for (i, step) in cert.trace.iter().enumerate() {
                println!(
                    "  step {}: x0 {:?}, ceiling window [{}, {}], floor window [{}, {}], xi {}",
                    i + 1,
                    step.direction.as_slice(),
                    sig6(step.a),
                    sig6(step.b),
                    sig6(step.d),
                    sig6(step.c),
                    step.xi
                );
            }
        }
        if let Some(oracle) = &self.oracle {
            println!("oracle: {oracle}");
        }
        if let Some(suite) = &self.suite {
            let passes = suite.get("passes").and_then(Value::as_u64).unwrap_or(0);
            let failures = suite.get("failures").and_then(Value::as_u64).unwrap_or(0);
            println!("suite: {passes} passed, {failures} failed");
            if let Some(rows) = suite.get("rows").and_then(Value::as_array) {
                for row in rows {
                    if row.get("pass").and_then(Value::as_bool) == Some(false) {
                        println!("  failing instance: {row}");
                    }
                }
            }
        }
        println!("wall time: {} ms", self.wall_ms);
    }
}

/// Margins go out with six significant digits; JSON keeps the full doubles.
fn sig6(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.5e}")
    } else {
        format!("{v}")
    }
}

pub fn digest_of(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
