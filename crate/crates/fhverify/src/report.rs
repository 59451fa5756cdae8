//! Machine-readable run reports.
//!
//! A report is a single structured-text document of `key = value` lines
//! with a versioned schema and fixed field order, so CI pipelines can diff
//! fields instead of prose. Reports produced from the same inputs and seed
//! are byte-identical except for the timing field, which is always last.

use std::fmt::Display;

use sha2::{Digest, Sha256};

use crate::circuit::KTransformCircuit;
use crate::parse::serialize_circuit;
use crate::verify::{Decision, VerdictReport};

/// Identifier of the report layout produced by this version.
pub const REPORT_SCHEMA: &str = "fhverify.report.v1";

/// An ordered list of report fields, rendered one per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    fields: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command_echo: &str) -> Self {
        let mut report = Self { fields: Vec::new() };
        report.push("schema", REPORT_SCHEMA);
        report.push("tool-version", env!("CARGO_PKG_VERSION"));
        report.push("command", command_echo);
        report
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// Pushes `-` for absent values so the field set is always complete.
    pub fn push_opt<T: Display>(&mut self, key: &str, value: Option<T>) {
        match value {
            Some(v) => self.push(key, v),
            None => self.push(key, "-"),
        }
    }

    /// Floats are rendered with the shortest round-trippable form, which is
    /// deterministic for a given build.
    pub fn push_float(&mut self, key: &str, value: f64) {
        self.push(key, format!("{value:?}"));
    }

    pub fn push_float_opt(&mut self, key: &str, value: Option<f64>) {
        match value {
            Some(v) => self.push_float(key, v),
            None => self.push(key, "-"),
        }
    }

    /// Appends the verifier's audit trail with a fixed field order.
    pub fn push_verdict(&mut self, verdict: &VerdictReport) {
        let decision = match verdict.decision {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        };
        self.push("decision", decision);
        self.push("k", verdict.k);
        self.push("mirrored", verdict.mirrored);
        self.push("trivial-reject", verdict.trivial_reject);
        self.push("promise-violation", verdict.promise_violation);
        self.push_float_opt("exact-probability", verdict.exact_probability);
        self.push_float_opt("a-hat", verdict.a_hat);
        self.push_float_opt("b-hat", verdict.b_hat);
        self.push_float_opt("theta", verdict.theta);
        self.push_float_opt("gamma", verdict.gamma);
        self.push_float_opt("gamma-prime", verdict.gamma_prime);
        self.push("samples", verdict.samples);
        self.push_opt("seed", verdict.seed);
        self.push_float_opt("failure-bound", verdict.failure_bound);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(value);
            out.push('\n');
        }
        out
    }
}

/// Content hash of a circuit: SHA-256 over its canonical serialization.
pub fn circuit_digest(circuit: &KTransformCircuit) -> String {
    let bytes = Sha256::digest(serialize_circuit(circuit).as_bytes());
    let mut out = String::with_capacity(7 + 64);
    out.push_str("sha256:");
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
