//! Machine-readable reports.
//!
//! Reports serialize deterministically: object keys are sorted and every
//! integer is rendered as a decimal string so arbitrary precision survives
//! serialization (no floating point anywhere). Byte-identical output across
//! runs is part of the contract, so the measured wall time is not written
//! into the canonical JSON; it is reported on stderr and the `timing_ms`
//! field is serialized as null.

use crate::eval::CommandResult;
use cobtower::cobordism::{GeneratorReport, Witness};
use cobtower::residues::{LemmaRecord, LemmaStatus};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub passed: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            passed: true,
            timing_ms: 0,
        }
    }

    pub fn push(&mut self, entry: Value) {
        self.results.push(entry);
    }

    pub fn record_failure(&mut self) {
        self.passed = false;
    }

    /// Canonical serialization: sorted keys, two-space indentation, one
    /// trailing newline.
    pub fn canonical_json(&self) -> String {
        let value = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "passed": self.passed,
            "timing_ms": Value::Null,
        });
        let mut out = serde_json::to_string_pretty(&sorted(value)).expect("valid json");
        out.push('\n');
        out
    }
}

/// serde_json already keeps object keys sorted (BTreeMap-backed), but
/// normalizing explicitly keeps the canonical form independent of how the
/// values were assembled.
fn sorted(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut out = Map::new();
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            for (k, v) in entries {
                out.insert(k, sorted(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub fn int_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn u64_str(n: u64) -> Value {
    Value::String(n.to_string())
}

pub fn u32_str(n: u32) -> Value {
    Value::String(n.to_string())
}

pub fn command_entry(r: &CommandResult) -> Value {
    let mut obj = Map::new();
    obj.insert("index".into(), u64_str(r.statement as u64));
    obj.insert("command".into(), Value::String(r.command.clone()));
    obj.insert("ok".into(), Value::Bool(r.ok()));
    if let Some(v) = &r.value {
        obj.insert("value".into(), Value::String(v.clone()));
    }
    if let Some(e) = &r.error {
        obj.insert("error".into(), Value::String(e.clone()));
    }
    Value::Object(obj)
}

pub fn generator_entry(r: &GeneratorReport) -> Value {
    let a_values: Vec<Value> = r
        .a_values
        .iter()
        .map(|e| {
            let mut obj = Map::new();
            obj.insert("i".into(), u32_str(e.i));
            obj.insert("j".into(), u32_str(e.j));
            obj.insert("closed".into(), int_str(&e.closed));
            if let Some(engine) = &e.engine {
                obj.insert("engine".into(), int_str(engine));
                obj.insert("engine_matches".into(), Value::Bool(engine == &e.closed));
            }
            Value::Object(obj)
        })
        .collect();
    let witness = match &r.witness {
        Witness::PrimeDegree { p } => json!({
            "kind": "prime-degree",
            "p": u64_str(*p),
        }),
        Witness::PowerOfTwo { s, bf_milnor } => json!({
            "kind": "power-of-two",
            "s": u64_str(u64::from(*s)),
            "bounded_flag_milnor": Value::String(bf_milnor.to_string()),
        }),
        Witness::PrimePowerPair {
            p,
            s,
            i,
            j,
            pair_gcd,
            pass,
        } => json!({
            "kind": "prime-power-pair",
            "p": u64_str(*p),
            "s": u64_str(u64::from(*s)),
            "i": u32_str(*i),
            "j": u32_str(*j),
            "pair_gcd": int_str(pair_gcd),
            "pass": *pass,
        }),
        Witness::DigitCases(cases) => json!({
            "kind": "digit-cases",
            "cases": cases
                .iter()
                .map(|c| {
                    json!({
                        "q": u64_str(c.q),
                        "case": u64_str(u64::from(c.case_id)),
                        "i": u32_str(c.i),
                        "j": u32_str(c.j),
                        "residue": u64_str(c.residue),
                        "expected": u64_str(c.expected),
                        "pass": c.pass,
                    })
                })
                .collect::<Vec<_>>(),
        }),
    };
    let mut obj = Map::new();
    obj.insert("degree".into(), u32_str(r.degree));
    obj.insert("m_n".into(), u64_str(r.m_n));
    obj.insert("a_values".into(), Value::Array(a_values));
    obj.insert("gcd".into(), int_str(&r.gcd));
    obj.insert("gcd_matches".into(), Value::Bool(r.gcd_matches));
    obj.insert("witness".into(), witness);
    if let Some(edge) = &r.edge_diagnostics {
        obj.insert(
            "edge_diagnostics".into(),
            json!({
                "blowup_engine": int_str(&edge.blowup_engine),
                "blowup_closed": int_str(&edge.blowup_closed),
                "a0_engine": int_str(&edge.a0_engine),
                "a1_engine": int_str(&edge.a1_engine),
                "a0_closed": int_str(&edge.a0_closed),
                "a1_closed": int_str(&edge.a1_closed),
                "discrepancy": edge.discrepancy(),
            }),
        );
    }
    obj.insert("pass".into(), Value::Bool(r.pass));
    Value::Object(obj)
}

pub fn lemma_entry(r: &LemmaRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("lemma".into(), Value::String(r.check.id().into()));
    for (name, value) in r.check.params() {
        obj.insert(name.into(), u64_str(value));
    }
    match &r.status {
        LemmaStatus::Unsupported(reason) => {
            obj.insert("status".into(), Value::String("unsupported".into()));
            obj.insert("reason".into(), Value::String(reason.clone()));
        }
        status => {
            let lhs = r.lhs.expect("evaluated");
            let rhs = r.rhs.expect("evaluated");
            obj.insert("lhs".into(), u64_str(lhs.value));
            obj.insert("rhs".into(), u64_str(rhs.value));
            obj.insert("modulus".into(), u64_str(lhs.modulus));
            obj.insert(
                "status".into(),
                Value::String(
                    if *status == LemmaStatus::Pass {
                        "pass"
                    } else {
                        "fail"
                    }
                    .into(),
                ),
            );
        }
    }
    Value::Object(obj)
}
