//! The subcommand implementations, shared by the binary and its tests.

use crate::dsl;
use crate::eval;
use crate::report::{command_entry, generator_entry, int_str, lemma_entry, u32_str, u64_str, Report};
use cobtower::charnum::{blowup_milnor, milnor_number, todd_genus};
use cobtower::cobordism::{a_closed_form, a_engine, digit_case_select, verify_generator_degree};
use cobtower::residues::{granville_residue, is_prime, lucas_residue, verify_lemma, LemmaCheck, LemmaStatus};
use cobtower::scalar::Scalar;
use cobtower::variety::Variety;
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::time::Instant;

/// Parses and runs a script file's contents.
pub fn cmd_run(source: &str, file_label: &str) -> Result<Report, dsl::ParseError> {
    let started = Instant::now();
    let script = dsl::parse(source)?;
    let mut report = Report::new(
        "run",
        json!({
            "file": file_label,
            "statements": u64_str(script.stmts.len() as u64),
        }),
    );
    for result in eval::run(&script) {
        if !result.ok() {
            report.record_failure();
        }
        report.push(command_entry(&result));
    }
    report.timing_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// The a(i, j) table for 2 <= i + j <= max_degree, with engine diagnostics
/// for i >= 1 up to the engine cap.
pub fn cmd_table(max_degree: u32, engine_cap: u32) -> Report {
    let started = Instant::now();
    let mut report = Report::new(
        "table",
        json!({
            "max_degree": u32_str(max_degree),
            "engine_cap": u32_str(engine_cap),
        }),
    );
    for n in 2..=max_degree {
        for i in 0..=n / 2 {
            let j = n - i;
            let closed = a_closed_form(i, j).expect("valid range");
            let engine = if i >= 1 && n <= engine_cap {
                Some(a_engine(i, j).expect("valid range"))
            } else {
                None
            };
            let mut entry = serde_json::Map::new();
            entry.insert("i".into(), u32_str(i));
            entry.insert("j".into(), u32_str(j));
            entry.insert("a_closed".into(), int_str(&closed));
            if let Some(e) = &engine {
                entry.insert("a_engine".into(), int_str(e));
            }
            report.push(Value::Object(entry));
        }
    }
    report.timing_ms = started.elapsed().as_millis() as u64;
    report
}

/// The same table as tab-separated values, one header row, engine column
/// blank where it is not computed.
pub fn table_tsv(report: &Report) -> String {
    let mut out = String::from("i\tj\ta_closed\ta_engine\n");
    for row in &report.results {
        let get = |key: &str| {
            row.get(key)
                .and_then(Value::as_str)
                .unwrap_or("")
                .to_string()
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            get("i"),
            get("j"),
            get("a_closed"),
            get("a_engine")
        ));
    }
    out
}

pub fn cmd_verify_generators(max_degree: u32, engine_cap: u32) -> Report {
    let started = Instant::now();
    let mut report = Report::new(
        "verify-generators",
        json!({
            "max_degree": u32_str(max_degree),
            "engine_cap": u32_str(engine_cap),
        }),
    );
    for n in 2..=max_degree {
        let r = verify_generator_degree(n, n <= engine_cap).expect("degree >= 2");
        if !r.pass {
            report.record_failure();
        }
        report.push(generator_entry(&r));
    }
    report.timing_ms = started.elapsed().as_millis() as u64;
    report
}

pub fn parse_primes(spec: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let p: u64 = part
            .parse()
            .map_err(|_| format!("invalid prime list entry `{part}`"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        out.push(p);
    }
    if out.is_empty() {
        return Err("empty prime list".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Runs every congruence lemma over the requested primes. Statements whose
/// proofs need an odd prime are recorded as unsupported at p = 2 rather
/// than counted as failures.
pub fn cmd_verify_congruences(primes: &[u64], max_s: u32) -> Report {
    const PS_CAP: u64 = 2200;
    let started = Instant::now();
    let primes_label: Vec<String> = primes.iter().map(u64::to_string).collect();
    let mut report = Report::new(
        "verify-congruences",
        json!({
            "primes": primes_label.join(","),
            "max_s": u32_str(max_s),
        }),
    );
    let push = |report: &mut Report, check: LemmaCheck| {
        let rec = verify_lemma(check).expect("valid parameters");
        if rec.status == LemmaStatus::Fail {
            report.record_failure();
        }
        report.push(lemma_entry(&rec));
    };
    for &p in primes {
        for r in 0..p {
            push(&mut report, LemmaCheck::Eq12 { p, r });
        }
        for a in 1..p {
            push(&mut report, LemmaCheck::Tech { p, a });
        }
        push(&mut report, LemmaCheck::Tech4 { p });
        push(&mut report, LemmaCheck::ResSq { p });
        for s in 2..=max_s {
            if p.pow(s) > PS_CAP {
                break;
            }
            push(&mut report, LemmaCheck::Lm32 { p, s });
            push(&mut report, LemmaCheck::Lm31 { p, s });
            push(&mut report, LemmaCheck::PMain { p, s });
        }
    }
    report.timing_ms = started.elapsed().as_millis() as u64;
    report
}

/// A fixed battery of engine checks against frozen values.
pub fn cmd_selftest() -> Report {
    let started = Instant::now();
    let mut report = Report::new("selftest", json!({}));
    let check = |report: &mut Report, name: &str, actual: String, expected: &str| {
        let pass = actual == expected;
        if !pass {
            report.record_failure();
        }
        report.push(json!({
            "check": name,
            "actual": actual,
            "expected": expected,
            "pass": pass,
        }));
    };

    check(
        &mut report,
        "milnor BF(3)",
        milnor_number(&Variety::bounded_flag(3)).to_string(),
        "2",
    );
    check(
        &mut report,
        "milnor X(2,3)",
        milnor_number(&Variety::x_variety(2, 3).unwrap()).to_string(),
        "20",
    );
    check(
        &mut report,
        "blowup_milnor X(2,2) Y(2,2)",
        blowup_milnor(
            &Variety::x_variety(2, 2).unwrap(),
            &Variety::y_variety(2, 2).unwrap(),
        )
        .unwrap()
        .to_string(),
        "-10",
    );
    check(
        &mut report,
        "todd X(2,2)",
        todd_genus(&Variety::x_variety(2, 2).unwrap()).to_string(),
        "1",
    );
    {
        let p = Variety::product(
            &Variety::projective_space(2),
            &Variety::projective_space(3),
        )
        .unwrap();
        let c1 = p
            .ring()
            .generator(0)
            .add(&p.ring().generator(1))
            .unwrap();
        check(
            &mut report,
            "dual_milnor CP2 x CP3",
            p.dual_hypersurface_milnor(&c1).unwrap().to_string(),
            "-10",
        );
    }
    check(
        &mut report,
        "milnor BR(2,3) equals milnor H(2,3)",
        (milnor_number(&Variety::br_variety(2, 3).unwrap())
            == milnor_number(&Variety::h_variety(2, 3).unwrap()))
        .to_string(),
        "true",
    );
    check(
        &mut report,
        "pmain p=3 s=2",
        {
            let rec = verify_lemma(LemmaCheck::PMain { p: 3, s: 2 }).unwrap();
            format!("{}:{}", rec.lhs.unwrap().value, rec.passed())
        },
        "3:true",
    );
    check(
        &mut report,
        "generator degree 8",
        {
            let r = verify_generator_degree(8, false).unwrap();
            format!("{}:{}", r.gcd, r.pass)
        },
        "3:true",
    );
    check(
        &mut report,
        "digit case n=5 q=3",
        {
            let c = digit_case_select(5, 3).unwrap();
            format!("case{}:j={}", c.case_id, c.j)
        },
        "case1:j=3",
    );
    check(
        &mut report,
        "granville binom(8,5) mod 9",
        granville_residue(8, 5, 3, 2).unwrap().value.to_string(),
        "2",
    );
    check(
        &mut report,
        "lucas binom(10,5) mod 3",
        lucas_residue(10, 5, 3).unwrap().value.to_string(),
        "0",
    );
    check(
        &mut report,
        "a(3,5) closed form",
        a_closed_form(3, 5).unwrap().to_string(),
        (-BigInt::from(84)).to_string().as_str(),
    );
    check(
        &mut report,
        "parse/print round trip",
        {
            let src = "let x = X(2, 3);\nlet y = Y(2, 3);\nblowup_milnor(x, y);\n";
            let ast = dsl::parse(src).unwrap();
            (dsl::print(&ast) == src && dsl::parse(&dsl::print(&ast)).unwrap() == ast)
                .to_string()
        },
        "true",
    );
    check(
        &mut report,
        "integer mode stays exact",
        {
            let v = Variety::bounded_flag(4);
            milnor_number(&v)
                .to_integer()
                .map(|n| (Scalar::from_bigint(n) == milnor_number(&v)).to_string())
                .unwrap_or_else(|| "false".into())
        },
        "true",
    );
    report.timing_ms = started.elapsed().as_millis() as u64;
    report
}
