//! CLI acceptance: the parse/print round-trip property, byte-identical
//! reports, and process exit codes.

use cobtower_cli::commands::{cmd_run, cmd_selftest, cmd_table, cmd_verify_congruences};
use cobtower_cli::dsl::{self, Bundle, Command, Expr, Family, Poly, Script, Stmt};
use proptest::prelude::*;
use std::process::Command as Process;

const RESERVED: &[&str] = &[
    "let",
    "point",
    "proj",
    "product",
    "lines",
    "chern",
    "milnor",
    "todd",
    "chern_number",
    "dual_milnor",
    "blowup_milnor",
];

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,5}".prop_filter("reserved word", |s| !RESERVED.contains(&s.as_str()))
}

fn poly() -> impl Strategy<Value = Poly> {
    let leaf = prop_oneof![
        (0u64..1000).prop_map(Poly::Int),
        ident().prop_map(Poly::Gen),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Poly::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Poly::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Poly::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Poly::Neg(Box::new(a))),
            (inner, 0u32..6).prop_map(|(a, e)| Poly::Pow(Box::new(a), e)),
        ]
    })
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::X),
        Just(Family::Z),
        Just(Family::Y),
        Just(Family::Br),
        Just(Family::H),
        Just(Family::L),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Point),
        (0u32..9).prop_map(Expr::Cp),
        (0u32..9).prop_map(Expr::Bf),
        (family(), 0u32..6, 0u32..9).prop_map(|(f, i, j)| Expr::Named(f, i, j)),
    ];
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), prop::collection::vec(poly(), 1..4))
                .prop_map(|(b, lines)| Expr::BfBundle(Box::new(b), lines)),
            (inner.clone(), prop::collection::vec(poly(), 1..4))
                .prop_map(|(b, lines)| Expr::Proj(Box::new(b), Bundle::Lines(lines))),
            (inner.clone(), poly(), 1u32..5)
                .prop_map(|(b, p, r)| Expr::Proj(Box::new(b), Bundle::Chern(p, r))),
            (inner.clone(), inner)
                .prop_map(|(a, b)| Expr::Product(Box::new(a), Box::new(b))),
        ]
    })
}

fn command(names: Vec<String>) -> impl Strategy<Value = Command> {
    let pick = move || {
        let names = names.clone();
        (0..names.len()).prop_map(move |i| names[i].clone())
    };
    prop_oneof![
        pick().prop_map(Command::Milnor),
        pick().prop_map(Command::Todd),
        (pick(), prop::collection::vec(1u32..9, 1..4))
            .prop_map(|(v, parts)| Command::ChernNumber(v, parts)),
        (pick(), poly()).prop_map(|(v, p)| Command::DualMilnor(v, p)),
        (pick(), pick()).prop_map(|(a, b)| Command::BlowupMilnor(a, b)),
    ]
}

fn script() -> impl Strategy<Value = Script> {
    (prop::collection::btree_set(ident(), 1..5), prop::collection::vec(expr(), 4))
        .prop_flat_map(|(names, exprs)| {
            let names: Vec<String> = names.into_iter().collect();
            let lets: Vec<Stmt> = names
                .iter()
                .zip(exprs)
                .map(|(name, expr)| Stmt::Let {
                    name: name.clone(),
                    expr,
                })
                .collect();
            prop::collection::vec(command(names), 0..5).prop_map(move |cmds| {
                let mut stmts = lets.clone();
                stmts.extend(cmds.into_iter().map(Stmt::Command));
                Script { stmts }
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Acceptance criterion 11 (parse/print round trip): parsing the
    /// canonical printout of any script rebuilds the same syntax tree.
    #[test]
    fn criterion_11_parse_print_round_trip(s in script()) {
        let printed = dsl::print(&s);
        let reparsed = dsl::parse(&printed)
            .unwrap_or_else(|e| panic!("reparse failed: {e}\n{printed}"));
        prop_assert_eq!(s, reparsed);
    }
}

#[test]
fn criterion_11_reports_are_deterministic() {
    // Library level: identical invocations produce identical bytes.
    assert_eq!(cmd_selftest().canonical_json(), cmd_selftest().canonical_json());
    assert_eq!(
        cmd_table(8, 4).canonical_json(),
        cmd_table(8, 4).canonical_json()
    );
    assert_eq!(
        cmd_verify_congruences(&[2, 3, 5], 2).canonical_json(),
        cmd_verify_congruences(&[2, 3, 5], 2).canonical_json()
    );
    let src = "let x = X(2, 2); let y = Y(2, 2); blowup_milnor(x, y); milnor(x); todd(x);";
    assert_eq!(
        cmd_run(src, "inline").unwrap().canonical_json(),
        cmd_run(src, "inline").unwrap().canonical_json()
    );

    // Process level, across runs.
    let bin = env!("CARGO_BIN_EXE_cobtower");
    let run = || {
        let out = Process::new(bin)
            .args(["verify-congruences", "--primes", "3,5", "--max-s", "2"])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    assert_eq!(first, run(), "reports differ across runs");
    assert!(!first.is_empty());
    println!("[acceptance] criterion 11 (deterministic reports): PASS — identical bytes across runs");
}

#[test]
fn criterion_11_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cobtower");
    let dir = tempfile::tempdir().unwrap();

    // All verdicts pass: exit 0.
    let ok = Process::new(bin)
        .args(["verify-generators", "--max-degree", "10", "--engine-cap", "0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");

    // A failing evaluation: exit 1, report still emitted.
    let bad = dir.path().join("bad.tow");
    std::fs::write(&bad, "let b = BF(2);\ndual_milnor(b, nosuch);\n").unwrap();
    let fail = Process::new(bin)
        .arg("run")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let text = String::from_utf8(fail.stdout).unwrap();
    assert!(text.contains("unknown generator"), "{text}");

    // A parse error: exit 2 with a position on stderr.
    let broken = dir.path().join("broken.tow");
    std::fs::write(&broken, "let x = X(2,3); blowup_milnup(x, x);\n").unwrap();
    let parse = Process::new(bin)
        .arg("run")
        .arg(&broken)
        .output()
        .unwrap();
    assert_eq!(parse.status.code(), Some(2));
    let err = String::from_utf8(parse.stderr).unwrap();
    assert!(err.contains("1:17"), "{err}");

    println!("[acceptance] criterion 11 (exit codes): PASS — 0 on pass, 1 on failed verdicts, 2 on parse errors");
}

#[test]
fn selftest_battery_and_outputs() {
    let bin = env!("CARGO_BIN_EXE_cobtower");
    let out = Process::new(bin).arg("selftest").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"passed\": true"));

    // TSV table with the frozen example row.
    let tsv = Process::new(bin)
        .args(["table", "--max-degree", "8", "--engine-cap", "0", "--format", "tsv"])
        .output()
        .unwrap();
    assert_eq!(tsv.status.code(), Some(0));
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.starts_with("i\tj\ta_closed\ta_engine\n"));
    assert!(text.contains("3\t5\t-84\t\n"), "{text}");

    // --out writes the same canonical bytes to a file.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let direct = Process::new(bin).arg("selftest").output().unwrap().stdout;
    let status = Process::new(bin)
        .args(["selftest", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&path).unwrap(), direct);
}
