use std::path::PathBuf;
use std::process::Command;

use qshare_cli::{
    AnalyzePayload, BoundsPayload, Envelope, ScanPayload, VerifyPayload, EXIT_CAP, EXIT_INPUT, EXIT_IO, EXIT_OK,
};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qshare(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qshare"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Set `QSHARE_BLESS=1` to rewrite the golden files.
fn golden(name: &str, args: &[&str]) {
    let run = qshare(args);
    assert_eq!(run.code, EXIT_OK, "{name}: {}", run.stderr);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("QSHARE_BLESS").is_some() {
        std::fs::write(&path, &run.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(run.stdout, expected, "{name} differs from golden output");
}

const TABLE: &str = "fixtures/table1.csv";
const FIVE: &str = "fixtures/codes/five_qubit.code";

#[test]
fn golden_outputs() {
    golden("scan.txt", &["scan", "--table", TABLE]);
    golden("scan_literal.txt", &["scan", "--table", TABLE, "--eq5-mode", "literal"]);
    golden("scan.json", &["scan", "--table", TABLE, "--json"]);
    golden("analyze_five_qubit.txt", &["analyze", "--code", FIVE]);
    golden("analyze_five_qubit.json", &["analyze", "--code", FIVE, "--json"]);
    golden("analyze_steane.json", &["analyze", "--code", "builtin:steane", "--json"]);
    golden("verify_five_qubit.txt", &["verify", "--code", FIVE]);
    golden("verify_steane.json", &["verify", "--code", "builtin:steane", "--json"]);
    golden("bounds_27_3_9.txt", &["bounds", "--n", "27", "--k", "3", "--d", "9"]);
    golden("bounds_27_3_9.json", &["bounds", "--n", "27", "--k", "3", "--d", "9", "--json"]);
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> (Envelope<T>, String) {
    let run = qshare(args);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    let env: Envelope<T> = serde_json::from_str(&run.stdout).unwrap();
    (env, run.stdout)
}

fn round_trips<T>(args: &[&str])
where
    T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug,
{
    let (env, text) = json::<T>(args);
    assert_eq!(env.command, args[0]);
    assert_eq!(env.version, env!("CARGO_PKG_VERSION"));
    let again = serde_json::to_string_pretty(&env).unwrap() + "\n";
    assert_eq!(again, text);
    let reparsed: Envelope<T> = serde_json::from_str(&again).unwrap();
    assert_eq!(reparsed, env);
}

#[test]
fn json_round_trips() {
    round_trips::<ScanPayload>(&["scan", "--table", TABLE, "--json"]);
    round_trips::<ScanPayload>(&["scan", "--table", TABLE, "--json", "--eq5-mode", "literal", "--q", "3"]);
    for code in ["builtin:five_qubit", "builtin:steane", "builtin:trivial_1", "fixtures/codes/four_two_two.code"] {
        round_trips::<AnalyzePayload>(&["analyze", "--code", code, "--json"]);
        round_trips::<VerifyPayload>(&["verify", "--code", code, "--json"]);
    }
    round_trips::<AnalyzePayload>(&["analyze", "--code", "builtin:steane", "--json", "--distance-max-weight", "2"]);
    round_trips::<BoundsPayload>(&["bounds", "--n", "27", "--k", "3", "--d", "9", "--json"]);
    round_trips::<BoundsPayload>(&["bounds", "--n", "60", "--k", "20", "--d", "5", "--q", "7", "--json"]);
}

#[test]
fn json_envelope_is_a_single_object() {
    let run = qshare(&["analyze", "--code", "builtin:steane", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "payload", "version"]);
    let payload = obj["payload"].as_object().unwrap();
    for key in ["code", "validation", "distance", "thresholds", "sizes", "eq1", "eq2", "bounds", "warnings"] {
        assert!(payload.contains_key(key), "missing {key}");
        assert!(!payload[key].is_null(), "{key} is null");
    }
    assert_eq!(payload["distance"]["d"], 3);
    assert_eq!(payload["bounds"]["linear_lower_by_m"][0]["bound"], "1");
}

fn cells(line: &str) -> Vec<String> {
    line.split_whitespace().map(String::from).collect()
}

#[test]
fn human_and_json_scan_agree() {
    for mode in ["corrected", "literal"] {
        let (env, _) = json::<ScanPayload>(&["scan", "--table", TABLE, "--eq5-mode", mode, "--json"]);
        let human = qshare(&["scan", "--table", TABLE, "--eq5-mode", mode]).stdout;
        let lines: Vec<&str> = human.lines().collect();
        let rows = &env.payload.rows;
        assert_eq!(lines.len(), rows.len() + 3);
        for (line, row) in lines[2..].iter().zip(rows) {
            let c = cells(line);
            assert_eq!(c[0], row.line.to_string());
            assert_eq!(c[1], format!("[[{},{},{}]]", row.n, row.k, row.d));
            assert_eq!(c[2], row.quantum_gap_upper.to_string());
            assert_eq!(c[3], row.classical_gap_lower.to_string());
            assert_eq!(c[4], row.eq4.to_string());
            assert_eq!(c[5], row.eq5_witness.map_or("-".to_string(), |m| format!("m={m}")));
            assert_eq!(c[6], if row.flagged { "yes" } else { "no" });
            let bounds: Vec<String> = row.linear_lower_by_m.iter().map(|b| b.bound.to_string()).collect();
            assert_eq!(c[7..].join(" "), format!("[{}]", bounds.join(", ")));
        }
        assert_eq!(
            *lines.last().unwrap(),
            format!("flagged: {} of {}", env.payload.flagged, rows.len())
        );
    }
}

#[test]
fn human_and_json_analyze_agree() {
    for code in ["builtin:five_qubit", "builtin:steane", "builtin:trivial_1", "fixtures/codes/four_two_two.code"] {
        let (env, _) = json::<AnalyzePayload>(&["analyze", "--code", code, "--json"]);
        let p = env.payload;
        let human = qshare(&["analyze", "--code", code]).stdout;
        let t = &p.thresholds;
        assert!(human.contains(&format!("thresholds: r = {}, t = {}, gap = {}\n", t.r, t.t, t.gap)));
        let d = p.distance.d.unwrap();
        assert!(human.contains(&format!("distance: d = {d} (witness {})\n", p.distance.witness.as_ref().unwrap())));
        for s in &p.sizes {
            let row = format!("{:>4} {:>10} {:>10} {:>10}\n", s.size, s.qualified, s.partial, s.forbidden);
            assert!(human.contains(&row), "{code}: {row}");
        }
        let e1 = p.eq1.unwrap();
        assert!(human.contains(&format!("eq1: gap {} <= n+2-2d = {}", e1.gap, e1.bound)));
        assert!(human.contains(&format!("eq2: (r+1)/q = {} at r = {}", p.eq2.lower, p.eq2.r)));
        let b = p.bounds.unwrap();
        assert!(human.contains(&format!("eq4: {}\n", b.eq4)));
        assert_eq!(human.matches("[ok]").count(), p.validation.checks.len());
    }
}

#[test]
fn human_and_json_bounds_agree() {
    for (n, k, d) in [(27, 3, 9), (28, 3, 9), (6, 1, 3), (26, 5, 7)] {
        let args = ["bounds", "--n", &n.to_string(), "--k", &k.to_string(), "--d", &d.to_string()].map(String::from);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let human = qshare(&args).stdout;
        let mut with_json = args.clone();
        with_json.push("--json");
        let p = json::<BoundsPayload>(&with_json).0.payload;
        assert!(human.contains(&format!("quantum gap upper (n+2-2d): {}\n", p.quantum_gap_upper)));
        assert!(human.contains(&format!("r = n-d+1): {}\n", p.classical_gap_lower)));
        for b in &p.linear_lower_by_m {
            assert!(human.contains(&format!("  m={}: {}\n", b.m, b.bound)));
        }
        assert!(human.contains(&format!("eq4: {}\n", p.eq4)));
    }
}

#[test]
fn documented_examples() {
    let p = json::<BoundsPayload>(&["bounds", "--n", "27", "--k", "3", "--d", "9", "--json"]).0.payload;
    let bounds: Vec<String> = p.linear_lower_by_m.iter().map(|b| b.bound.to_string()).collect();
    assert_eq!(bounds, ["3", "31/3", "83/7"]);
    assert_eq!(p.eq5_corrected, Some(2));
    assert_eq!(p.eq5_literal, None);
    assert!(json::<BoundsPayload>(&["bounds", "--n", "6", "--k", "1", "--d", "3", "--json"]).0.payload.eq4);

    let a = json::<AnalyzePayload>(&["analyze", "--code", "builtin:five_qubit", "--json"]).0.payload;
    assert_eq!((a.thresholds.r, a.thresholds.t, a.thresholds.gap), (3, 2, 1));
    assert_eq!(a.distance.d, Some(3));
    assert!(a.bounds.unwrap().eq4);
    let a = json::<AnalyzePayload>(&["analyze", "--code", "builtin:trivial_1", "--json"]).0.payload;
    assert_eq!((a.thresholds.r, a.thresholds.t), (1, 0));

    let s = json::<ScanPayload>(&["scan", "--table", TABLE, "--json"]).0.payload;
    assert_eq!(s.flagged, 10);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["scan", "--table", "missing.csv"], EXIT_IO),
        (&["scan", "--table", "fixtures/bad_table.csv"], EXIT_INPUT),
        (&["scan", "--table", TABLE, "--eq5-mode", "sideways"], EXIT_INPUT),
        (&["scan", "--table", TABLE, "--q", "1"], EXIT_INPUT),
        (&["analyze", "--code", "fixtures/codes/anticommuting.code"], EXIT_INPUT),
        (&["analyze", "--code", "builtin:nope"], EXIT_INPUT),
        (&["analyze", "--code", "fixtures/codes/missing.code"], EXIT_IO),
        (&["analyze", "--code", "fixtures/codes/repetition_30.code"], EXIT_CAP),
        (&["analyze", "--code", "builtin:steane", "--max-n", "6"], EXIT_CAP),
        (&["analyze", "--code", "builtin:steane", "--distance-max-weight", "2"], EXIT_OK),
        (&["verify", "--code", "builtin:five_qubit"], EXIT_OK),
        (&["verify", "--code", "builtin:steane"], EXIT_OK),
        (&["verify", "--code", "builtin:trivial_1"], EXIT_OK),
        (&["verify", "--code", "fixtures/codes/repetition_30.code"], EXIT_CAP),
        (&["verify", "--code", "builtin:steane", "--max-n", "5"], EXIT_CAP),
        (&["bounds", "--n", "5", "--k", "1", "--d", "9"], EXIT_INPUT),
        (&["bounds", "--n", "5", "--k", "0", "--d", "3"], EXIT_INPUT),
        (&["bounds", "--n", "5", "--k", "1", "--d", "3", "--q", "0"], EXIT_INPUT),
        (&["bounds", "--n", "5", "--k", "1"], EXIT_INPUT),
        (&["frobnicate"], EXIT_INPUT),
        (&["--help"], EXIT_OK),
    ];
    for (args, expected) in cases {
        let run = qshare(args);
        assert_eq!(run.code, *expected, "{args:?}: {}", run.stderr);
        if *expected != EXIT_OK {
            assert!(!run.stderr.is_empty(), "{args:?} printed no error");
        }
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let run = qshare(&["scan", "--table", "fixtures/bad_table.csv"]);
    assert!(run.stderr.starts_with("fixtures/bad_table.csv:3:"), "{}", run.stderr);
    let run = qshare(&["analyze", "--code", "fixtures/codes/anticommuting.code"]);
    assert!(run.stderr.contains("anticommutes"), "{}", run.stderr);
}

#[test]
fn in_process_matches_binary() {
    let args = ["scan", "--table", TABLE, "--json"];
    let binary = qshare(&args);
    std::env::set_current_dir(root()).unwrap();
    let inproc = qshare_cli::run(std::iter::once("qshare").chain(args));
    assert_eq!(inproc.code, binary.code);
    assert_eq!(inproc.stdout, binary.stdout);
}
