//! CLI contract checks against the built binary. Prints one PASS/FAIL line
//! per check and always exits 0.

use jsonschema::JSONSchema;
use serde_json::Value;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_foldhecke");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut c = Command::new(BIN);
    c.args(args).env_remove("FOLDHECKE_CATALOG");
    for (k, v) in env {
        c.env(k, v);
    }
    let out = c.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn json(args: &[&str]) -> Option<Value> {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let r = run(&a);
    if r.code != 0 {
        return None;
    }
    serde_json::from_str(&r.stdout).ok()
}

fn one_line_error(r: &Run) -> bool {
    r.stdout.is_empty() && r.stderr.trim().lines().count() == 1 && r.stderr.starts_with("error")
}

fn report(ok: bool, name: &str, detail: String) -> bool {
    println!("{} {name} :: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let mut results = vec![];

    // tables on (D4, 3) gives exactly the rows 11.10–11.12
    let t = json(&["tables", "--type", "D4", "--d", "3"]);
    let ids: Vec<String> = t
        .as_ref()
        .and_then(|v| v["result"]["rows"].as_array().cloned())
        .unwrap_or_default()
        .iter()
        .map(|r| r["id"].as_str().unwrap_or("").to_string())
        .collect();
    results.push(report(ids == ["11.10", "11.11", "11.12"], "tables D4 d=3 lists three rows", format!("{ids:?}")));

    let text = run(&["tables", "--type", "E6", "--d", "2"]);
    let ok = text.code == 0
        && text.stdout.contains("♯^{2×1×2}—♯^{2×1×2}—♯^{2×1×2}⇒♯^{2×1×1}—♯^{2×1×1}")
        && text.stdout.contains("2—2⇐1—1—1")
        && text.stdout.contains("DISCREPANCY ha: printed 1∞9");
    results.push(report(ok, "tables E6 d=2 text shows the J=∅ row and the flagged H.A. string", format!("exit {}", text.code)));

    // the documented reduce example has four coordinates, but |I| = 3 for (A3, 2)
    let r = run(&["reduce", "--type", "A3", "--d", "2", "--point", "1/2,1/4,0,1/4"]);
    results.push(report(
        r.code == 2 && one_line_error(&r) && r.stderr.contains("expected 3 coordinates"),
        "reduce with a wrong-length point is a validation error",
        r.stderr.trim().to_string(),
    ));
    let r = json(&["reduce", "--type", "A3", "--d", "2", "--point", "3/2+1/3i,-1/4-1/3i,-1/8"]);
    let ok = r.as_ref().is_some_and(|v| {
        let res = &v["result"];
        res["canonical"].as_array().map(|c| c.len()) == Some(3) && res["S"] == serde_json::json!([0, 1, 2]) && !res["word"].as_array().unwrap().is_empty()
    });
    results.push(report(ok, "reduce returns canonical point, cell and word", r.map(|v| v["result"]["canonical"].to_string()).unwrap_or_default()));

    // error classes and exit codes
    let cases: [(&[&str], &str); 5] = [
        (&["fold", "--type", "B3", "--d", "2"], "not simply laced"),
        (&["fold", "--type", "Q7", "--d", "1"], "type code"),
        (&["reduce", "--type", "A3", "--d", "2", "--point", "1/0,1,0"], "zero denominator"),
        (&["reduce", "--type", "A3", "--d", "2", "--point", "1/2,x,1/8"], "malformed fraction"),
        (&["tables", "--type", "A2", "--d", "2", "--family", "11.2", "--a", "1", "--b", "1", "--s", "2"], "4Z"),
    ];
    for (args, needle) in cases {
        let r = run(args);
        results.push(report(
            r.code == 2 && one_line_error(&r) && r.stderr.contains(needle),
            &format!("exit 2 with a one-line message for `{}`", args.join(" ")),
            r.stderr.trim().to_string(),
        ));
    }
    let r = run(&["tables", "--type", "A2"]);
    results.push(report(r.code == 2, "missing options are rejected before any computation", format!("exit {}", r.code)));

    // byte-identical output across invocations
    let a = run(&["--format", "json", "tables", "--type", "A6", "--d", "2"]);
    let b = run(&["--format", "json", "tables", "--type", "A6", "--d", "2"]);
    let c = run(&["tables", "--type", "D6", "--d", "2"]);
    let d = run(&["tables", "--type", "D6", "--d", "2"]);
    results.push(report(
        a.code == 0 && a.stdout == b.stdout && c.stdout == d.stdout && !c.stdout.is_empty(),
        "identical invocations give identical output",
        format!("{} + {} bytes", a.stdout.len(), c.stdout.len()),
    ));

    // every verb's JSON validates against the shipped schema
    let schema_text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report-v1.schema.json")).expect("schema file");
    let schema: Value = serde_json::from_str(&schema_text).expect("schema is JSON");
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let verbs: [&[&str]; 8] = [
        &["fold", "--type", "E6", "--d", "2"],
        &["reduce", "--type", "D4", "--d", "3", "--point", "1/4+i,-3/8-1/2i,1/2"],
        &["tables", "--type", "A5", "--d", "2"],
        &["tables", "--type", "E6", "--d", "2"],
        &["hecke", "--type", "E6", "--d", "2", "--j", "0,2,3"],
        &["hecke", "--type", "A5", "--d", "2", "--j", "", "--u-bar", "2,2,2,2"],
        &["verify", "--suite", "appendix", "--timings"],
        &["dump", "--type", "A2", "--d", "2"],
    ];
    for args in verbs {
        let v = json(args);
        let errs: Vec<String> = match &v {
            None => vec!["command failed or printed invalid JSON".into()],
            Some(v) => match compiled.validate(v) {
                Ok(()) => vec![],
                Err(es) => es.map(|e| format!("{} at {}", e, e.instance_path)).take(3).collect(),
            },
        };
        results.push(report(errs.is_empty(), &format!("schema-valid JSON from `{}`", args.join(" ")), format!("{errs:?}")));
    }

    // catalog override through the environment
    let builtin = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/catalog.json");
    let same = run_env(&["tables", "--type", "D4", "--d", "3"], &[("FOLDHECKE_CATALOG", builtin)]);
    let base = run(&["tables", "--type", "D4", "--d", "3"]);
    let missing = run_env(&["tables", "--type", "D4", "--d", "3"], &[("FOLDHECKE_CATALOG", "/nonexistent/catalog.json")]);
    results.push(report(
        same.stdout == base.stdout && missing.code == 2 && one_line_error(&missing),
        "FOLDHECKE_CATALOG overrides the catalog path",
        missing.stderr.trim().to_string(),
    ));

    // the full suite through the CLI
    let v = run(&["verify", "--suite", "all"]);
    let fails = v.stdout.lines().filter(|l| l.starts_with("FAIL")).count();
    results.push(report(v.code == 0 && fails == 0, "verify --suite all exits 0", v.stdout.lines().last().unwrap_or("").to_string()));

    let passed = results.iter().filter(|&&x| x).count();
    println!("{passed} of {} CLI checks passed", results.len());
}
