use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use singclass_cli::{parse_job, read_manifest, run_job, run_suite, Overrides, Status};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn schema() -> jsonschema::JSONSchema {
    let text = fs::read_to_string(crate_dir().join("schema/result.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value, what: &str) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what}: {}", msgs.join("; "));
    }
}

fn singclass(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_singclass")).args(args).output().unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("singclass-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn acceptance_manifest_passes_and_validates() {
    let files = read_manifest(&crate_dir().join("acceptance/manifest.txt")).unwrap();
    assert!(files.len() > 50);
    let report = run_suite(&files, &Overrides::default());
    let schema = schema();
    for (entry, file) in report.jobs.iter().zip(&files) {
        assert_eq!(entry.file, file.display().to_string(), "manifest order");
        let doc = entry.result.as_ref().unwrap_or_else(|| panic!("{}: {:?}", entry.file, entry.error));
        assert_eq!(entry.status, Status::Ok, "{}: {:?}", entry.file, doc.error);
        assert_valid(&schema, &serde_json::to_value(doc).unwrap(), &entry.file);
    }
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn same_job_same_bytes() {
    let job = crate_dir().join("acceptance/c3-euler-a2.job");
    let a = singclass(&["--job", path(&job)]);
    let b = singclass(&["--job", path(&job)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = singclass(&["--job", path(&job), "--seed", "77"]);
    let doc: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(doc["diagnostics"]["seed"], 77);
    assert_eq!(doc["outputs"]["values"][0]["mu"], 2);
}

#[test]
fn readme_example() {
    let job = parse_job("command: milnor\nring: [x, y]\nmap: [x^3+y^2]\npoints: [[0,0]]\n").unwrap();
    let doc = run_job(&job, &Overrides::default());
    assert_eq!(doc.status, Status::Ok);
    assert_eq!(doc.outputs["values"][0]["mu"], 2);

    let job = parse_job("command: verify-euler\nring: [x, y]\nmap: [x*y]\npoints: [[0, 0], [1, 1]]\n").unwrap();
    let doc = run_job(&job, &Overrides::default());
    assert_eq!(doc.status, Status::Ok);
    let passes: Vec<&Value> = doc.outputs["values"].as_array().unwrap().iter().map(|v| &v["pass"]).collect();
    assert_eq!(passes, [&Value::Bool(true), &Value::Bool(true)]);
}

#[test]
fn text_and_json_agree() {
    let text = "command: milnor\nring: [x, y]\nmap: [x^3 + y^2]\npoints: [[0, 0]]\n";
    let json = r#"{"command": "milnor", "ring": ["x", "y"], "map": ["x^3 + y^2"], "points": [[0, 0]]}"#;
    assert_eq!(parse_job(text).unwrap(), parse_job(json).unwrap());
    let a = scratch("text.job", text);
    let b = scratch("json.job", json);
    assert_eq!(singclass(&["--job", path(&a)]).stdout, singclass(&["--job", path(&b)]).stdout);
}

#[test]
fn exit_codes() {
    let schema = schema();
    let bad = scratch("bad.job", "command: milnor\nring: [x, y]\nmap: [x^^2]\npoints: [[0, 0]]\n");
    let out = singclass(&["--job", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "input-error");
    assert_valid(&schema, &doc, "malformed polynomial");

    let nonisolated = scratch("x2.job", "command: milnor\nring: [x, y]\nmap: [x^2]\npoints: [[0, 0]]\n");
    let out = singclass(&["--job", path(&nonisolated)]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "precondition-failed");
    assert_valid(&schema, &doc, "non-isolated");

    let wrong = scratch("wrong.job", "command: milnor\nring: [x, y]\nmap: [x^3 + y^2]\npoints: [[0, 0]]\nexpect.values.0.mu: 3\n");
    let out = singclass(&["--job", path(&wrong)]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "check-failed");

    let unknown = scratch("unknown.job", "command: milnor\nring: [x]\ncolour: blue\n");
    assert_eq!(singclass(&["--job", path(&unknown)]).status.code(), Some(1));
}

#[test]
fn suites() {
    let empty = scratch("empty.txt", "# nothing\n");
    let out = singclass(&["--suite", path(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);

    scratch("good.job", "command: milnor\nring: [x, y]\nmap: [x*y]\npoints: [[0, 0]]\n");
    scratch("broken.job", "command: milnor\nring: [x, y]\nmap: [x^2]\npoints: [[0, 0]]\n");
    let manifest = scratch("mixed.txt", "good.job\nbroken.job\nmissing.job\n");
    let out = singclass(&["--suite", path(&manifest)]);
    assert_eq!(out.status.code(), Some(2));
    let table = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert!(rows[0].contains("good.job") && rows[0].contains(" ok "));
    assert!(rows[1].contains("broken.job") && rows[1].contains("precondition-failed"));
    assert!(rows[2].contains("missing.job") && rows[2].contains("input-error"));
}

#[test]
fn json_out_and_quiet() {
    let job = crate_dir().join("acceptance/c2-milnor-e6.job");
    let out_file = std::env::temp_dir().join(format!("singclass-cli-{}-e6.json", std::process::id()));
    let out = singclass(&["--job", path(&job), "--quiet", "--json-out", path(&out_file)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(doc["outputs"]["values"][0]["mu"], 6);
    assert!(doc["diagnostics"].get("elapsed_ms").is_none());
}
