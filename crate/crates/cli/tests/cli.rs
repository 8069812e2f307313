use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_salvetti"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn check_golden(job: &str, expected: &str, extra: &[&str]) {
    let input = golden(job);
    let mut args = vec!["-i", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args, None);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        stdout(&out),
        fs::read_to_string(golden(expected)).unwrap(),
        "{job}"
    );
}

#[test]
fn golden_tables() {
    for job in [
        "a2_plain",
        "a2_milnor",
        "a2_symplectic",
        "a4_mod2",
        "affine_a2",
    ] {
        check_golden(&format!("{job}.json"), &format!("{job}.out"), &[]);
    }
}

#[test]
fn golden_matrix_market() {
    check_golden("a2_plain.json", "a2_plain.mtx", &["--format", "market"]);
}

#[test]
fn flags_override_the_job() {
    let input = golden("a2_plain.json");
    let out = run(&["-i", input.to_str().unwrap(), "-c", "cohomology"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H^1 = Q[q]/(phi1)"), "{text}");
    assert!(text.contains("H^2 = Q[q]/(phi6)"), "{text}");
}

#[test]
fn cyclotomic_specialization() {
    let input = golden("a2_milnor.json");
    let out = run(
        &[
            "-i",
            input.to_str().unwrap(),
            "--at-cyclotomic",
            "3",
            "-c",
            "spectral",
        ],
        None,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("Q[q]/phi3"));
}

#[test]
fn structured_output_round_trips() {
    let input = golden("a2_milnor.json");
    let out = run(
        &["-i", input.to_str().unwrap(), "--format", "structured"],
        None,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let report = salvetti::job::Report::from_structured(&text).unwrap();
    assert_eq!(report.to_structured().trim(), text.trim());
    let degrees = report.homology.as_ref().unwrap().degrees.len();
    assert_eq!(degrees, 3);
}

#[test]
fn reads_standard_input_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("salvetti-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let target = dir.join("out.txt");
    let job = fs::read_to_string(golden("a2_plain.json")).unwrap();
    let out = run(&["-i", "-", "-o", target.to_str().unwrap()], Some(&job));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&target).unwrap(),
        fs::read_to_string(golden("a2_plain.out")).unwrap()
    );
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let cases = [
        ("{bad", 1),
        (
            r#"{"vertices": ["a"], "edges": [], "command": "launch"}"#,
            1,
        ),
        (
            r#"{"vertices": ["a"], "edges": [["a", "b", 3]], "command": "complex"}"#,
            2,
        ),
        (
            r#"{"vertices": ["a", "b", "c"], "edges": [["a","b","inf"],["b","c","inf"],["a","c","inf"]], "command": "augmented"}"#,
            2,
        ),
        (
            r#"{"vertices": ["a"], "edges": [], "command": "cohomology", "options": {"field": "Q[q1,q2]"}}"#,
            3,
        ),
    ];
    for (job, code) in cases {
        let out = run(&["-i", "-"], Some(job));
        assert_eq!(out.status.code(), Some(code), "{job}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error: "), "{err}");
    }
}

#[test]
fn missing_file_is_a_parse_error() {
    let out = run(&["-i", "/nonexistent/job.json"], None);
    assert_eq!(out.status.code(), Some(1));
}
