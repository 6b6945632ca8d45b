use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bertrand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bertrand"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = bertrand(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr_and_code(args: &[&str]) -> (String, i32) {
    let out = bertrand(args);
    (String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

#[test]
fn dbeta_of_golden_ratio() {
    assert_eq!(
        stdout(&["dbeta", "--base", "poly:1,-1,-1@(1,2)", "--depth", "10"]),
        "110(0) [simple Parry, n=2]\n"
    );
}

#[test]
fn build_noncanonical_base_three() {
    assert_eq!(
        stdout(&["build", "--beta", "int:3", "--variant", "noncanonical", "--count", "4"]),
        "1 4 13 40\n"
    );
}

#[test]
fn member_rejects_digit_outside_alphabet() {
    assert_eq!(
        stdout(&["member", "--system", "fixtures/ncphi.json", "--word", "20"]),
        "false\n"
    );
}

#[test]
fn inline_systems() {
    assert_eq!(
        stdout(&["member", "--system", "bertrand:110(0)", "--word", "1100"]),
        "true\n"
    );
    assert_eq!(stdout(&["rep", "--system", "canonical:int:3", "--n", "100"]), "10201\n");
    assert_eq!(
        stdout(&["val", "--system", "noncanonical:int:3", "--word", "30"]),
        "12\n"
    );
}

#[test]
fn json_output_parses() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "dbeta", "--base", "int:3"])).unwrap();
    assert_eq!(v["word"], "30(0)");
    assert_eq!(v["resolved"], true);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "classify", "--system", "fixtures/zeckendorf.json"])).unwrap();
    assert_eq!(v["verdict"], "case2");
    assert_eq!(v["certified"], true);
}

#[test]
fn threads_flag_is_accepted() {
    let out = stdout(&[
        "--threads",
        "2",
        "automaton",
        "--base",
        "int:3",
        "--variant",
        "noncanonical",
        "--verify",
        "fixtures/ncbase3.json",
    ]);
    assert!(
        out.ends_with("agrees with the system on all words up to length 8\n"),
        "{out}"
    );
}

#[test]
fn bad_base_is_a_usage_error_naming_the_token() {
    let (err, code) = stderr_and_code(&["dbeta", "--base", "poly:1,x@(1,2)"]);
    assert_eq!(code, 2);
    assert!(err.contains("poly:1,x@(1,2)"), "{err}");
}

#[test]
fn bad_word_is_a_usage_error_naming_the_token() {
    let (err, code) = stderr_and_code(&["member", "--system", "fixtures/ncphi.json", "--word", "1a0"]);
    assert_eq!(code, 2);
    assert!(err.contains("1a0"), "{err}");
    let (err, code) = stderr_and_code(&["classify", "--system", "bertrand:1(("]);
    assert_eq!(code, 2);
    assert!(err.contains("1(("), "{err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(stderr_and_code(&["frobnicate"]).1, 2);
    assert_eq!(
        stderr_and_code(&["member", "--system", "no/such/file.json", "--word", "1"]).1,
        2
    );
}

#[test]
fn domain_errors_exit_one() {
    let (err, code) = stderr_and_code(&["counting-identity", "--base", "poly:1,-3,1@(2,3)"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a simple Parry number"), "{err}");
    // a base below 1 has no expansion
    let (_, code) = stderr_and_code(&["dbeta", "--base", "rat:1/2"]);
    assert_eq!(code, 1);
}

#[test]
fn dot_files_match_goldens() {
    let dir = std::env::temp_dir().join(format!("bertrand-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, base, variant) in [
        ("base3_canonical", "int:3", "canonical"),
        ("base3_noncanonical", "int:3", "noncanonical"),
        ("phi_canonical", "poly:1,-1,-1@(1,2)", "canonical"),
        ("phi_noncanonical", "poly:1,-1,-1@(1,2)", "noncanonical"),
    ] {
        for minimize in [false, true] {
            let path = dir.join(format!("{name}.dot"));
            let mut args = vec![
                "automaton",
                "--base",
                base,
                "--variant",
                variant,
                "--dot",
                path.to_str().unwrap(),
            ];
            if minimize {
                args.push("--minimize");
            }
            stdout(&args);
            let got = std::fs::read(&path).unwrap();
            let want = std::fs::read(root().join(format!("crates/cli/tests/golden/{name}.dot"))).unwrap();
            assert!(
                got == want,
                "{name} (minimize: {minimize}):\n{}",
                String::from_utf8_lossy(&got)
            );
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn build_save_round_trips() {
    let path = std::env::temp_dir().join(format!("bertrand-save-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    stdout(&[
        "build",
        "--base",
        "poly:1,-1,-1@(1,2)",
        "--variant",
        "noncanonical",
        "--save",
        p,
    ]);
    assert_eq!(
        stdout(&["rep", "--system", p, "--n", "20"]),
        stdout(&["rep", "--system", "fixtures/ncphi.json", "--n", "20"])
    );
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn analyze_writes_csv() {
    let path = std::env::temp_dir().join(format!("bertrand-csv-{}.csv", std::process::id()));
    stdout(&[
        "analyze",
        "--system",
        "fixtures/alternating.json",
        "--base",
        "poly:1,-1,-1@(1,2)",
        "--i-max",
        "12",
        "--ell",
        "4",
        "--csv",
        path.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "i,U,ratio,k,prefix");
    assert_eq!(lines.len(), 14);
    assert!(lines[5].starts_with("4,9,1.8,"), "{}", lines[5]);
    assert!(lines[5].ends_with(",0,1100"), "{}", lines[5]);
    std::fs::remove_file(&path).unwrap();
}

/// Runs every `$ bertrand ...` line of docs/REPRODUCE.md and compares stdout
/// with the lines that follow it.
#[test]
fn reproduce_document() {
    let doc = std::fs::read_to_string(root().join("docs/REPRODUCE.md")).unwrap();
    let mut cases: Vec<(String, String)> = Vec::new();
    let mut in_block = false;
    for line in doc.lines() {
        if line.starts_with("```") {
            in_block = !in_block;
            continue;
        }
        if !in_block {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ bertrand ") {
            cases.push((cmd.to_string(), String::new()));
        } else if let Some((_, expected)) = cases.last_mut() {
            expected.push_str(line);
            expected.push('\n');
        }
    }
    assert!(cases.len() >= 40, "only {} commands found", cases.len());
    for (cmd, expected) in &cases {
        let args = shlex::split(cmd).unwrap();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(&stdout(&args), expected, "bertrand {cmd}");
    }
}
