use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_liftedcodes"));
    cmd.env_remove("LIFTEDCODES_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn hamming_matrices() {
    let o = run(&["hamming", "-q", "2", "-m", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2 7 3"));
    let cols: Vec<Vec<&str>> = lines.map(|l| l.split(' ').collect()).collect();
    assert_eq!(cols.len(), 3);
    // The seven columns are the seven nonzero binary triples.
    let mut seen: Vec<String> = (0..7)
        .map(|j| cols.iter().map(|r| r[j]).collect())
        .collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 7);
    assert!(!seen.contains(&"000".to_string()));

    let o = run(&["hamming", "-q", "2", "-m", "1"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["rows"], serde_json::json!([[1]]));

    let o = run(&["hamming", "-q", "4", "-m", "2"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["n"], 5);
    assert_eq!(json["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(
        run(&["hamming", "-q", "6", "-m", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "-q", "2", "-m", "0", "-r", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "-q", "2", "-m", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["paper-suite", "--only", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "-q", "2", "-m", "2", "-r", "2", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "-q", "2", "-m", "2", "-r", "2", "--caps", "bogus=3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_worked_example() {
    let o = run(&["verify", "-q", "2", "-m", "2", "-r", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["match"], true);
    assert_eq!(json["measured"]["b"], serde_json::json!([45, 28]));
    assert_eq!(json["measured"]["c"], serde_json::json!([1, 6]));
    assert_eq!(json["measured"]["mu"][2], 210);
    assert!(json["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_other_instances() {
    let o = run(&["verify", "-q", "2", "-m", "3", "-r", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("claim,status,detail\n"));
    assert!(csv.contains("closed-form,PASS,\"closed form (21, 12; 1, 6)\""));

    let o = run(&["verify", "-q", "2", "-m", "2", "-r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["rho"], 1);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "-q", "3", "-m", "2", "-r", "2", "--seed", "17"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn caps_exit_3() {
    let o = run(&[
        "verify", "-q", "2", "-m", "3", "-r", "2", "--caps", "coset=10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = bin()
        .args(["verify", "-q", "2", "-m", "3", "-r", "2"])
        .env("LIFTEDCODES_CAP", "codeword=16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    // The command line wins over the environment.
    let o = bin()
        .args([
            "verify",
            "-q",
            "2",
            "-m",
            "2",
            "-r",
            "2",
            "--caps",
            "codeword=1000",
        ])
        .env("LIFTEDCODES_CAP", "codeword=1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn refute_reports() {
    let o = run(&["refute", &data("shortened_hamming_6_3.txt"), "-r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["regularity"]["verdict"], "irregular");
    let w = &json["witness"];
    assert_ne!(w["distribution_x"], w["distribution_x_prime"]);

    let o = run(&[
        "refute",
        &data("code_5_2_3.txt"),
        "-r",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("not completely regular,2,"));
}

#[test]
fn refute_rejects_bad_hypotheses() {
    let dir = std::env::temp_dir().join(format!("liftedcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let hamming = dir.join("hamming.txt");
    std::fs::write(
        &hamming,
        "2 7 3\n1 0 0 0 1 1 1\n0 1 0 1 1 0 1\n0 0 1 1 0 1 1\n",
    )
    .unwrap();
    let o = run(&["refute", hamming.to_str().unwrap(), "-r", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis violated"));

    let d2 = dir.join("d2.txt");
    std::fs::write(&d2, "2 4 2\n1 1 0 0\n0 0 1 1\n").unwrap();
    let o = run(&["refute", d2.to_str().unwrap(), "-r", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("minimum distance 2"));

    let o = run(&[
        "refute",
        &data("shortened_hamming_6_3.txt"),
        "-r",
        "2",
        "--caps",
        "coset=5",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&[
        "refute",
        dir.join("missing.txt").to_str().unwrap(),
        "-r",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn suite_subset_and_out_file() {
    let out = std::env::temp_dir().join(format!("liftedcodes-suite-{}.csv", std::process::id()));
    let o = run(&[
        "paper-suite",
        "--only",
        "rank-census,symmetry",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "id,criterion,pass,detail,runtime_ms");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("rank-census,") && lines[2].starts_with("symmetry,"));
}

#[test]
fn suite_full_run() {
    let o = run(&["paper-suite", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("12/12 criteria passed"));
}
