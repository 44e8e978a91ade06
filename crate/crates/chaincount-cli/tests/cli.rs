//! End-to-end tests against the compiled binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chaincount"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(text) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("binary spawns");
            child
                .stdin
                .as_mut()
                .expect("stdin is piped")
                .write_all(text.as_bytes())
                .expect("stdin accepts input");
            child.wait_with_output().expect("binary exits")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("binary exits")
        }
    }
}

fn stdout_of(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

const PERM_2143: &str = "perm 4\n2 1 4 3\n";
const CHAIN3: &str = "poset 3 2\na 1 2\na 2 3\n";
const PATH4: &str = "poset 4 3\na 1 3\na 1 4\na 2 4\n";

#[test]
fn count_both_targets_on_a_permutation() {
    let out = stdout_of(&["count", "--target", "both", "-"], Some(PERM_2143));
    assert_eq!(out, "independent_sets 9\ncliques 7\n");
}

#[test]
fn count_maximal_on_a_chain() {
    let out = stdout_of(&["count", "--variant", "maximal", "-"], Some(CHAIN3));
    assert_eq!(out, "1\n");
}

#[test]
fn profile_lines_are_k_count_pairs() {
    let out = stdout_of(&["count", "--variant", "profile", "-"], Some(PATH4));
    assert_eq!(out, "0 1\n1 4\n2 3\n3 0\n4 0\n");
    // The dedicated subcommand is a shorthand for the same thing.
    assert_eq!(stdout_of(&["profile", "-"], Some(PATH4)), out);
}

#[test]
fn by_size_prints_one_coefficient() {
    let out = stdout_of(
        &["count", "--variant", "by-size", "--k", "2", "-"],
        Some(PATH4),
    );
    assert_eq!(out, "3\n");
}

#[test]
fn by_size_requires_k_in_range() {
    let out = run(
        &["count", "--variant", "by-size", "--k", "9", "-"],
        Some(PATH4),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["count", "--variant", "by-size", "-"], Some(PATH4));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polynomial_at_integer_and_rational_points() {
    let out = stdout_of(
        &["count", "--variant", "polynomial", "--x", "2", "-"],
        Some(PATH4),
    );
    assert_eq!(out, "21\n");
    // 1 + 4/2 + 3/4 = 15/4
    let out = stdout_of(
        &["count", "--variant", "polynomial", "--x", "1/2", "-"],
        Some(PATH4),
    );
    assert_eq!(out, "15/4\n");
    let out = stdout_of(
        &["count", "--variant", "polynomial", "--x", "-1", "-"],
        Some(PATH4),
    );
    assert_eq!(out, "0\n");
}

#[test]
fn alpha_reports_size_and_multiplicity() {
    let out = stdout_of(&["count", "--variant", "alpha", "-"], Some(PATH4));
    assert_eq!(out, "alpha 2\nmaximum_count 3\n");
}

#[test]
fn exclude_empty_only_touches_all_set_totals() {
    let all = stdout_of(&["count", "--exclude-empty", "-"], Some(CHAIN3));
    assert_eq!(all, "7\n");
    let maximal = stdout_of(
        &["count", "--variant", "maximal", "--exclude-empty", "-"],
        Some(CHAIN3),
    );
    assert_eq!(maximal, "1\n");
    let profile = stdout_of(&["profile", "--exclude-empty", "-"], Some(CHAIN3));
    assert_eq!(profile, "0 0\n1 3\n2 3\n3 1\n");
}

#[test]
fn modular_counting() {
    // 10-element chain: 2^10 = 1024 ≡ 54 (mod 97).
    let mut file = String::from("poset 10 9\n");
    for i in 1..10 {
        file.push_str(&format!("a {} {}\n", i, i + 1));
    }
    let out = stdout_of(&["count", "--mod", "97", "-"], Some(&file));
    assert_eq!(out, "54\n");
    let rejected = run(&["count", "--mod", "4", "-"], Some(CHAIN3));
    assert_eq!(rejected.status.code(), Some(2));
}

#[test]
fn counting_a_bare_graph_is_unsupported() {
    let out = run(&["count", "-"], Some("graph 2 1\ne 1 2\n"));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(stderr.contains("unsupported combination"), "{stderr}");
}

#[test]
fn format_flag_must_match_the_header() {
    let out = run(&["count", "--format", "perm", "-"], Some(CHAIN3));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let out = run(&["count", "-"], Some("poset 2 1\na 1 5\n"));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn generated_instances_reparse_identically() {
    for format in ["poset", "perm", "graph"] {
        let args = [
            "generate",
            "--format",
            format,
            "--n",
            "9",
            "--density",
            "0.4",
            "--seed",
            "11",
        ];
        let first = stdout_of(&args, None);
        assert_eq!(
            first,
            stdout_of(&args, None),
            "{format} generation is deterministic"
        );
        if format != "graph" {
            // Counting the emitted file twice also exercises the parser.
            let a = stdout_of(&["count", "-"], Some(&first));
            let b = stdout_of(&["count", "-"], Some(&first));
            assert_eq!(a, b);
        }
    }
}

#[test]
fn verify_reports_pass_lines_and_exits_zero() {
    let out = run(
        &["verify", "--n", "8", "--density", "0.4", "--seed", "5"],
        None,
    );
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(stdout.contains("PASS independent_sets"), "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");

    let out = run(&["verify", "-"], Some(PERM_2143));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(stdout.contains("PASS is_side.independent_sets"), "{stdout}");
    assert!(
        stdout.contains("PASS clique_side.independent_sets"),
        "{stdout}"
    );
}

#[test]
fn verify_accepts_bare_graphs() {
    let out = run(&["verify", "-"], Some("graph 4 3\ne 1 2\ne 2 3\ne 3 4\n"));
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(stdout.contains("PASS totals_match_size_sums"), "{stdout}");
}

#[test]
fn verify_rejects_instances_beyond_the_oracle_cap() {
    let big = stdout_of(
        &[
            "generate",
            "--format",
            "poset",
            "--n",
            "30",
            "--density",
            "0.2",
            "--seed",
            "1",
        ],
        None,
    );
    let out = run(&["verify", "-"], Some(&big));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn closed_stdout_ends_the_run_quietly() {
    use std::io::Read;
    // Enough output to overflow the pipe buffer, so the writer must hit
    // the closed read end.
    let mut child = Command::new(env!("CARGO_BIN_EXE_chaincount"))
        .args([
            "generate",
            "--format",
            "graph",
            "--n",
            "400",
            "--density",
            "0.1",
            "--seed",
            "2",
        ])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let mut first = [0u8; 16];
    stdout.read_exact(&mut first).expect("some output arrives");
    drop(stdout); // close the read end mid-stream
    let status = child.wait().expect("binary exits");
    assert!(status.success(), "broken pipe must not panic the binary");
}

#[test]
fn bench_prints_one_line_per_instance() {
    let out = stdout_of(&["bench", "--n", "800", "--seed", "3"], None);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 12);
    for line in lines {
        assert!(
            line.contains("mstar=") && line.contains("ms_per_count="),
            "{line}"
        );
    }
}
