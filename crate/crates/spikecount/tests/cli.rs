//! End-to-end tests of the installed binary: documents written by `build`
//! drive `run` and `export-dot` exactly like the in-process library, and the
//! advertised exit codes hold.

use std::process::{Command, Output};

use spikecount::constructions::build_fcsc;
use spikecount::document::write_trace;
use spikecount::engine::{run, InputSequence};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spikecount"))
}

fn run_ok(args: &[&str]) -> Output {
    let output = bin().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "{args:?} failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("not killed by a signal")
}

#[test]
fn build_then_run_matches_the_library_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let net_path = dir.path().join("fcsc8.json");
    let trace_path = dir.path().join("trace.jsonl");

    run_ok(&["build", "fcsc", "-T", "8", "-o", net_path.to_str().unwrap()]);
    let output = run_ok(&[
        "run",
        net_path.to_str().unwrap(),
        "--input",
        "0111100",
        "--trace-out",
        trace_path.to_str().unwrap(),
    ]);

    // The decoded answer is on stdout.
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("count=4"), "{stdout}");
    assert!(stdout.contains("input=0111100 horizon=9"), "{stdout}");

    // The trace file equals an in-process run of the same construction.
    let (net, _) = build_fcsc(8).unwrap();
    let input = InputSequence::parse("0111100").unwrap();
    let trace = run(&net, &input, 9).unwrap();
    let mut expected = Vec::new();
    write_trace(&net, &trace, &mut expected).unwrap();
    let written = std::fs::read(&trace_path).unwrap();
    assert_eq!(written, expected);
}

#[test]
fn built_documents_decode_their_own_kind() {
    let dir = tempfile::tempdir().unwrap();

    let tsc = dir.path().join("tsc.json");
    run_ok(&["build", "tsc", "-T", "6", "-o", tsc.to_str().unwrap()]);
    let output = run_ok(&["run", tsc.to_str().unwrap(), "--input", "101101"]);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("count=4"), "{stdout}");

    let unary = dir.path().join("unary.json");
    run_ok(&["build", "unary-fixture", "-T", "5", "-o", unary.to_str().unwrap()]);
    let output = run_ok(&["run", unary.to_str().unwrap(), "--input", "11111", "--horizon", "5"]);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("count=5"), "{stdout}");

    let mod4 = dir.path().join("mod4.json");
    run_ok(&["build", "mod4", "-o", mod4.to_str().unwrap()]);
    let output = run_ok(&["run", mod4.to_str().unwrap(), "--input", "111"]);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("residue=3"), "{stdout}");
}

#[test]
fn dot_export_is_reproducible_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let net_path = dir.path().join("mod4.json");
    run_ok(&["build", "mod4", "-o", net_path.to_str().unwrap()]);

    let first = run_ok(&["export-dot", net_path.to_str().unwrap()]);
    let second = run_ok(&["export-dot", net_path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);

    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("digraph network {"), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 17);
}

#[test]
fn verify_suites_pass_on_the_stock_networks() {
    for suite in ["fcsc", "tsc", "firing-rules", "clean-state", "time0"] {
        let output = run_ok(&["verify", suite, "-T", "4"]);
        let stdout = String::from_utf8(output.stdout).unwrap();
        assert!(stdout.contains("[PASS]"), "{suite}: {stdout}");
        assert!(!stdout.contains("[FAIL]"), "{suite}: {stdout}");
    }
}

#[test]
fn refused_and_malformed_invocations_exit_with_code_2() {
    // An exhaustive sweep beyond the cost guard is refused, with advice.
    let output = bin().args(["verify", "fcsc", "-T", "20"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("above the configured bound"), "{stderr}");

    // ...and raising the guard un-refuses it (T=13 keeps the test quick).
    let output = bin().args(["verify", "clean-state", "-T", "13", "--max-t", "13"]).output().unwrap();
    assert_eq!(exit_code(&output), 0);

    // Missing horizon.
    let output = bin().args(["build", "tsc"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("-T"), "{stderr}");

    // Horizon too small for any input.
    let output = bin().args(["build", "tsc", "-T", "0"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);

    // Unknown subcommand / flag handled by the parser.
    let output = bin().args(["frob"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn bad_inputs_and_documents_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let net_path = dir.path().join("fcsc.json");
    run_ok(&["build", "fcsc", "-T", "4", "-o", net_path.to_str().unwrap()]);

    // Input trains must be 0/1 strings.
    let output =
        bin().args(["run", net_path.to_str().unwrap(), "--input", "012"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("invalid input bit"), "{stderr}");

    // Documents from a future format version are refused.
    let text = std::fs::read_to_string(&net_path).unwrap();
    let bumped = text.replace("\"version\": 1", "\"version\": 99");
    assert_ne!(text, bumped);
    let bad_path = dir.path().join("future.json");
    std::fs::write(&bad_path, bumped).unwrap();
    let output =
        bin().args(["run", bad_path.to_str().unwrap(), "--input", "01"]).output().unwrap();
    assert_eq!(exit_code(&output), 2);

    // Nonexistent files name the path in the error.
    let output = bin()
        .args(["run", dir.path().join("missing.json").to_str().unwrap(), "--input", "01"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("missing.json"), "{stderr}");
}

#[test]
fn a_closed_stdout_pipe_is_not_an_error() {
    // `spikecount … | head -1` closes our stdout early; the process must end
    // quietly instead of panicking on the broken pipe. A 100-digit counter
    // document overflows any OS pipe buffer, forcing the EPIPE path.
    let mut child = bin()
        .args(["build", "fcsc-counter", "-n", "100"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let status = child.wait().expect("child exits");
    assert_eq!(status.code(), Some(0), "a gone reader is not a failure");
    let mut stderr = String::new();
    use std::io::Read as _;
    child.stderr.take().unwrap().read_to_string(&mut stderr).unwrap();
    assert!(stderr.is_empty(), "no panic chatter either: {stderr}");
}

#[test]
fn spike_trains_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let net_path = dir.path().join("fcsc.json");
    run_ok(&["build", "fcsc", "-T", "8", "-o", net_path.to_str().unwrap()]);

    let train_path = dir.path().join("train.txt");
    std::fs::write(&train_path, "0111\n100\n").unwrap();
    let output = run_ok(&[
        "run",
        net_path.to_str().unwrap(),
        "--input-file",
        train_path.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("input=0111100"), "{stdout}");
    assert!(stdout.contains("count=4"), "{stdout}");

    // Exactly one input source must be given.
    let output = bin()
        .args([
            "run",
            net_path.to_str().unwrap(),
            "--input",
            "01",
            "--input-file",
            train_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
}
