use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn dcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcc"))
        .args(args)
        .env_remove("DCC_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a results CSV as header-keyed maps.
fn rows(csv: &str) -> Vec<std::collections::HashMap<String, String>> {
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    let header: Vec<&str> = body[0].split(',').collect();
    body[1..]
        .iter()
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(String::from)).collect())
        .collect()
}

#[test]
fn build_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (t, stage, n) in [(1, "final", 15), (1, "doubled", 15), (2, "doubled", 53), (2, "gadget", 59), (2, "final", 59)] {
        let file = dir.path().join(format!("t{t}-{stage}.json"));
        let out = dcc(&["build", "--t", &t.to_string(), "--stage", stage, "--out", path(&file)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!(json["qubit_counts"]["n"], n);
        assert_eq!(json["meta"]["version"], env!("CARGO_PKG_VERSION"));
        assert!(json["meta"]["config_hash"].as_str().unwrap().len() == 64);
        let out = dcc(&["verify", path(&file), "--distance-budget", "3"]);
        assert_eq!(code(&out), 0, "t={t} {stage}: {}", stdout(&out));
    }
}

#[test]
fn level_one_file_reports_cleanable_cosets() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t1.json");
    assert_eq!(code(&dcc(&["build", "--t", "1", "--out", path(&file)])), 0);
    let out = dcc(&["verify", path(&file)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("cleanable cosets = 996"), "{text}");
    assert!(text.contains("d = 3"), "{text}");
}

#[test]
fn bounded_distance_on_level_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t2.json");
    assert_eq!(code(&dcc(&["build", "--t", "2", "--out", path(&file)])), 0);
    let out = dcc(&["verify", path(&file), "--distance-budget", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("d > 3, witness <= 5"), "{}", stdout(&out));
}

#[test]
fn tampered_file_fails_the_inclusion_chain() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t1.json");
    assert_eq!(code(&dcc(&["build", "--t", "1", "--out", path(&file)])), 0);
    let mut json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    let row = json["codes"][0]["A"][0].as_str().unwrap().to_string();
    let flipped = u64::from_str_radix(&row, 16).unwrap() ^ 1;
    json["codes"][0]["A"][0] = format!("{flipped:0width$x}", width = row.len()).into();
    fs::write(&file, serde_json::to_string(&json).unwrap()).unwrap();
    let out = dcc(&["verify", path(&file)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("FAIL  inclusion chain"), "{}", stdout(&out));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    fs::write(&file, "{").unwrap();
    assert_eq!(code(&dcc(&["verify", path(&file)])), 4);
    assert_eq!(code(&dcc(&["build", "--t", "5"])), 4);
    assert_eq!(code(&dcc(&["build", "--t", "1", "--stage", "nope"])), 4);
    assert_eq!(code(&dcc(&["simulate", "--p", "1.5", "--trials", "5"])), 4);
    assert_eq!(code(&dcc(&["simulate", "--p", "0.01", "--bogus"])), 4);
    assert_eq!(code(&dcc(&["sweep", "--trials", "5"])), 4);
    assert_eq!(code(&dcc(&["sweep", "--p-list", "", "--trials", "5"])), 4);
    assert_eq!(code(&dcc(&["frobnicate"])), 4);
}

#[test]
fn noiseless_simulation_is_censored() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p0.csv");
    let out = dcc(&["simulate", "--p", "0", "--trials", "5", "--max-gates", "200", "--out", path(&file)]);
    assert_eq!(code(&out), 0);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("seed 0") && err.contains("\"trials\":5"), "{err}");
    let csv = fs::read_to_string(&file).unwrap();
    assert!(csv.starts_with("# tool: dcc "));
    assert!(csv.contains("# seed: 0") && csv.contains("# config_hash: "));
    let r = &rows(&csv)[0];
    assert_eq!(r["n_censored"], "5");
    assert_eq!(r["p_L"], "");
    assert_eq!(r["p_L_upper_bound"], "0.005");
    for col in ["p", "trials", "mean_gates", "stderr", "n_logical_failures", "n_cleanability_failures", "mean_retries", "wall_seconds"] {
        assert!(r.contains_key(col), "{col}");
    }
}

#[test]
fn simulation_is_deterministic_across_threads_and_seed_sources() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str], env_seed: Option<&str>| {
        let file = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_dcc"));
        cmd.args(["simulate", "--p", "0.02", "--trials", "6", "--out", path(&file)]).args(extra);
        match env_seed {
            Some(s) => cmd.env("DCC_SEED", s),
            None => cmd.env_remove("DCC_SEED"),
        };
        assert!(cmd.stderr(Stdio::null()).status().unwrap().success());
        let r = rows(&fs::read_to_string(&file).unwrap()).remove(0);
        (r["mean_gates"].clone(), r["mean_retries"].clone(), r["seed"].clone())
    };
    let a = run("a.csv", &["--seed", "11", "--threads", "1"], None);
    let b = run("b.csv", &["--seed", "11", "--threads", "3"], None);
    let c = run("c.csv", &[], Some("11"));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.2, "11");
}

#[test]
fn sweep_writes_one_row_per_rate() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let pairs = dir.path().join("pairs.txt");
    let out = dcc(&[
        "sweep", "--p-list", "0.03,0.02", "--trials", "4", "--decoder", "exact", "--out", path(&csv), "--pairs", path(&pairs),
    ]);
    assert_eq!(code(&out), 0);
    let r = rows(&fs::read_to_string(&csv).unwrap());
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["p"], "0.03");
    assert_eq!(r[1]["decoder"], "exact");
    let text = fs::read_to_string(&pairs).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 2);
    assert!(data[1].starts_with("0.02 "));

    // A single-point sweep matches simulate.
    let single = dir.path().join("single.csv");
    let sim = dir.path().join("sim.csv");
    assert_eq!(code(&dcc(&["sweep", "--p-list", "0.02", "--trials", "4", "--out", path(&single)])), 0);
    assert_eq!(code(&dcc(&["simulate", "--p", "0.02", "--trials", "4", "--out", path(&sim)])), 0);
    let (a, b) = (rows(&fs::read_to_string(&single).unwrap()), rows(&fs::read_to_string(&sim).unwrap()));
    assert_eq!(a[0]["mean_gates"], b[0]["mean_gates"]);
}

#[test]
fn decode_trace_emits_one_line_per_event() {
    let events = [
        r#"{"type":"deform","into":"c"}"#,
        r#"{"type":"memory","round":"c","p":0.01}"#,
        r#"{"type":"syndrome","round":"c","bits":0,"q":0.01}"#,
        r#"{"type":"clifford","index":4}"#,
        r#"{"type":"end_round"}"#,
        r#"{"type":"deform","into":"t"}"#,
        r#"{"type":"memory","round":"t","p":0.01}"#,
        r#"{"type":"syndrome","round":"t","bits":0,"q":0.01}"#,
        r#"{"type":"recover"}"#,
        r#"{"type":"T"}"#,
    ];
    let mut outputs = Vec::new();
    for decoder in ["exact", "sparse"] {
        let mut child = Command::new(env!("CARGO_BIN_EXE_dcc"))
            .args(["decode-trace", "-", "--decoder", decoder, "--epsilon", "0"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(events.join("\n").as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), events.len());
        assert_eq!(lines[8]["event"], "recover");
        assert_eq!(lines[8]["recovery"], 0);
        assert!(lines.iter().all(|l| l["argmax"] == 0));
        outputs.push(lines);
    }
    // The sparse kernel differs from the dense one, so only the argmax path is shared.
    assert_eq!(
        outputs[0].iter().map(|l| l["argmax"].clone()).collect::<Vec<_>>(),
        outputs[1].iter().map(|l| l["argmax"].clone()).collect::<Vec<_>>()
    );
}

#[test]
fn decode_trace_rejects_bad_events() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.jsonl");
    fs::write(&file, "{\"type\":\"clifford\",\"index\":30}\n").unwrap();
    assert_eq!(code(&dcc(&["decode-trace", path(&file)])), 4);
    fs::write(&file, "{\"type\":\"teleport\"}\n").unwrap();
    assert_eq!(code(&dcc(&["decode-trace", path(&file)])), 4);
}
