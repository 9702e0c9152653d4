use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn freelike(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_freelike"))
        .args(args)
        .output()
        .expect("spawn freelike");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &str) -> serde_json::Value {
    serde_json::from_str(out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"))
}

#[test]
fn family_gen_then_check_sc_succeeds() {
    let path = tmp("fam1.txt");
    let p = path.to_str().unwrap();
    let (status, _, err) = freelike(&["family-gen", "--j", "1", "--out", p]);
    assert_eq!(status, 0, "{err}");
    let (status, out, _) = freelike(&["--format", "json", "check-sc", "--file", p]);
    assert_eq!(status, 0);
    let v = json(&out);
    assert_eq!(v["config"]["subcommand"], "check-sc");
    assert_eq!(v["report"]["all_ok"], true);
    assert_eq!(v["report"]["lambda"], "1/6");
}

#[test]
fn failed_verification_exits_one() {
    let path = tmp("bad.txt");
    fs::write(&path, "rank: 2\nabab\n").unwrap();
    let (status, out, _) = freelike(&["--format", "json", "check-sc", "--file", path.to_str().unwrap()]);
    assert_eq!(status, 1);
    assert_eq!(json(&out)["report"]["all_ok"], false);

    let (status, out, _) = freelike(&["finite-verify", "--group", "Q8", "--word", "x1^2 x2", "--k", "2"]);
    assert_eq!(status, 1);
    assert!(out.starts_with("almost-identity: no"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(freelike(&["percolate", "--graph", "/nonexistent/graph.adj", "--p", "0.5"]).0, 2);
    assert_eq!(freelike(&["girth"]).0, 2);
    assert_eq!(freelike(&["no-such-command"]).0, 2);
    let (status, _, err) = freelike(&["wp", "--word", "ab"]);
    assert_eq!(status, 2, "{err}");
}

#[test]
fn finite_verify_reports_counterexample() {
    let (status, out, _) = freelike(&["finite-verify", "--group", "Q8", "--word", "x1^2 x2^2", "--k", "2"]);
    assert_eq!(status, 0);
    assert_eq!(out, "almost-identity: yes, identity: no (counterexample: 1,i)\n");
}

#[test]
fn witness_and_almost_id() {
    let (status, out, _) = freelike(&["--format", "json", "witness", "--n", "5", "--tuple", "a,b"]);
    assert_eq!(status, 0);
    let v = json(&out);
    assert_eq!(v["report"]["status"], "witness");
    assert_eq!(v["report"]["word"], "a^5");

    let (status, out, _) = freelike(&["almost-id", "--k", "2", "--max-word-len", "1"]);
    assert_eq!(status, 0);
    assert!(!out.trim().is_empty());
}

#[test]
fn exported_ball_feeds_percolation() {
    let path = tmp("tree3.adj");
    let p = path.to_str().unwrap();
    let (status, _, err) = freelike(&["ball", "--radius", "3", "--export", "adjacency", "--out", p]);
    assert_eq!(status, 0, "{err}");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("vertices: 53\nroot: 0\n"), "{text}");

    let (status, out, _) = freelike(&["--format", "json", "percolate", "--graph", p, "--p", "1", "--trials", "50"]);
    assert_eq!(status, 0);
    let v = json(&out);
    assert_eq!(v["report"]["crossings"], 50);
    assert_eq!(v["config"]["trials"], 50);
    assert!(v["config"].get("workers").is_none());

    let (status, out, _) = freelike(&["--format", "json", "pc-estimate", "--graph", p, "--trials", "200"]);
    assert_eq!(status, 0);
    let phat = json(&out)["report"]["p_hat"].as_f64().unwrap();
    assert!((0.0..1.0).contains(&phat));
}

#[test]
fn dot_export_and_text_summary() {
    let (status, out, _) = freelike(&["ball", "--radius", "1", "--export", "dot"]);
    assert_eq!(status, 0);
    assert!(out.starts_with("digraph cayley {"), "{out}");

    let (status, out, _) = freelike(&["--format", "text", "ball", "--radius", "2"]);
    assert_eq!(status, 0);
    assert!(out.contains("17"), "{out}");
}

#[test]
fn word_problem_in_presented_group() {
    let path = tmp("toy.txt");
    fs::write(&path, "rank: 2\naaabaaBabABBB\n").unwrap();
    let p = path.to_str().unwrap();
    let (status, out, _) = freelike(&["--format", "json", "wp", "--file", p, "--word", "BaaabaaBabABB"]);
    assert_eq!(status, 0);
    assert_eq!(json(&out)["report"]["trivial"], true);
    let (_, out, _) = freelike(&["--format", "json", "wp", "--file", p, "--word", "ab"]);
    assert_eq!(json(&out)["report"]["trivial"], false);

    let (status, out, _) = freelike(&["--format", "json", "wp", "--file", p, "--word", "ab", "--equal-to", "ba"]);
    assert_eq!(status, 0);
    let v = json(&out);
    assert_eq!(v["report"]["tested"], "abAB");
    assert_eq!(v["report"]["trivial"], false);
}
