use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lrc_core::formats::{read_hypergraph_colouring, read_local_collection, read_order_family};
use lrc_core::pattern::catalogue;
use lrc_core::verification::{verify_local, verify_pq};

fn lrc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrc"))
        .current_dir(dir)
        .env_remove("LRC_SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_te_writes_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["construct", "--family", "te", "--n", "32", "--out", "te32.lrc"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("te32.lrc")).unwrap();
    assert!(text.starts_with("# manifest: te32.lrc.manifest.json\n"));
    let c = read_local_collection(&text).unwrap();
    assert_eq!((c.n(), c.k()), (32, 10));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("te32.lrc.manifest.json")).unwrap())
            .unwrap();
    let digest = manifest["outputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert_eq!(manifest["outcome"], "exit 0");
}

#[test]
fn construct_p3_with_injective_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["construct", "--family", "p3", "--n", "10", "--gamma", "injective", "--out", "p3.lrc"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verified: ok"));
}

#[test]
fn construct_kw_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["construct", "--family", "kw", "--n", "7", "--w", "3", "--out", "kw.kwc"]);
    assert_eq!(code(&o), 0);
    let o = lrc(dir.path(), &["verify", "kw", "--colouring", "kw.kwc"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lrc(dir.path(), &["construct", "--family", "bogus", "--n", "5"])), 2);
    assert_eq!(code(&lrc(dir.path(), &["construct", "--family", "te", "--n", "1"])), 2);
    assert_eq!(code(&lrc(dir.path(), &["verify", "local", "--pattern", "nope", "--colouring", "x"])), 2);
}

#[test]
fn io_parse_and_precondition_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = lrc(dir.path(), &["verify", "pq", "--colouring", "missing.hgc", "--p", "4", "--q", "3"]);
    assert_eq!(code(&missing), 4);

    fs::write(dir.path().join("bad.hgc"), "HGC1 4 3 2\n0 1 x 0\n").unwrap();
    let bad = lrc(dir.path(), &["verify", "pq", "--colouring", "bad.hgc", "--p", "4", "--q", "3"]);
    assert_eq!(code(&bad), 5);

    fs::write(dir.path().join("flat.hgc"), "HGC1 5 3 1\n0 0 0 0 0 0 0 0 0 0\n").unwrap();
    let pre = lrc(dir.path(), &["construct", "--family", "p3", "--n", "5", "--gamma", "flat.hgc"]);
    assert_eq!(code(&pre), 6);
    assert!(String::from_utf8_lossy(&pre.stderr).contains("CERT1 PoorPSet"));
}

#[test]
fn verify_local_exit_code_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lrc(dir.path(), &["construct", "--family", "te", "--n", "12", "--out", "te.lrc"])), 0);
    let c = read_local_collection(&fs::read_to_string(dir.path().join("te.lrc")).unwrap()).unwrap();
    for (name, h) in [("p3", catalogue::path(3)), ("te", catalogue::triangle_edge())] {
        let expect = if verify_local(&c, &h).unwrap().holds() { 0 } else { 1 };
        let o = lrc(dir.path(), &["verify", "local", "--pattern", name, "--colouring", "te.lrc"]);
        assert_eq!(code(&o), expect, "{name}");
    }
}

#[test]
fn refutation_certificate_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    lrc(dir.path(), &["construct", "--family", "te", "--n", "10", "--out", "te.lrc"]);
    let o = lrc(dir.path(), &["verify", "local", "--pattern", "p3", "--colouring", "te.lrc", "--cert-out", "p3.cert"]);
    assert_eq!(code(&o), 1);
    let o = lrc(dir.path(), &["verify", "cert", "--cert", "p3.cert", "--colouring", "te.lrc", "--pattern", "p3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // the same certificate does not indict a collection that is P3-local
    lrc(dir.path(), &["construct", "--family", "p3", "--n", "10", "--gamma", "injective", "--out", "p3.lrc"]);
    let o = lrc(dir.path(), &["verify", "cert", "--cert", "p3.cert", "--colouring", "p3.lrc", "--pattern", "p3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn egy_pipeline_produces_verified_lift() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lrc(dir.path(), &["gamma", "--n", "8", "--out", "c3.hgc"])), 0);
    assert_eq!(code(&lrc(dir.path(), &["--seed", "4", "egy", "random", "--n", "8", "--k", "5", "--out", "F.ord"])), 0);
    let o = lrc(dir.path(), &["egy", "lift", "--input", "c3.hgc", "--orders", "F.ord", "--out", "c4.hgc"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c4 = read_hypergraph_colouring(&fs::read_to_string(dir.path().join("c4.hgc")).unwrap()).unwrap();
    assert!(verify_pq(&c4, 5, 4).unwrap().holds());
    let manifest = fs::read_to_string(dir.path().join("c4.hgc.manifest.json")).unwrap();
    assert!(manifest.contains("c3.hgc") && manifest.contains("F.ord"));
    let o = lrc(dir.path(), &["verify", "scrambling", "--orders", "F.ord", "--k", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn search_f_prints_the_trivial_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["search", "f", "--n", "5", "--r", "2", "--p", "4", "--q", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn search_budget_and_guard_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["search", "g", "--n", "5", "--pattern", "p3", "--k", "2", "--node-cap", "10"]);
    assert_eq!(code(&o), 3);
    let o = lrc(dir.path(), &["search", "g", "--n", "300", "--pattern", "p3", "--k", "3"]);
    assert_eq!(code(&o), 3);
    let o = lrc(dir.path(), &["search", "g", "--n", "5", "--pattern", "k3", "--k", "5"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn attacks_report_by_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..7).map(|_| format!("{}\n", vec!["0"; 21].join(" "))).collect();
    fs::write(dir.path().join("flat.lrc"), format!("LRC1 7 1\n{rows}")).unwrap();
    let o = lrc(dir.path(), &["attack", "cycle", "--colouring", "flat.lrc", "--cert-out", "c.cert"]);
    assert_eq!(code(&o), 0);
    let o = lrc(dir.path(), &["verify", "cert", "--cert", "c.cert", "--colouring", "flat.lrc"]);
    assert_eq!(code(&o), 0);

    let rows: String = (0..12)
        .map(|_| format!("{}\n", (0..66).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    fs::write(dir.path().join("inj.lrc"), format!("LRC1 12 66\n{rows}")).unwrap();
    let o = lrc(dir.path(), &["attack", "nice", "--colouring", "inj.lrc", "--pattern", "k14"]);
    assert_eq!(code(&o), 1);
    let o = lrc(dir.path(), &["attack", "nice", "--colouring", "inj.lrc", "--pattern", "c4"]);
    assert_eq!(code(&o), 6);
}

#[test]
fn classify_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = lrc(dir.path(), &["classify", "table", "--max-edges", "4", "--machine"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 2 + 5 + 11);
    assert_eq!(text.lines().filter(|l| l.ends_with("\ttrue")).count(), 6);
    let o = lrc(dir.path(), &["classify", "pattern", "n=6; edges=0-1,1-2,2-3,4-5"]);
    assert!(stdout(&o).starts_with("unknown"));
}

#[test]
fn same_seed_gives_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.ord", "b.ord"] {
        let o = lrc(dir.path(), &["--seed", "11", "egy", "random", "--n", "9", "--k", "4", "--out", name]);
        assert_eq!(code(&o), 0);
    }
    let body = |f: &str| {
        let t = fs::read_to_string(dir.path().join(f)).unwrap();
        t.lines().skip(1).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(body("a.ord"), body("b.ord"));
    read_order_family(&fs::read_to_string(dir.path().join("a.ord")).unwrap()).unwrap();

    let env_run = Command::new(env!("CARGO_BIN_EXE_lrc"))
        .current_dir(dir.path())
        .env("LRC_SEED", "11")
        .args(["egy", "random", "--n", "9", "--k", "4"])
        .output()
        .unwrap();
    let printed = String::from_utf8_lossy(&env_run.stdout).into_owned();
    assert_eq!(printed.trim_end(), body("a.ord").trim_end());
}

#[test]
fn job_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    lrc(dir.path(), &["construct", "--family", "te", "--n", "12", "--out", "te.lrc"]);
    let mut outs = Vec::new();
    for jobs in ["1", "4"] {
        let o = lrc(dir.path(), &["--jobs", jobs, "verify", "local", "--pattern", "c4", "--colouring", "te.lrc"]);
        outs.push((code(&o), stdout(&o)));
    }
    assert_eq!(outs[0], outs[1]);
}
