use std::path::Path;
use std::process::{Command, Output};

fn regpow(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regpow")).args(args).env("REGPOW_CACHE_DIR", cache).output().expect("binary runs")
}

const EX5: &str = "field = Q\nvars = x, y\ngen = x^5\ngen = x^4*y\ngen = x*y^4\ngen = y^5\nqmax = 5\n";

#[test]
fn powers_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("ex5.job");
    std::fs::write(&job, EX5).unwrap();
    let out = regpow(&["powers", "-i", job.to_str().unwrap(), "--qmax", "5", "--format", "csv"], &dir.path().join("c"));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let a: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(a, ["6", "10", "14", "19", "24"]);
}

#[test]
fn missing_job_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpow(&["powers", "-i", "definitely-missing.job"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_jobs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for (k, body) in
        ["field = Q\nvars = x, y\ngen = x^2\ngen = y^3\n", "field = Q\nvars = x\ngen = x +\n", "field = Q\n"]
            .iter()
            .enumerate()
    {
        let job = dir.path().join(format!("bad{k}.job"));
        std::fs::write(&job, body).unwrap();
        let out = regpow(&["bounds", "-i", job.to_str().unwrap()], dir.path());
        assert_eq!(out.status.code(), Some(1), "{body}");
    }
}

#[test]
fn budget_exhaustion_exits_2_with_partial_table() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("b.job");
    std::fs::write(&job, format!("{EX5}budget_degree = 12\n")).unwrap();
    let out = regpow(&["powers", "-i", job.to_str().unwrap(), "--format", "csv", "--no-cache"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn corpus_is_deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cold = regpow(&["corpus"], &cache);
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stderr));
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = regpow(&["corpus"], &cache);
    let uncached = regpow(&["corpus", "--no-cache", "--threads", "1"], &cache);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn corrupt_cache_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let clean = regpow(&["corpus"], &cache);
    for e in std::fs::read_dir(&cache).unwrap() {
        std::fs::write(e.unwrap().path(), "not a cache entry\n").unwrap();
    }
    let again = regpow(&["corpus"], &cache);
    assert!(again.status.success());
    assert_eq!(clean.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("ignoring"));
}

#[test]
fn reports_are_written_to_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("ex5.job");
    std::fs::write(&job, EX5).unwrap();
    let out_dir = dir.path().join("out");
    for cmd in ["rees", "strand", "cohomology", "bounds", "verify"] {
        let out = regpow(
            &[cmd, "-i", job.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--format", "both"],
            &dir.path().join("c"),
        );
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out_dir.join(format!("{cmd}.json")).exists());
        assert!(out_dir.join(format!("{cmd}.csv")).exists());
    }
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("verify.json")).unwrap()).unwrap();
    for key in ["meta", "power_table", "fit", "certificates", "thresholds", "checks"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["thresholds"]["threshold_1"], 2);
    let rees: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("rees.json")).unwrap()).unwrap();
    assert!(!rees["fiber_ideal"].as_array().unwrap().is_empty());
}

#[test]
fn refused_route_is_reported_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("ex5.job");
    std::fs::write(&job, EX5).unwrap();
    let out = regpow(
        &["cohomology", "-i", job.to_str().unwrap(), "--route", "phi", "--p", "-1..0", "--q", "1..1"],
        dir.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert!(cells[0]["h"].is_null() && cells[0]["error"].is_string());
    assert_eq!(cells[1]["h"][0], 6);
}
