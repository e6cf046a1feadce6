use std::fs;
use std::path::Path;

use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::TempDir;

fn hzlag(cache: &Path) -> Command {
    let mut c = Command::cargo_bin("hzlag").unwrap();
    c.env("HZLAG_CACHE_DIR", cache);
    c
}

fn stdout(cmd: &mut Command) -> Vec<u8> {
    cmd.assert().success().get_output().stdout.clone()
}

#[test]
fn oracle_square_and_connected() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path()).args(["oracle", "--mu", "4"]).assert().success().stdout("14*N + 10*N^-1\n");
    hzlag(tmp.path()).args(["oracle", "--mu", "1,1,1", "--connected"]).assert().success().stdout("2*N^-1\n");
    hzlag(tmp.path())
        .args(["oracle", "--mu", "8", "--gaussian"])
        .assert()
        .success()
        .stdout("14*N + 70*N^-1 + 21*N^-3\n");
}

#[test]
fn oracle_rectangular_at_one() {
    let tmp = TempDir::new().unwrap();
    let out = stdout(hzlag(tmp.path()).args(["oracle", "--mu", "2", "--rows", "N", "--cols", "N+1"]));
    assert_eq!(String::from_utf8(out).unwrap(), "2*N + 3 + N^-1\n");
    hzlag(tmp.path()).args(["eval-fab", "--n", "1", "--k", "1", "--at", "1/2"]).assert().success().stdout("4\n");
}

#[test]
fn oracle_over_limit_is_usage_error() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path()).args(["oracle", "--mu", "9"]).assert().code(2);
    hzlag(tmp.path()).args(["oracle", "--mu", "2,0"]).assert().code(2);
}

#[test]
fn gen_laguerre_csv() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path())
        .args(["gen", "laguerre", "--gmax", "3", "--nmax", "10", "--format", "csv"])
        .assert()
        .success()
        .stdout(predicate::str::starts_with("g,n,value\n"))
        .stdout(predicate::str::contains("\n1,2,10\n"));
}

#[test]
fn gen_vk_genus_one() {
    let tmp = TempDir::new().unwrap();
    let out = stdout(hzlag(tmp.path()).args(["gen", "vk", "--gmax", "1", "--no-cache"]));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["schema"], "hzlag-table/1");
    let g1: Vec<&str> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["g"] == 1)
        .map(|e| e["value"].as_str().unwrap())
        .collect();
    assert_eq!(g1, ["1/256", "-1/64", "3/128", "-1/64", "1/256"]);
}

#[test]
fn gen_usage_errors() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path())
        .args(["gen", "gauss", "--gmax", "0"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("gmax >= 1"));
    hzlag(tmp.path()).args(["gen", "laguerre", "--gmax", "401"]).assert().code(2);
    hzlag(tmp.path()).args(["gen", "legendre"]).assert().code(2);
}

#[test]
fn gen_writes_out_file_deterministically() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a.json");
    let b = tmp.path().join("b.json");
    for p in [&a, &b] {
        hzlag(tmp.path())
            .args(["gen", "glag-k1", "--rmax2", "4", "--nmax", "6", "--out"])
            .arg(p)
            .assert()
            .success()
            .stdout("");
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn cache_and_no_cache_agree() {
    let tmp = TempDir::new().unwrap();
    let args = ["gen", "laguerre", "--gmax", "4", "--nmax", "12"];
    let fresh = stdout(hzlag(tmp.path()).args(args).arg("--no-cache"));
    assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 0);
    let first = stdout(hzlag(tmp.path()).args(args));
    assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 1);
    let cached = stdout(hzlag(tmp.path()).args(args));
    assert_eq!(fresh, first);
    assert_eq!(fresh, cached);
}

fn cached_vk_entry(dir: &Path) -> std::path::PathBuf {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| fs::read_to_string(p).unwrap().contains("\"ensemble\": \"vk\""))
        .expect("vk table cached")
}

#[test]
fn corrupted_cache_fails_constraints() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path()).args(["verify", "--suite", "constraints"]).assert().success();
    let entry = cached_vk_entry(tmp.path());
    let text = fs::read_to_string(&entry).unwrap();
    assert!(text.contains("\"value\": \"3/128\""));
    fs::write(&entry, text.replacen("\"value\": \"3/128\"", "\"value\": \"3/127\"", 1)).unwrap();
    hzlag(tmp.path())
        .args(["verify", "--suite", "constraints"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("FAIL constraint/"))
        .stdout(predicate::str::contains("[consistency]"));
    hzlag(tmp.path()).args(["verify", "--suite", "constraints", "--no-cache"]).assert().success();
}

#[test]
fn unreadable_cache_is_internal_error() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path()).args(["gen", "vk", "--gmax", "6"]).assert().success();
    fs::write(cached_vk_entry(tmp.path()), "{\"ensemble\": \"vk\"").unwrap();
    hzlag(tmp.path()).args(["gen", "vk", "--gmax", "6"]).assert().code(3);
}

#[test]
fn crosscheck_report_is_sorted_and_reproducible() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a.json");
    let b = tmp.path().join("b.json");
    for p in [&a, &b] {
        hzlag(tmp.path())
            .args(["verify", "--suite", "crosscheck", "--mmax", "5", "--out"])
            .arg(p)
            .assert()
            .success()
            .stderr(predicate::str::contains("wall time"));
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(doc["suite"], "crosscheck");
    let ids: Vec<&str> = doc["records"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
    assert!(doc["records"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn series_output() {
    let tmp = TempDir::new().unwrap();
    let out = stdout(hzlag(tmp.path()).args(["series", "--kind", "vk", "--k", "-1", "--order", "3"]));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let values: Vec<&str> = doc.as_array().unwrap().iter().map(|t| t["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "2", "6", "20"]);
    assert_eq!(doc[3]["exponent"], -3);
    let out = stdout(hzlag(tmp.path()).args(["series", "--kind", "gauss", "--g", "2", "--order", "11"]));
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc[9]["value"], "21");
    assert_eq!(doc[11]["value"], "483");
    hzlag(tmp.path()).args(["series", "--kind", "s", "--beta", "2"]).assert().code(2);
}

#[test]
fn eval_fab() {
    let tmp = TempDir::new().unwrap();
    hzlag(tmp.path())
        .args(["eval-fab", "--a", "2", "--b", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("u"));
    hzlag(tmp.path()).args(["eval-fab", "--a", "2", "--b", "3", "--at", "1/2"]).assert().success().stdout("-11\n");
    hzlag(tmp.path()).args(["eval-fab", "--a", "2", "--b", "3", "--at", "1"]).assert().code(2);
}
