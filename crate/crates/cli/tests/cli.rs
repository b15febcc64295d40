use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn genex(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_genex"));
    c.args(args).env_remove("GENEX_CACHE_DIR");
    if let Some(dir) = cache {
        c.arg("--cache-dir").arg(dir);
    }
    c.output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn quartic_single_vertex_maps() {
    let o = genex(&["maps", "--valence", "4", "--vertices", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o), serde_json::json!({"0": 2, "1": 1}));
    let o = genex(&["maps", "--valence", "3", "--vertices", "2", "--genus", "1"], None);
    assert_eq!(json_of(&o), serde_json::json!({"1": 3}));
    let o = genex(&["maps", "--valence", "3", "--vertices", "1"], None);
    assert_eq!(json_of(&o), serde_json::json!({}));
}

#[test]
fn quartic_genus_two_free_energy() {
    let o = genex(&["eg", "--nu", "2", "--g", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    // (z-1)^3 (3z^2 - 21z - 82) / (720 (z-2)^5), written over (2-z)^5
    assert_eq!(v["ratfn"]["den_base"], serde_json::json!(["2/1", "-1/1"]));
    assert_eq!(v["ratfn"]["den_pow"], 5);
    assert_eq!(v["ratfn"]["num"][0], "-41/360");
    assert_eq!(v["structure"]["r"], 3);
    assert_eq!(v["structure"]["constant"], "1/240");
    assert_eq!(v["series"]["coeffs"][3], "240/1");
}

#[test]
fn cache_is_deterministic_and_served_on_hit() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["zg", "--nu", "2", "--g", "1"];
    let a = genex(&args, Some(dir.path()));
    let b = genex(&args, Some(dir.path()));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let uncached = genex(&[&args[..], &["--no-cache"]].concat(), None);
    assert_eq!(a.stdout, uncached.stdout);

    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    // a doctored payload is returned verbatim, so hits do not recompute
    let mut stored: Value = serde_json::from_str(&fs::read_to_string(&entries[0]).unwrap()).unwrap();
    stored["payload"]["g"] = serde_json::json!(99);
    fs::write(&entries[0], stored.to_string()).unwrap();
    assert_eq!(json_of(&genex(&args, Some(dir.path())))["g"], 99);

    fs::write(&entries[0], "garbage").unwrap();
    let c = genex(&args, Some(dir.path()));
    assert_eq!(c.stdout, a.stdout);
    assert!(String::from_utf8_lossy(&c.stderr).contains("corrupt cache entry"));
}

#[test]
fn corrupted_moment_fails_verification() {
    let good = genex(&["verify", "lattice", "--nu", "2", "--nmax", "3", "--torder", "2"], None);
    assert_eq!(good.status.code(), Some(0));
    let bad = genex(
        &["verify", "lattice", "--nu", "2", "--nmax", "3", "--torder", "2", "--corrupt-moment", "4"],
        None,
    );
    assert_eq!(bad.status.code(), Some(1));
    let v = json_of(&bad);
    assert_eq!(v["all_pass"], false);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}

#[test]
fn usage_errors_exit_two() {
    let o = genex(&["frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(genex(&["eg", "--nu", "1", "--g", "2"], None).status.code(), Some(2));
    assert_eq!(genex(&["maps", "--valence", "4", "--vertices", "6"], None).status.code(), Some(2));
}

#[test]
fn verification_reports_and_formats() {
    let o = genex(&["verify", "odd", "--nu", "1", "--order", "6"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["identity"].is_string() && c["params"].is_string());
        assert_eq!(c["pass"], true);
    }
    let csv = genex(&["trivalent", "--mmax", "4", "--format", "csv"], None);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("alpha_squared,1/9"));
    let t = genex(&["z0", "--nu", "2", "--order", "6", "--format", "text"], None);
    let text = String::from_utf8(t.stdout).unwrap();
    assert!(text.contains("higher_catalan[5]: 132/1"));
}

#[test]
fn read_only_cache_dir_still_computes() {
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    let ro = dir.path().join("ro");
    fs::create_dir(&ro).unwrap();
    fs::set_permissions(&ro, fs::Permissions::from_mode(0o555)).unwrap();
    // root ignores directory permissions; only check the warning when the write really fails
    let probe = fs::write(ro.join("probe"), "x").is_err();
    let o = genex(&["z0", "--nu", "2", "--order", "4"], Some(&ro));
    assert_eq!(o.status.code(), Some(0));
    if probe {
        assert!(String::from_utf8_lossy(&o.stderr).contains("cache write skipped"));
    }
    fs::set_permissions(&ro, fs::Permissions::from_mode(0o755)).unwrap();

    // a directory path below a regular file can never be created
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let o = genex(&["z0", "--nu", "2", "--order", "4"], Some(&file.join("sub")));
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache write skipped"));
}
