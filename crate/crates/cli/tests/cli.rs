//! End-to-end tests of the command-line interface and its artifacts.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadvoronoi"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn law_sigma_grid_is_monotone_from_one() {
    let text = run_ok(&["law", "--sigma-grid", "0:20:0.5"]);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# {"), "metadata comment line");
    let meta: serde_json::Value =
        serde_json::from_str(header.trim_start_matches("# ")).expect("metadata is json");
    assert_eq!(meta["command"], "law");
    assert!(meta["precision_bits"].as_u64().unwrap() >= 256);
    assert_eq!(lines.next().unwrap(), "sigma,e_sigma,error_estimate");
    let mut prev = f64::INFINITY;
    let mut first = None;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3);
        let v: f64 = cols[1].parse().unwrap();
        if first.is_none() {
            first = Some(v);
        }
        assert!(v > 0.0 && v <= prev, "monotone decreasing transform");
        prev = v;
    }
    assert_eq!(first.unwrap(), 1.0, "starts at E(0) = 1");
}

#[test]
fn asym_grid_endpoints() {
    let text = run_ok(&["asym", "--grid", "101"]);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.first().unwrap().starts_with("-1,0,"));
    assert!(rows.last().unwrap().starts_with("1,1,"));
    // midpoint is exactly 1/2
    let mid: Vec<&str> = rows[50].split(',').collect();
    assert_eq!(mid[0], "0");
    assert_eq!(mid[1], "0.5");
}

#[test]
fn verify_quick_exits_zero_with_all_pass_report() {
    let out = bin().args(["verify", "--quick"]).output().unwrap();
    assert!(out.status.success(), "verify --quick must exit 0");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["report"]["all_passed"], true);
    let checks = doc["report"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["passed"], true, "check {} failed", c["name"]);
        assert!(c["computed"].as_str().is_some());
        assert!(c["reference"].as_str().is_some());
        assert!(c["anchor"].as_str().map(|a| !a.is_empty()).unwrap_or(false));
        assert!(c["tolerance"].is_number());
    }
    // stable under re-run at the same configuration
    let out2 = bin().args(["verify", "--quick"]).output().unwrap();
    assert_eq!(out.stdout, out2.stdout, "report must be deterministic");
}

#[test]
fn coeffs_schema_and_first_volume() {
    let text = run_ok(&["coeffs", "--s", "1", "--order2", "12"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["table"]["s"], 1);
    assert_eq!(doc["table"]["order2"], 12);
    let entries = doc["table"]["entries"].as_array().unwrap();
    // the single volume-1 map appears as the (1,1) doubled key
    let first = entries
        .iter()
        .find(|e| e[0] == 1 && e[1] == 1)
        .expect("key (1,1) present");
    assert_eq!(first[2], "1");
    assert_eq!(first[3], "1");
    // symmetry of the stored table
    for e in entries {
        let (k1, k2) = (e[0].as_u64().unwrap(), e[1].as_u64().unwrap());
        assert!(
            entries
                .iter()
                .any(|f| f[0].as_u64() == Some(k2) && f[1].as_u64() == Some(k1)),
            "transpose of ({k1},{k2}) present"
        );
    }
}

#[test]
fn scaling_dump_tables_audits_clean() {
    let text = run_ok(&["scaling", "dump-tables"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let tables: quadvoronoi::scaling::TablesDump =
        serde_json::from_value(doc["tables"].clone()).unwrap();
    quadvoronoi::scaling::audit_dump(&tables).expect("dump audits against built-ins");
}

#[test]
fn profile_metadata_carries_extrapolation() {
    let text = run_ok(&[
        "profile",
        "--s",
        "1",
        "--max-n",
        "80",
        "--richardson-order",
        "10",
    ]);
    let header = text.lines().next().unwrap();
    let meta: serde_json::Value = serde_json::from_str(header.trim_start_matches("# ")).unwrap();
    let extrapolated = meta["args"]["extrapolated"].as_f64().unwrap();
    let target = meta["args"]["target"].as_f64().unwrap();
    assert!((target - 7.2).abs() < 1e-12);
    assert!((extrapolated - target).abs() / target < 0.01);
}

#[test]
fn out_flag_writes_file_and_json_format_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pi.json");
    let out = bin()
        .args([
            "asym",
            "--grid",
            "11",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["columns"][0], "omega");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn bad_flags_exit_two_and_bad_input_exits_one() {
    let out = bin().args(["law", "--bogus-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "usage errors exit 2");
    let out = bin().args(["law"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "missing grid exits 1");
    let out = bin()
        .args(["scaling", "eval", "--s-value=-1", "--a", "1", "--b", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "domain errors exit 1");
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn precision_env_var_is_honored() {
    let text = {
        let out = bin()
            .env("QUADVORONOI_PRECISION_BITS", "192")
            .args(["law", "--sigma-grid", "1:1:1"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let meta: serde_json::Value =
        serde_json::from_str(text.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(meta["precision_bits"], 192);
}
