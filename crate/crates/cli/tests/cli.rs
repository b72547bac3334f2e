use std::fs;
use std::process::{Command, Output};

use avgdeg_cli::output::CSV_COLUMNS;

fn avgdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avgdeg"))
        .args(args)
        .output()
        .expect("spawn avgdeg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csv_header_is_stable() {
    let o = avgdeg(&["run", "--graph", "star:50", "--algo", "ers", "--eps", "0.2", "--c", "20", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(
        CSV_COLUMNS.join(","),
        "family,params,n,m,d,alpha,algorithm,epsilon,trial,estimate,rel_error,in_range,terminated,\
         iterations,final_s,final_tau,samples_total,vertex_queries,degree_queries,neighbor_queries,total_queries"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("star,star:50,50,49,"));
    // the summary goes to stderr when the data is on stdout
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

#[test]
fn timing_adds_a_column() {
    let o = avgdeg(&["run", "--graph", "path:10", "--algo", "ers", "--c", "5", "--timing"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(",total_queries,wall_ms"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["run", "--graph", "erdos_renyi:300,0.05@4", "--algo", "ers-gen", "--eps", "0.3,0.2", "--c", "10", "--trials", "5", "--seed", "9"];
    let a = avgdeg(&args);
    let b = avgdeg(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    let last = other.len() - 1;
    other[last] = "10";
    assert_ne!(a.stdout, avgdeg(&other).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(avgdeg(&["run", "--graph", "star:5", "--algo", "ers", "--eps", "0.7"]).status.code(), Some(2));
    assert_eq!(avgdeg(&["run", "--graph", "star:5", "--algo", "ers", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(avgdeg(&["run", "--graph", "hexagon:5", "--algo", "ers"]).status.code(), Some(2));
    assert_eq!(avgdeg(&["run", "--algo", "ers"]).status.code(), Some(2));
    assert_eq!(avgdeg(&["run", "--graph", "/nonexistent/g.txt", "--algo", "ers"]).status.code(), Some(2));
    assert_eq!(avgdeg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn threshold_failure_exits_1() {
    // A far too small alpha lets the estimator stop after one or two samples.
    let o = avgdeg(&["run", "--graph", "complete:40", "--algo", "ers", "--alpha", "0.001", "--c", "0.01", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
}

#[test]
fn validate_reports_each_check() {
    let o = avgdeg(&["validate", "--graph", "complete:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[PASS] sample mean: E[X] = 2 == d = 2"));
    assert!(text.contains("[PASS] sample variance: Var[X] = 4 <= 8*d*alpha = 32"));
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 6);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    let out = dir.path().join("res.json");
    fs::write(
        &cfg,
        format!(
            "graph = \"forest_union:200,2@1\"\nalgo = \"ers\"\neps = [0.3]\nc = 10.0\ntrials = 4\nformat = \"json\"\nout = {:?}\n",
            out.display().to_string()
        ),
    )
    .unwrap();
    let o = avgdeg(&["run", "--config", cfg.to_str().unwrap(), "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("forest_union:200,2@1"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["rows"].as_array().unwrap().len(), 2);

    fs::write(&cfg, "graph = \"star:5\"\nalgo = \"ers\"\nbogus = 1\n").unwrap();
    assert_eq!(avgdeg(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn generated_file_feeds_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    let o = avgdeg(&["gen", "--graph", "isolated_plus_clique:30,6", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let id: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(id["m"], 15);
    assert!(fs::read_to_string(&path).unwrap().starts_with("36 15\n"));

    let o = avgdeg(&["run", "--graph", p, "--algo", "birthday-n", "--eps", "0.5", "--trials", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["graph"]["n"], 36);
    assert!(r["scaling"].is_null());
}
