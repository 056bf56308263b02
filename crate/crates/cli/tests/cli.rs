use levytandem::{InversionConfig, JobLaw, LevyModel, RegimeApprox, TandemParams};
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_levytandem"));
    cmd.env_remove("LEVYTANDEM_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Rows of a CSV as maps from header to cell.
fn rows(csv: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_string)).collect())
        .collect()
}

fn num(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("levytandem-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn regime_one_table_values() {
    let csv = stdout(&run(&["approx", "--regime", "1", "--rho1", "0.5", "--rho2", "0.99", "--xs", "1,100,500"]));
    assert!(csv.starts_with("x,p,method,params_hash\n"));
    let got: Vec<String> = rows(&csv).iter().map(|r| format!("{:.3}", num(r, "p"))).collect();
    assert_eq!(got, ["0.990", "0.364", "0.006"]);
    assert!(rows(&csv).iter().all(|r| r["method"] == "regime1"));
}

#[test]
fn regime_two_table_values() {
    let csv = stdout(&run(&["approx", "--regime", "2", "--rho1", "0.98", "--rho2", "0.99", "--xs", "5,20,50"]));
    for (row, want) in rows(&csv).iter().zip([0.753, 0.528, 0.318]) {
        assert!((num(row, "p") - want).abs() <= 0.002, "{row:?}");
    }
}

#[test]
fn approx_output_is_bit_identical_to_library() {
    let csv = stdout(&run(&["approx", "--regime", "ml", "--rho1", "0.5", "--rho2", "0.99", "--nu", "1.5", "--xs", "100,250"]));
    let model = LevyModel::compound_poisson(1.0, JobLaw::pareto_unit_mean(1.5).unwrap()).unwrap();
    let params = TandemParams::from_loads(1.0, 0.5, 0.99).unwrap();
    let approx = RegimeApprox::mittag_leffler(&model, &params).unwrap();
    for row in rows(&csv) {
        let lib = approx.downstream_tail(num(&row, "x"), &InversionConfig::default()).unwrap();
        assert_eq!(num(&row, "p").to_bits(), lib.to_bits());
    }
    assert!((num(&rows(&csv)[0], "p") - 0.853).abs() < 5e-4);
}

#[test]
fn upstream_brownian_transform() {
    let csv = stdout(&run(&[
        "lst-eval", "--model", "brownian", "--sigma2", "2", "--r1", "2", "--r2", "1.5", "--transform", "upstream", "--s", "1",
    ]));
    let row = &rows(&csv)[0];
    assert!((num(row, "re") - 0.5).abs() < 1e-15 && num(row, "im") == 0.0);
}

#[test]
fn joint_transform_needs_second_argument() {
    let out = run(&["lst-eval", "--rho1", "0.5", "--rho2", "0.8", "--transform", "joint", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let csv = stdout(&run(&["lst-eval", "--rho1", "0.5", "--rho2", "0.8", "--transform", "joint", "--s", "0,1+2i", "--s2", "0.5"]));
    assert_eq!(rows(&csv).len(), 2);
}

#[test]
fn exponential_inversion() {
    let csv = stdout(&run(&["invert", "--transform", "exp", "--mu", "1", "--xs", "1"]));
    assert!((num(&rows(&csv)[0], "p") - 0.367_879).abs() < 1e-6);
    let csv = stdout(&run(&["invert", "--transform", "exp", "--xs", "1", "--method", "stehfest"]));
    assert!((num(&rows(&csv)[0], "p") - 0.367_879).abs() < 1e-3);
}

#[test]
fn inversion_round_trips_through_lst_eval() {
    // Sample the downstream transform with lst-eval and invert it by Stehfest here.
    let base = ["--rho1", "0.6", "--rho2", "0.8"];
    let x: f64 = 5.0;
    let n = 14usize;
    let h = std::f64::consts::LN_2 / x;
    let s_list: Vec<String> = (1..=n).map(|k| format!("{:e}", k as f64 * h)).collect();
    let mut args = vec!["lst-eval", "--s"];
    let joined = s_list.join(",");
    args.push(&joined);
    args.extend(base);
    let csv = stdout(&run(&args));
    let fact = |k: usize| (1..=k).fold(1.0f64, |a, i| a * i as f64);
    let half = n / 2;
    let mut acc = 0.0;
    for (k, row) in (1..=n).zip(rows(&csv)) {
        let mut w = 0.0;
        for j in (k + 1) / 2..=k.min(half) {
            w += (j as f64).powi(half as i32) * fact(2 * j)
                / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        if (k + half) % 2 == 1 {
            w = -w;
        }
        let s = num(&row, "s_re");
        acc += w * (1.0 - num(&row, "re")) / s;
    }
    let external = acc * h;
    let mut args = vec!["invert", "--xs", "5"];
    args.extend(base);
    let csv = stdout(&run(&args));
    assert!((num(&rows(&csv)[0], "p") - external).abs() < 1e-3, "{external}");
}

#[test]
fn regime_two_rejects_infinite_variance() {
    let out = run(&["approx", "--regime", "2", "--nu", "1.5", "--rho1", "0.5", "--rho2", "0.95", "--xs", "100", "--json-errors"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "validation");
    assert_eq!(err["exit_code"], 2);
    assert!(err["message"].as_str().unwrap().contains("finite-variance"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["approx", "--rho1", "0.5", "--xs", "1"]).status.code(), Some(2));
    assert_eq!(run(&["approx", "--rho1", "1.5", "--rho2", "0.9", "--xs", "1"]).status.code(), Some(2));
    assert_eq!(run(&["approx", "--rho1", "0.5", "--rho2", "0.9", "--xs", "5,1"]).status.code(), Some(2));
    assert_eq!(run(&["approx", "--rho1", "0.5", "--rho2", "0.9", "--xs", "1", "--unknown"]).status.code(), Some(2));
    assert_eq!(run(&["repro", "table9"]).status.code(), Some(2));
    let out = run(&["invert", "--rho1", "0.5", "--rho2", "0.95", "--xs", "1e300", "--json-errors"]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "numeric");
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn thread_cap_is_validated_and_does_not_change_results() {
    let args = ["simulate", "--rho1", "0.6", "--rho2", "0.8", "--xs", "1,5", "--simulate", "100000", "--replications", "2"];
    let plain = stdout(&run(&args));
    let capped = stdout(&bin().args(args).env("LEVYTANDEM_THREADS", "1").output().unwrap());
    assert_eq!(plain, capped);
    let bad = bin().args(args).env("LEVYTANDEM_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn simulation_is_seeded() {
    let args = ["simulate", "--rho1", "0.6", "--rho2", "0.8", "--xs", "1", "--simulate", "200000", "--seed", "9"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let row = &rows(&a)[0];
    assert_eq!(row["method"], "simulated");
    assert!((num(row, "p") - 0.49955).abs() < 3.0 * num(row, "half_width") + 0.01);
    let other = stdout(&run(&["simulate", "--rho1", "0.6", "--rho2", "0.8", "--xs", "1", "--simulate", "200000", "--seed", "10"]));
    assert_ne!(a, other);
}

#[test]
fn config_file_with_command_line_override() {
    let dir = scratch("config");
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# Table 1, left panel\nrho1 = 0.5\nrho2 = 0.99\nregime = 1\nxs = 1, 100\n").unwrap();
    let from_file = stdout(&run(&["approx", "--config", cfg.to_str().unwrap()]));
    let direct = stdout(&run(&["approx", "--rho1", "0.5", "--rho2", "0.99", "--regime", "1", "--xs", "1,100"]));
    assert_eq!(from_file, direct);
    let overridden = stdout(&run(&["approx", "--config", cfg.to_str().unwrap(), "--regime", "2"]));
    assert!(rows(&overridden).iter().all(|r| r["method"] == "regime2"));
    std::fs::write(&cfg, "rho1 = 0.5\nshade = blue\n").unwrap();
    assert_eq!(run(&["approx", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["approx", "--config", dir.join("missing.cfg").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_and_json_format() {
    let dir = scratch("out");
    let path = dir.join("tail.json");
    let out = run(&["approx", "--rho1", "0.5", "--rho2", "0.99", "--xs", "1,100", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["method"], "regime2");
    assert!(arr[1]["p"].as_f64().unwrap() > 0.3);
}

fn golden_rows(name: &str) -> Vec<std::collections::HashMap<String, String>> {
    let text = std::fs::read_to_string(format!("{}/golden/{name}.csv", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    rows(&body)
}

#[test]
fn repro_tables_match_golden_values() {
    for (table, cols) in [("table1", vec![("r1", "r1"), ("r2", "r2")]), ("table2", vec![("r1", "r1"), ("r2", "r2")]), ("table3", vec![("ml", "ml")])] {
        let csv = stdout(&run(&["repro", table]));
        let produced = rows(&csv);
        let golden = golden_rows(table);
        assert_eq!(produced.len(), golden.len(), "{table}");
        for (p, g) in produced.iter().zip(&golden) {
            assert_eq!((&p["rho1"], &p["rho2"], &p["x"]), (&g["rho1"], &g["rho2"], &g["x"]));
            for (ours, theirs) in &cols {
                assert!((num(p, ours) - num(g, theirs)).abs() <= 0.002, "{table} {p:?}");
                assert_eq!(p[&format!("printed_{ours}")], g[*theirs]);
            }
        }
    }
}

#[test]
fn repro_is_byte_identical_across_runs() {
    for table in ["table1", "table2", "table3", "fig-correlation"] {
        let a = run(&["repro", table]);
        let b = run(&["repro", table]);
        assert_eq!(stdout(&a), stdout(&b), "{table}");
    }
}

#[test]
fn correlation_figure_endpoints() {
    let csv = stdout(&run(&["repro", "fig-correlation"]));
    let r = rows(&csv);
    assert_eq!(r.first().unwrap()["gamma"], "1.01");
    assert_eq!(r.last().unwrap()["gamma"], "20.00");
    assert!((num(&r[0], "c") - 0.573_53).abs() < 1e-5);
    assert!((num(r.last().unwrap(), "c") - 0.0477).abs() < 1e-4);
    assert!(r.windows(2).all(|w| num(&w[1], "c") < num(&w[0], "c")));
}

#[test]
fn compare_against_printed_simulation() {
    let csv = stdout(&run(&["compare", "--reference", "table3", "--rho1", "0.5", "--rho2", "0.95", "--nu", "1.5", "--regime", "ml", "--xs", "100"]));
    let row = &rows(&csv)[0];
    assert_eq!(row["method"], "mittag-leffler");
    let expected = (num(row, "approx") - 0.478) / 0.478 * 100.0;
    assert!((num(row, "diff_pct") - expected).abs() < 0.01);
    assert!((num(row, "diff_pct") - 4.4).abs() < 0.1, "{row:?}");
    let missing = run(&["compare", "--reference", "table3", "--rho1", "0.5", "--rho2", "0.95", "--nu", "1.5", "--xs", "7"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn compare_against_simulation_lists_every_method() {
    let csv = stdout(&run(&["compare", "--rho1", "0.6", "--rho2", "0.8", "--xs", "1", "--simulate", "300000"]));
    let methods: Vec<String> = rows(&csv).iter().map(|r| r["method"].clone()).collect();
    assert_eq!(methods, ["exact", "regime1", "regime2"]);
    for row in rows(&csv) {
        let diff = (num(&row, "approx") - num(&row, "simul")) / num(&row, "simul") * 100.0;
        assert!((num(&row, "diff_pct") - diff).abs() < 0.01);
        assert!(num(&row, "half_width") > 0.0);
    }
}
