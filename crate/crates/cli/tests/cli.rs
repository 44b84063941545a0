use std::path::PathBuf;
use std::process::{Command, Output};

use dmcbounds::{c0_fb, psi_inf, Channel};
use serde_json::Value;
use tempfile::TempDir;

const TW3: &str = r#"{"input": 3, "output": 3, "rows": [["3/4","1/4","0"],["0","3/4","1/4"],["1/4","0","3/4"]]}"#;
const ID2: &str = r#"{"input": 2, "output": 2, "rows": [["1","0"],["0","1"]]}"#;
const BSC: &str = r#"{"input": 2, "output": 2, "rows": [["9/10","1/10"],["1/10","9/10"]]}"#;
const TW5: &str = r#"{"input": 5, "output": 5, "rows": [
    ["1/2","1/2","0","0","0"],["0","1/2","1/2","0","0"],["0","0","1/2","1/2","0"],
    ["0","0","0","1/2","1/2"],["1/2","0","0","0","1/2"]]}"#;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: TempDir::new().unwrap(),
        }
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmcbounds")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_text_report() {
    let f = Files::new();
    let tw3 = f.write("tw3.json", TW3);
    let o = run(&["info", "--channel", path(&tw3)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("log2(3/2) from psi 2/3"));
    assert!(text.contains("psi = 2/3 (≈ 0.666666666667)"));
    assert!(text.lines().any(|l| l.starts_with("C0_fb") && l.contains(" 0 ")));
}

#[test]
fn info_json_round_trips_exact_fields() {
    let f = Files::new();
    for (name, body) in [("tw3.json", TW3), ("id2.json", ID2), ("tw5.json", TW5)] {
        let file = f.write(name, body);
        let o = run(&["info", "--channel", path(&file), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let w = Channel::from_json(body).unwrap();
        let psi = psi_inf(&w).psi;
        assert_eq!(report["r_inf"]["psi"], format!("{}/{}", psi.numer(), psi.denom()));
        let c0 = c0_fb(&w);
        assert_eq!(report["c0_fb"]["positive"], c0.is_positive());
        if let dmcbounds::FeedbackCapacity::Positive(r) = c0 {
            assert_eq!(report["c0_fb"]["value"]["psi"], format!("{}/{}", r.psi.numer(), r.psi.denom()));
        }
    }
    let id2 = f.write("id2b.json", ID2);
    let report: Value = serde_json::from_str(&stdout(&run(&["info", "--channel", path(&id2), "--format", "json"]))).unwrap();
    assert_eq!(report["capacity"], 1.0);
    assert_eq!(report["r_inf"]["rate"], 1.0);
    assert_eq!(report["c0_fb"]["rate"], 1.0);
}

#[test]
fn info_writes_out_file() {
    let f = Files::new();
    let id2 = f.write("id2.json", ID2);
    let out = f.dir.path().join("report.txt");
    let o = run(&["info", "--channel", path(&id2), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap(), stdout(&o));
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let broken = f.write("broken.json", "{\"input\": 2");
    let float = f.write("float.json", r#"{"input": 1, "output": 2, "rows": [["0.5","0.5"]]}"#);
    let nonstochastic = f.write("ns.json", r#"{"input": 2, "output": 2, "rows": [["1/2","1/3"],["0","1"]]}"#);
    let id2 = f.write("id2.json", ID2);
    let tw3 = f.write("tw3.json", TW3);

    assert_eq!(run(&["info", "--channel", path(&broken)]).status.code(), Some(2));
    assert_eq!(run(&["info", "--channel", path(&float)]).status.code(), Some(2));
    assert_eq!(run(&["info", "--channel", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["info"]).status.code(), Some(2));

    let o = run(&["info", "--channel", path(&nonstochastic)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("row 0"));
    let o = run(&["sweep", "--channel", path(&id2), "--start", "0.5", "--stop", "0.1", "--step", "0.1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["product", "--channel", path(&tw3), "--channel", path(&tw3), "--size-cap", "8"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["semidecide", "--channel", path(&id2), "--lambda", "0.9", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(10));
    let o = run(&["semidecide", "--channel", path(&tw3), "--lambda", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ACCEPTED"));
    let o = run(&["semidecide", "--channel", path(&tw3), "--lambda", "0.1", "--quantity", "C0_fb", "--budget", "2000"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn product_verdicts() {
    let f = Files::new();
    let id2 = f.write("id2.json", ID2);
    let tw3 = f.write("tw3.json", TW3);
    let text = stdout(&run(&["product", "--channel", path(&id2), "--channel", path(&tw3)]));
    assert!(text.contains("verdict: SUPER-ADDITIVE"));
    assert!(text.contains("log2(3) from psi 1/3"));
    let text = stdout(&run(&["product", "--channel", path(&id2), "--channel", path(&id2)]));
    assert!(text.contains("verdict: ADDITIVE"));
    let report: Value = serde_json::from_str(&stdout(&run(&[
        "product", "--channel", path(&id2), "--channel", path(&id2), "--format", "json",
    ])))
    .unwrap();
    assert_eq!(report["product"]["c0_fb"]["rate"], 2.0);
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn sweep_bsc_table() {
    let f = Files::new();
    let bsc = f.write("bsc.json", BSC);
    let o = run(&["sweep", "--channel", path(&bsc), "--start", "0.01", "--stop", "0.53", "--step", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["R", "E_sp", "E_r", "E_ex_1"]);
    let w = Channel::from_json(BSC).unwrap();
    let crit = dmcbounds::gallager::r_crit(&w).unwrap();
    let mut last = [f64::INFINITY; 3];
    for row in rows {
        let rate: f64 = row[0].parse().unwrap();
        let values: Vec<f64> = row[1..].iter().map(|v| v.parse().unwrap()).collect();
        for (v, l) in values.iter().zip(&last) {
            assert!(v <= &(l + 1e-9), "not monotone at {rate}");
        }
        if rate >= crit {
            assert!((values[0] - values[1]).abs() <= 1e-6);
        }
        last = [values[0], values[1], values[2]];
    }
}

#[test]
fn sweep_gates() {
    let f = Files::new();
    let tw3 = f.write("tw3.json", TW3);
    let (_, rows) = parse_csv(&stdout(&run(&[
        "sweep", "--channel", path(&tw3), "--start", "0.5", "--stop", "0.7", "--step", "0.02", "--bounds", "sp",
    ])));
    let r_inf = 1.5f64.log2();
    for row in rows {
        let rate: f64 = row[0].parse().unwrap();
        assert_eq!(row[1] == "inf", rate <= r_inf, "rate {rate}");
    }
    let tw5 = f.write("tw5.json", TW5);
    let (header, rows) = parse_csv(&stdout(&run(&[
        "sweep", "--channel", path(&tw5), "--rates", "1.1,1.2", "--bounds", "ex", "--k", "2",
    ])));
    assert_eq!(header, ["R", "E_ex_2"]);
    assert_eq!(rows[0][1], "inf");
    assert_ne!(rows[1][1], "inf");
}

#[test]
fn sweep_reports_cap_as_nan() {
    let f = Files::new();
    let tw3 = f.write("tw3.json", TW3);
    let o = run(&["sweep", "--channel", path(&tw3), "--rates", "0.586", "--bounds", "sp", "--rho-cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "R,E_sp\n0.586,nan\n");
    assert!(String::from_utf8(o.stderr).unwrap().contains("warning"));
}

#[test]
fn approx_traces() {
    let f = Files::new();
    let id2 = f.write("id2.json", ID2);
    let (header, rows) = parse_csv(&stdout(&run(&["approx", "--channel", path(&id2), "--n-max", "5"])));
    assert_eq!(header, ["N", "value", "error_bound", "target"]);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 2.0);
    let tw3 = f.write("tw3.json", TW3);
    let (_, rows) = parse_csv(&stdout(&run(&[
        "approx", "--channel", path(&tw3), "--quantity", "C0_fb", "--n-max", "30",
    ])));
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.windows(2).all(|p| p[1] <= p[0]));
    assert!(rows.iter().all(|r| r[2].is_empty()));
}
