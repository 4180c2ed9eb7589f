use std::process::Command;

use malfatti::cli::{self, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use regex::Regex;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["malfatti"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

fn point(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn dist(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["compute", "--sides", "3", "4", "5"], EXIT_OK),
        (&["compute", "--angles", "45", "54", "--scale", "2"], EXIT_OK),
        (&["compute", "--sides", "1", "1", "2"], EXIT_USAGE),
        (&["compute", "--sides", "-1", "1", "1"], EXIT_USAGE),
        (&["compute", "--sides", "3", "4"], EXIT_USAGE),
        (&["compute", "--angles", "90", "90"], EXIT_USAGE),
        (&["compute", "--sides", "3", "4", "5", "--angles", "45", "54"], EXIT_USAGE),
        (&["compute", "--sides", "3", "4", "5", "--scale", "2"], EXIT_USAGE),
        (&["compute"], EXIT_USAGE),
        (&["compute", "--sides", "3", "4", "5", "--variants", "33"], EXIT_USAGE),
        (&["compute", "--sides", "3", "4", "5", "--variants", "x1"], EXIT_USAGE),
        (&["verify", "--sides", "3", "4", "5", "--variants", "1"], EXIT_OK),
        (&["verify", "--sides", "3", "4", "5", "--variants", "b6", "--paper-verbatim"], EXIT_FAIL),
        (&["verify", "--sides", "3", "4", "5", "--tolerance", "0"], EXIT_USAGE),
        (&["frobnicate"], EXIT_USAGE),
        (&["--help"], EXIT_OK),
    ];
    for (args, code) in cases {
        let o = run(args);
        assert_eq!(o.code, *code, "{args:?}: {}", o.stderr);
        if *code == EXIT_USAGE {
            assert!(o.stdout.is_empty(), "{args:?}");
            assert!(!o.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn degenerate_input_names_the_pair() {
    let o = run(&["compute", "--sides", "1", "1", "2"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert_eq!(o.stderr.lines().count(), 1);
    assert!(o.stderr.contains("a + b"), "{}", o.stderr);
}

#[test]
fn compute_right_triangle_malfatti() {
    let o = run(&["compute", "--sides", "3", "4", "5", "--variants", "1"]);
    let doc = json(&o);
    assert_eq!(doc["schema"], 1);
    let t = &doc["triplets"].as_array().unwrap()[0];
    assert_eq!(t["index"], 1);
    assert_eq!(t["label"], "i1");
    assert!((t["r1"].as_f64().unwrap() - 0.751999353382582).abs() < 1e-12);
    assert_eq!(t["corrected_from_paper"], false);
    assert_eq!(t["near_degenerate"], false);
}

#[test]
fn compute_figure_triangle_lists_all_triplets_in_order() {
    let doc = json(&run(&["compute", "--angles", "45", "54", "--scale", "1"]));
    let tri = &doc["triangle"];
    assert!((tri["A_deg"].as_f64().unwrap() - 45.0).abs() < 1e-12);
    assert!((tri["B_deg"].as_f64().unwrap() - 54.0).abs() < 1e-12);
    assert!((tri["C_deg"].as_f64().unwrap() - 81.0).abs() < 1e-12);
    assert!((tri["c"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let triplets = doc["triplets"].as_array().unwrap();
    assert_eq!(triplets.len(), 32);
    for (i, t) in triplets.iter().enumerate() {
        assert_eq!(t["index"], i + 1);
    }
    let corrected: Vec<&str> = triplets
        .iter()
        .filter(|t| t["corrected_from_paper"] == true)
        .map(|t| t["label"].as_str().unwrap())
        .collect();
    assert_eq!(corrected, ["b6", "c7"]);
}

#[test]
fn json_round_trip_keeps_tangency() {
    let doc = json(&run(&["compute", "--sides", "2.3", "3.1", "4.4"]));
    let s = doc["triangle"]["s"].as_f64().unwrap();
    for t in doc["triplets"].as_array().unwrap() {
        let r = [&t["r1"], &t["r2"], &t["r3"]].map(|x| x.as_f64().unwrap());
        let c: Vec<(f64, f64)> = t["centers"].as_array().unwrap().iter().map(point).collect();
        let kinds = t["tangency_types"].as_array().unwrap();
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let target = if kinds[k] == "External" { r[i] + r[j] } else { (r[i] - r[j]).abs() };
            assert!((dist(c[i], c[j]) - target).abs() < 1e-5 * s, "{}", t["label"]);
        }
        let tp = t["tangent_points"].as_object().unwrap();
        assert_eq!(tp.len(), 9);
        for (label, k) in [("D2", 1), ("D3", 2), ("E1", 0), ("E3", 2), ("F1", 0), ("F2", 1)] {
            assert!((dist(point(&tp[label]), c[k]) - r[k]).abs() < 1e-5 * s, "{} {label}", t["label"]);
        }
        assert!(t["max_residual"].as_f64().unwrap() < 1e-9 * s);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["compute", "--sides", "3", "4", "5"][..],
        &["verify", "--sides", "2", "3", "4", "--variants", "1..8,c7"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn verify_reports_and_summary() {
    let o = run(&["verify", "--sides", "3", "4", "5"]);
    assert_eq!(o.code, EXIT_OK);
    let doc = json(&o);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 32);
    assert_eq!(doc["summary"]["match"], 30);
    assert_eq!(doc["summary"]["corrected"], 2);
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(o.stderr.trim(), "32 reports: 30 match, 2 corrected, 0 fail");

    let single = json(&run(&["verify", "--sides", "3", "4", "5", "--variants", "1"]));
    let reports = single["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "Match");
    assert!(reports[0]["max_radius_rel_error"].as_f64().unwrap() < 1e-7);

    let verbatim = run(&["verify", "--sides", "3", "4", "5", "--paper-verbatim"]);
    assert_eq!(verbatim.code, EXIT_FAIL);
    let doc = json(&verbatim);
    assert_eq!(doc["paper_verbatim"], true);
    let failed: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "Fail")
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["b6", "c7"]);
}

#[test]
fn tight_tolerance_is_honoured() {
    // formula and oracle agree to roughly 1e-14, not to 1e-30
    let o = run(&["verify", "--sides", "3", "4", "5", "--variants", "1", "--tolerance", "1e-30"]);
    assert_eq!(o.code, EXIT_FAIL);
}

fn viewbox(svg: &str) -> [f64; 4] {
    let re = Regex::new(r#"viewBox="([-\d.]+) ([-\d.]+) ([-\d.]+) ([-\d.]+)""#).unwrap();
    let c = re.captures(svg).unwrap();
    [1, 2, 3, 4].map(|i| c[i].parse().unwrap())
}

#[test]
fn render_extensions_stay_in_view() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["render", "--sides", "3", "4", "5", "--variants", "13", "--out", out]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), dir.path().join("a5.svg").to_str().unwrap());
    let svg = std::fs::read_to_string(dir.path().join("a5.svg")).unwrap();
    let [x0, y0, w, h] = viewbox(&svg);
    let point_re = Regex::new(r#"class="tangent-point" data-label="(\w+)" cx="([-\d.]+)" cy="([-\d.]+)""#).unwrap();
    let points: Vec<(String, f64, f64)> = point_re
        .captures_iter(&svg)
        .map(|c| (c[1].to_string(), c[2].parse().unwrap(), c[3].parse().unwrap()))
        .collect();
    assert_eq!(points.len(), 9);
    for (label, x, y) in &points {
        assert!(*x > x0 && *x < x0 + w && *y > y0 && *y < y0 + h, "{label}");
    }
    // the side lines are drawn past the tangent points lying on them
    let line_re = Regex::new(r#"class="extension" x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)""#).unwrap();
    let lines: Vec<[f64; 4]> = line_re
        .captures_iter(&svg)
        .map(|c| [1, 2, 3, 4].map(|i| c[i].parse().unwrap()))
        .collect();
    assert_eq!(lines.len(), 3);
    for (_, x, y) in &points[..6] {
        let covered = lines.iter().any(|l| {
            let (dx, dy) = (l[2] - l[0], l[3] - l[1]);
            let len2 = dx * dx + dy * dy;
            let t = ((x - l[0]) * dx + (y - l[1]) * dy) / len2;
            let off = (dx * (y - l[1]) - dy * (x - l[0])).abs() / len2.sqrt();
            off < 1e-5 && t > 0.0 && t < 1.0
        });
        assert!(covered, "({x}, {y})");
    }
}

#[test]
fn render_equilateral_has_congruent_circles() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["render", "--sides", "1", "1", "1", "--variants", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    let svg = std::fs::read_to_string(dir.path().join("i1.svg")).unwrap();
    let re = Regex::new(r#"class="tangent-circle" data-index="\d" cx="[-\d.]+" cy="[-\d.]+" r="([\d.]+)""#).unwrap();
    let radii: Vec<&str> = re.captures_iter(&svg).map(|c| c.get(1).unwrap().as_str()).collect();
    assert_eq!(radii, ["0.183013"; 3]);
    assert!(svg.contains(">A</text>") && svg.contains(">B</text>") && svg.contains(">C</text>"));
    assert!(svg.contains("i1 (Case 1)"));
}

#[test]
fn render_into_a_file_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("taken");
    std::fs::write(&blocker, b"").unwrap();
    let o = run(&["render", "--sides", "3", "4", "5", "--variants", "1", "--out", blocker.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.starts_with("error: cannot write figures"), "{}", o.stderr);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_malfatti");
    let ok = Command::new(bin).args(["verify", "--sides", "3", "4", "5", "--variants", "i1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["reports"][0]["label"], "i1");
    let bad = Command::new(bin).args(["compute", "--sides", "1", "2", "3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
}
