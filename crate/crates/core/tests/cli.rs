use std::f64::consts::PI;
use std::process::{Command, Output};

fn wavebasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavebasis")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header names (without units) and numeric rows of a CSV document.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# wavebasis "));
    let header = lines.next().unwrap().split(',').map(|h| h.split(" [").next().unwrap().to_string()).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter()
        .map(|r| match r[i].as_str() {
            "inf" => f64::INFINITY,
            "-inf" => f64::NEG_INFINITY,
            s => s.parse().unwrap(),
        })
        .collect()
}

#[test]
fn singular_spectrum_rows() {
    let out = wavebasis(&["spectrum", "--potential", "singular", "--beta", "0.5", "--n-max", "1"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        ["n", "E_closed_form", "E_quantization_root", "E_wkb_rule", "E_oracle", "rel_err_vs_oracle", "ratio_vs_oracle"]
    );
    let closed = column(&header, &rows, "E_closed_form");
    let oracle = column(&header, &rows, "E_oracle");
    let err = column(&header, &rows, "rel_err_vs_oracle");
    assert!((closed[0] + 1.17474).abs() < 1e-4 && (closed[1] + 0.56475).abs() < 1e-4);
    assert!((oracle[0] + 1.6534).abs() < 1e-3 && (oracle[1] + 0.43804).abs() < 1e-4);
    assert!(err.iter().all(|e| (e - 0.289).abs() < 0.01));
}

#[test]
fn harmonic_ratio_column_is_constant() {
    let out = wavebasis(&["spectrum", "--potential", "harmonic", "--omega", "1", "--n-max", "3"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let closed = column(&header, &rows, "E_closed_form");
    let factor = (3.0 * PI * PI / 32.0).sqrt();
    for (n, e) in closed.iter().enumerate() {
        assert!((e / (n as f64 + 0.5) - factor).abs() < 1e-12);
    }
    for r in column(&header, &rows, "ratio_vs_oracle") {
        assert!((r - factor).abs() < 1e-8);
    }
}

#[test]
fn hard_wall_spectrum() {
    let out = wavebasis(&["spectrum", "--potential", "hard_wall", "--n-max", "2"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let e = column(&header, &rows, "E_closed_form");
    assert!((e[0] - PI * PI / 4.0).abs() < 1e-12 && (e[1] - PI * PI).abs() < 1e-12);
}

#[test]
fn output_is_byte_identical() {
    let args = ["wavefunction", "--potential", "singular", "--beta", "0.5", "--samples", "21"];
    let a = wavebasis(&args);
    let b = wavebasis(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = wavebasis(&["spectrum", "--potential", "harmonic", "--format", "json"]);
    let d = wavebasis(&["spectrum", "--potential", "harmonic", "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["columns"][0]["name"], "n");
}

#[test]
fn every_table_has_a_unit_header() {
    for args in [
        vec!["spectrum", "--potential", "power_law", "--alpha", "1"],
        vec!["wavefunction", "--potential", "harmonic", "--samples", "5"],
        vec!["dispersion", "--drive-steps", "3"],
        vec!["dtmm-propagate", "--g", "1", "--samples", "4"],
    ] {
        let text = stdout(&wavebasis(&args));
        let header = text.lines().nth(1).unwrap();
        assert!(header.split(',').all(|h| h.contains(" [") && h.ends_with(']')), "{header}");
    }
}

#[test]
fn improved_wkb_sentinel_at_turning_points() {
    let out = wavebasis(&["wavefunction", "--potential", "singular", "--beta", "0.5", "--samples", "11"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let x = column(&header, &rows, "x");
    let improved = column(&header, &rows, "u_improved_wkb");
    let xi = x.last().copied().unwrap();
    assert!((x[0] + xi).abs() < 1e-15);
    assert!(improved[0].is_infinite() && improved[improved.len() - 1].is_infinite());
    assert!(improved[1..improved.len() - 1].iter().all(|v| v.is_finite()));
    let new = column(&header, &rows, "u_new_bases");
    assert!(new.iter().all(|v| v.is_finite()));
}

#[test]
fn constant_k_well_methods_coincide() {
    let out = wavebasis(&["wavefunction", "--potential", "hard_wall", "--n", "1", "--samples", "41", "--basis", "new,wkb,simple-wkb"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    let oracle = column(&header, &rows, "u_oracle");
    for name in ["u_new_bases", "u_simple_wkb", "u_improved_wkb"] {
        let col = column(&header, &rows, name);
        let dev = col.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-9, "{name}: {dev}");
    }
}

#[test]
fn dispersion_contrast_cell() {
    let out = wavebasis(&["dispersion", "--k1", "1", "--a", "1", "--k2", "3", "--b", "1", "--drive-min", "1", "--drive-max", "1", "--drive-steps", "1"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let method = header.iter().position(|h| h == "method").unwrap();
    let kappa = column(&header, &rows, "kappa_re");
    let of = |m: &str| kappa[rows.iter().position(|r| r[method] == m).unwrap()];
    assert!((of("new") - 5f64.sqrt()).abs() < 1e-12);
    assert!((of("wkb") - 2.0).abs() < 1e-10);
}

#[test]
fn free_propagation_is_a_straight_line() {
    let out = wavebasis(&["dtmm-propagate", "--x-min", "0", "--x-max", "2", "--state", "0.5,0,1.5,0", "--samples", "9"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let x = column(&header, &rows, "x");
    let u = column(&header, &rows, "u");
    let du = column(&header, &rows, "du");
    for i in 0..x.len() {
        assert!((u[i] - (0.5 + 1.5 * x[i])).abs() < 1e-14);
        assert!((du[i] - 1.5).abs() < 1e-14);
    }
}

#[test]
fn spec_file_input() {
    let dir = std::env::temp_dir().join(format!("wavebasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("well.json");
    std::fs::write(&path, r#"{"type":"power_law","U":1.0,"alpha":2.0}"#).unwrap();
    let out_path = dir.join("out.csv");
    let out = wavebasis(&["spectrum", "--spec", path.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let (header, rows) = parse_csv(&text);
    assert!((column(&header, &rows, "E_wkb_rule")[0] - 1.0).abs() < 1e-9);
    std::fs::write(&path, r#"{"type":"power_law","U":1.0,"alpha":2.0,"extra":1}"#).unwrap();
    let bad = wavebasis(&["spectrum", "--spec", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_and_error_json() {
    let bad_beta = wavebasis(&["spectrum", "--potential", "singular", "--beta", "1.5"]);
    assert_eq!(bad_beta.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&bad_beta.stderr).unwrap();
    assert_eq!(err["error"], "config");
    assert!(err["message"].as_str().unwrap().contains("beta"));

    assert_eq!(wavebasis(&["spectrum"]).status.code(), Some(2));
    assert_eq!(wavebasis(&["spectrum", "--bogus"]).status.code(), Some(2));
    assert_eq!(wavebasis(&["compare", "--suite", "nope"]).status.code(), Some(2));

    let short = wavebasis(&["spectrum", "--potential", "harmonic", "--x-max", "1.0", "--grid-points", "200"]);
    assert_eq!(short.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&short.stderr).unwrap();
    assert_eq!(err["error"], "truncation");
    assert_eq!(wavebasis(&["--help"]).status.code(), Some(0));
}

#[test]
fn compare_suite_passes() {
    let out = wavebasis(&["compare", "--suite", "paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let criteria = doc["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 9);
    assert!(criteria.iter().all(|c| c["pass"] == true));
}
