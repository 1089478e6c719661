use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bellissard"));
    cmd.env_remove("BELLISSARD_EXACT_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        matches!(out.status.code(), Some(0 | 2)),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn chain_file(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

#[test]
fn exit_status_corpus() {
    let chain = chain_file("m,K\n1,4\n2,\n");
    let bad_chain = chain_file("m,K\n1,4\n2,3\n");
    let chain_path = chain.path().to_str().unwrap();
    let bad_chain_path = bad_chain.path().to_str().unwrap();
    let corpus: Vec<(Vec<&str>, i32)> = vec![
        (
            vec!["gen", "--lambda", "2.1", "--backend", "exact", "-N", "10"],
            0,
        ),
        (vec!["gen", "--lambda", "3", "-N", "1000"], 0),
        (
            vec!["gen", "--lambda", "3", "--backend", "interval", "-N", "50"],
            0,
        ),
        (
            vec![
                "verify",
                "--lambda",
                "2.5",
                "--backend",
                "exact",
                "-N",
                "256",
            ],
            0,
        ),
        (vec!["verify", "--lambda", "3", "-N", "10000"], 0),
        (
            vec![
                "identities",
                "--lambda",
                "3",
                "--backend",
                "exact",
                "-N",
                "128",
            ],
            0,
        ),
        (
            vec![
                "conjecture",
                "--lambda",
                "2.1",
                "--backend",
                "exact",
                "-N",
                "64",
            ],
            2,
        ),
        (vec!["conjecture", "--lambda", "2.1", "-N", "64"], 2),
        (
            vec![
                "conjecture",
                "--lambda",
                "10",
                "--backend",
                "exact",
                "-N",
                "256",
            ],
            0,
        ),
        (
            vec![
                "splitting",
                "--lambda",
                "2.1",
                "--backend",
                "exact",
                "-N",
                "64",
                "-r",
                "2",
            ],
            2,
        ),
        (vec!["prop1", "--lambda", "3", "-N", "2048"], 0),
        (vec!["decay", "--lambda", "3", "-N", "4096"], 0),
        (
            vec![
                "limits", "--lambda", "3", "-N", "4200", "--p", "1,3", "--s", "1,2",
            ],
            0,
        ),
        (
            vec![
                "scan", "--lo", "2.05", "--hi", "2.3", "--step", "0.05", "-N", "256",
            ],
            2,
        ),
        (
            vec![
                "scan", "--lo", "6", "--hi", "6.5", "--step", "0.5", "-N", "256",
            ],
            0,
        ),
        (vec!["spectrum", "--lambda", "3", "-N", "33"], 0),
        (
            vec!["mathieu", "--coupling", "2", "--alpha", "0.618", "-N", "64"],
            0,
        ),
        (vec!["dyson", "--chain", chain_path], 0),
        (vec!["--help"], 0),
        (vec!["gen", "--lambda", "abc"], 1),
        (vec!["gen"], 1),
        (vec!["gen", "--lambda", "3", "--bogus"], 1),
        (vec![], 1),
        (vec!["frobnicate"], 1),
        (vec!["gen", "--lambda", "3", "--backend", "quad"], 1),
        (vec!["gen", "--lambda", "2", "-N", "10"], 1),
        (
            vec!["gen", "--lambda", "2", "-N", "10", "--unproven-regime"],
            0,
        ),
        (
            vec![
                "gen",
                "--lambda",
                "1",
                "-N",
                "10",
                "--unproven-regime",
                "--backend",
                "exact",
            ],
            1,
        ),
        (vec!["gen", "--lambda", "-1", "-N", "10"], 1),
        (
            vec!["gen", "--lambda", "3", "--backend", "exact", "-N", "100000"],
            1,
        ),
        (vec!["decay", "--lambda", "3", "-N", "64", "--p", "2"], 1),
        (
            vec!["decay", "--lambda", "3", "-N", "64", "--k-max", "9"],
            1,
        ),
        (vec!["splitting", "--lambda", "3", "-N", "64", "-r", "8"], 1),
        (
            vec!["scan", "--lo", "1.5", "--hi", "2.3", "--step", "0.05"],
            1,
        ),
        (vec!["scan", "--lo", "2.1", "--hi", "2.3", "--step", "0"], 1),
        (
            vec![
                "scan", "--lo", "2.1", "--hi", "9", "--step", "0.01", "--budget", "1000",
            ],
            1,
        ),
        (
            vec!["spectrum", "--lambda", "3", "-N", "8", "--eig-tol", "0"],
            1,
        ),
        (
            vec!["mathieu", "--coupling", "1", "--alpha", "0.5", "-N", "0"],
            1,
        ),
        (vec!["dyson", "--chain", bad_chain_path], 1),
        (vec!["dyson", "--chain", "/nonexistent/chain.csv"], 1),
    ];
    for (args, expected) in corpus {
        let out = run(&args);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(expected), "{args:?}: {stderr}");
        if expected == 1 {
            assert_eq!(
                stderr.trim_end().lines().count(),
                1,
                "{args:?}: one-line diagnostic, got {stderr}"
            );
        }
    }
}

#[test]
fn exact_cap_env_override() {
    let args = ["gen", "--lambda", "3", "--backend", "exact", "-N", "20"];
    let out = bin()
        .args(args)
        .env("BELLISSARD_EXACT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(args)
        .env("BELLISSARD_EXACT_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["gen", "--lambda", "3", "--backend", "exact", "-N", "9000"])
        .env("BELLISSARD_EXACT_CAP", "10000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_exact_rows() {
    let text = stdout(&["gen", "--lambda", "2.1", "--backend", "exact", "-N", "10"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,R_n_decimal,R_n_exact,residue_class");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[7], "6,0.9236641221374046,121/131,2");
    let r10: Vec<&str> = lines[11].split(',').collect();
    assert_eq!(r10[0], "10");
    assert_eq!(r10[3], "2");
    // reduced form of 2220581/2474681
    let (p, q) = r10[2].split_once('/').unwrap();
    let (p, q): (u128, u128) = (p.parse().unwrap(), q.parse().unwrap());
    assert_eq!(p * 2474681, 2220581 * q);
}

#[test]
fn gen_float_leaves_exact_column_empty() {
    let text = stdout(&["gen", "--lambda", "3", "-N", "3"]);
    assert_eq!(
        text,
        "n,R_n_decimal,R_n_exact,residue_class\n0,0.0,,0\n1,3.0,,1\n2,1.0,,2\n3,2.0,,3\n"
    );
}

#[test]
fn conjecture_json_lists_counterexample() {
    let out = run(&[
        "conjecture",
        "--lambda",
        "2.1",
        "--backend",
        "exact",
        "-N",
        "64",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let first_c2 = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["inequality"] == "c2-lower")
        .unwrap();
    assert_eq!(first_c2["n"], 2);
    assert_eq!(first_c2["index"], 10);
    assert_eq!(first_c2["rhs"], "121/131");
    assert!(first_c2["margin"].as_str().unwrap().starts_with('-'));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = run(&[
        "gen",
        "--lambda",
        "3",
        "-N",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["gen", "--lambda", "3", "-N", "5"]));
}

#[test]
fn spectrum_matrix_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    stdout(&[
        "spectrum",
        "--lambda",
        "2.1",
        "--backend",
        "exact",
        "-N",
        "3",
        "--matrix-out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,a_j,b_j");
    assert_eq!(lines[1], "1,0.0,1.0");
    assert!(lines[2].starts_with("2,0.0,1.0488"));
    assert_eq!(lines[3], "3,0.0,");
}

#[test]
fn determinism() {
    let chain = chain_file("m,K\n1,1\n2,1\n1,1\n2,\n");
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "scan", "--lo", "2.05", "--hi", "2.5", "--step", "0.05", "-N", "512", "--format",
            "json",
        ],
        vec!["spectrum", "--lambda", "3", "-N", "256", "--format", "json"],
        vec![
            "limits", "--lambda", "3", "-N", "2100", "--p", "1,2,3", "--s", "1,2", "--format",
            "json",
        ],
        vec![
            "conjecture",
            "--lambda",
            "2.1",
            "--backend",
            "exact",
            "-N",
            "200",
            "--format",
            "json",
        ],
        vec![
            "dyson",
            "--chain",
            chain.path().to_str().unwrap(),
            "--format",
            "json",
        ],
    ];
    for args in runs {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

// Documented JSON schemas. Deserializing with unknown fields denied and
// re-serializing must reproduce the emitted document.

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaJson {
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenJson {
    lambda: LambdaJson,
    backend: String,
    #[serde(rename = "N")]
    n: usize,
    values: Vec<GenRowJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenRowJson {
    n: usize,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    residue_class: usize,
}

/// Float numbers, exact `"p/q"` strings, or interval `{lo, hi}` objects.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Float(f64),
    Exact(String),
    Interval { lo: String, hi: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsJson {
    kind: String,
    lambda: LambdaJson,
    backend: String,
    checked_count: usize,
    violations: Vec<ViolationJson>,
    attainments: Vec<AttainmentJson>,
    undecided: Vec<UndecidedJson>,
    regime_warning: bool,
    tolerance: f64,
    warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ViolationJson {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    index: usize,
    inequality: String,
    lhs: ScalarJson,
    rhs: ScalarJson,
    margin: ScalarJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttainmentJson {
    n: usize,
    index: usize,
    inequality: String,
    kind: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UndecidedJson {
    n: usize,
    index: usize,
    inequality: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentityJson {
    backend: String,
    tolerance: f64,
    families: Vec<FamilyJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    family: String,
    checked: usize,
    max_residual: f64,
    exact_zero: bool,
    first_failing: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanJson {
    backend: String,
    n_max: usize,
    rows: Vec<ScanRowJson>,
    c2_region: Option<C2RegionJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanRowJson {
    lambda: String,
    lambda_exact: String,
    first_violation: BTreeMap<String, Option<usize>>,
    violated: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct C2RegionJson {
    lo: String,
    hi: String,
    rows: usize,
    contiguous: bool,
    starts_at_grid_start: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConvergenceJson {
    p: usize,
    s: usize,
    k_max: usize,
    limit: ScalarJson,
    samples: Vec<SampleJson>,
    monotone_tail: bool,
    estimated_rate: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleJson {
    k: usize,
    index: usize,
    value: ScalarJson,
    deviation: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UniformityJson {
    pairs: Vec<(usize, usize)>,
    k_max: usize,
    rows: Vec<UniformityRowJson>,
    reports: Vec<ConvergenceJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UniformityRowJson {
    k: usize,
    max_deviation: f64,
    worst: (usize, usize),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumJson {
    provenance: String,
    #[serde(rename = "N")]
    n: usize,
    boundary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<LambdaJson>,
    eigenvalues: Vec<f64>,
    gaps: Vec<GapJson>,
    ids: Vec<IdsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode_frequencies: Option<Vec<ModeJson>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GapJson {
    lo: f64,
    hi: f64,
    width: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdsJson {
    energy: f64,
    ids: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeJson {
    eigenvalue: f64,
    frequency: Option<f64>,
    unstable: bool,
}

fn json_round_trip<T: Serialize + for<'de> Deserialize<'de>>(args: &[&str]) -> T {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    let text = stdout(&args);
    let original: Value = serde_json::from_str(&text).unwrap();
    let typed: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert_eq!(serde_json::to_value(&typed).unwrap(), original, "{args:?}");
    typed
}

#[test]
fn json_schemas_round_trip() {
    let chain = chain_file("m,K\n1,1\n2,1\n1,\n");
    let chain_path = chain.path().to_str().unwrap();
    for backend in ["float", "exact", "interval"] {
        let g: GenJson =
            json_round_trip(&["gen", "--lambda", "2.1", "--backend", backend, "-N", "20"]);
        assert_eq!(g.values.len(), 21);
        json_round_trip::<BoundsJson>(&[
            "verify",
            "--lambda",
            "2.1",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<BoundsJson>(&[
            "conjecture",
            "--lambda",
            "2.1",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<BoundsJson>(&[
            "splitting",
            "--lambda",
            "2.1",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<BoundsJson>(&[
            "prop1",
            "--lambda",
            "2.1",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<IdentityJson>(&[
            "identities",
            "--lambda",
            "2.1",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<ConvergenceJson>(&[
            "decay",
            "--lambda",
            "3",
            "--backend",
            backend,
            "-N",
            "256",
        ]);
        json_round_trip::<UniformityJson>(&[
            "limits",
            "--lambda",
            "3",
            "--backend",
            backend,
            "-N",
            "260",
            "--p",
            "1,3",
            "--s",
            "1,2",
        ]);
        json_round_trip::<ScanJson>(&[
            "scan",
            "--lo",
            "2.05",
            "--hi",
            "2.2",
            "--step",
            "0.05",
            "--backend",
            backend,
            "-N",
            "64",
        ]);
        json_round_trip::<SpectrumJson>(&[
            "spectrum",
            "--lambda",
            "3",
            "--backend",
            backend,
            "-N",
            "31",
        ]);
    }
    let s: SpectrumJson = json_round_trip(&["dyson", "--chain", chain_path]);
    assert_eq!(s.provenance, "dyson");
    assert_eq!(s.mode_frequencies.unwrap().len(), 3);
    json_round_trip::<SpectrumJson>(&[
        "mathieu",
        "--coupling",
        "2",
        "--alpha",
        "0.618",
        "-N",
        "40",
    ]);
}

/// Documented CSV column orders; every cell parses as its column's type.
#[derive(Clone, Copy)]
enum Cell {
    Int,
    OptInt,
    Float,
    OptFloat,
    Bool,
    Text,
    /// Exact `p/q`, interval `[p/q,r/s]`, or a float.
    Scalar,
    OptScalar,
}

fn check_cell(kind: Cell, cell: &str) -> bool {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let ratio = |t: &str| {
        t.split_once('/').map_or(false, |(p, q)| {
            digits(p.strip_prefix('-').unwrap_or(p)) && digits(q)
        })
    };
    let scalar = |c: &str| {
        c.parse::<f64>().is_ok()
            || ratio(c)
            || c.strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .and_then(|t| t.split_once(','))
                .map_or(false, |(lo, hi)| ratio(lo) && ratio(hi))
    };
    match kind {
        Cell::Int => cell.parse::<usize>().is_ok(),
        Cell::OptInt => cell.is_empty() || cell.parse::<usize>().is_ok(),
        Cell::Float => cell.parse::<f64>().is_ok(),
        Cell::OptFloat => cell.is_empty() || cell.parse::<f64>().is_ok(),
        Cell::Bool => cell == "true" || cell == "false",
        Cell::Text => !cell.is_empty(),
        Cell::Scalar => scalar(cell),
        Cell::OptScalar => cell.is_empty() || scalar(cell),
    }
}

fn csv_round_trip(args: &[&str], header: &[&str], kinds: &[Cell]) -> usize {
    let text = stdout(args);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        header,
        "{args:?}"
    );
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).unwrap();
    let mut rows = 0;
    for record in reader.records() {
        let record = record.unwrap();
        assert_eq!(record.len(), kinds.len());
        for (cell, kind) in record.iter().zip(kinds) {
            assert!(check_cell(*kind, cell), "{args:?}: bad cell {cell:?}");
        }
        writer.write_record(&record).unwrap();
        rows += 1;
    }
    assert_eq!(
        String::from_utf8(writer.into_inner().unwrap()).unwrap(),
        text,
        "{args:?}"
    );
    rows
}

#[test]
fn csv_schemas_round_trip() {
    use Cell::*;
    let chain = chain_file("m,K\n1,1\n2,1\n1,\n");
    for backend in ["float", "exact", "interval"] {
        let rows = csv_round_trip(
            &["gen", "--lambda", "2.1", "--backend", backend, "-N", "30"],
            &["n", "R_n_decimal", "R_n_exact", "residue_class"],
            &[Int, Float, OptScalar, Int],
        );
        assert_eq!(rows, 31);
        let rows = csv_round_trip(
            &[
                "conjecture",
                "--lambda",
                "2.1",
                "--backend",
                backend,
                "-N",
                "64",
            ],
            &["inequality", "n", "k", "index", "lhs", "rhs", "margin"],
            &[Text, Int, OptInt, Int, Scalar, Scalar, Scalar],
        );
        assert!(rows > 0);
        csv_round_trip(
            &[
                "splitting",
                "--lambda",
                "2.1",
                "--backend",
                backend,
                "-N",
                "64",
            ],
            &["inequality", "n", "k", "index", "lhs", "rhs", "margin"],
            &[Text, Int, OptInt, Int, Scalar, Scalar, Scalar],
        );
        csv_round_trip(
            &["decay", "--lambda", "3", "--backend", backend, "-N", "256"],
            &["k", "index", "value", "deviation"],
            &[Int, Int, Scalar, Float],
        );
    }
    csv_round_trip(
        &["identities", "--lambda", "3", "-N", "100"],
        &[
            "family",
            "checked",
            "max_residual",
            "exact_zero",
            "first_failing",
        ],
        &[Text, Int, Float, Bool, OptInt],
    );
    csv_round_trip(
        &[
            "limits", "--lambda", "3", "-N", "300", "--p", "1,2", "--s", "3,4",
        ],
        &["p", "s", "k", "index", "value", "deviation"],
        &[Int, Int, Int, Int, Scalar, Float],
    );
    let rows = csv_round_trip(
        &[
            "scan", "--lo", "2.05", "--hi", "2.5", "--step", "0.05", "-N", "128",
        ],
        &[
            "lambda",
            "lambda_exact",
            "c1-lower",
            "c1-upper",
            "c2-lower",
            "c2-upper",
            "c3-lower",
            "c3-upper",
            "c4-lower",
            "c4-upper",
            "violated",
        ],
        &[
            Float, Scalar, OptInt, OptInt, OptInt, OptInt, OptInt, OptInt, OptInt, OptInt, Bool,
        ],
    );
    assert_eq!(rows, 10);
    let rows = csv_round_trip(
        &["spectrum", "--lambda", "3", "-N", "17"],
        &["k", "eigenvalue"],
        &[Int, Float],
    );
    assert_eq!(rows, 17);
    csv_round_trip(
        &["mathieu", "--coupling", "1", "--alpha", "0.3", "-N", "12"],
        &["k", "eigenvalue"],
        &[Int, Float],
    );
    csv_round_trip(
        &["dyson", "--chain", chain.path().to_str().unwrap()],
        &["k", "eigenvalue", "frequency", "unstable"],
        &[Int, Float, OptFloat, Bool],
    );
}

#[test]
fn scan_flags_low_region() {
    let text = stdout(&[
        "scan", "--lo", "2.05", "--hi", "2.5", "--step", "0.05", "-N", "1000", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"][1]["lambda_exact"], "21/10");
    assert!(v["rows"][1]["first_violation"]["c2-lower"].is_u64());
    assert_eq!(v["c2_region"]["contiguous"], true);
}

#[test]
fn dyson_fixed_chain_is_dirichlet_laplacian() {
    // 10 unit masses, ends clamped: interior Laplacian of size 8.
    let mut text = String::from("m,K\n");
    for _ in 0..9 {
        text.push_str("1,1\n");
    }
    text.push_str("1,\n");
    let chain = chain_file(&text);
    let out = stdout(&[
        "dyson",
        "--chain",
        chain.path().to_str().unwrap(),
        "--boundary",
        "fixed",
        "--format",
        "json",
    ]);
    let v: SpectrumJson = serde_json::from_str(&out).unwrap();
    assert_eq!(v.n, 8);
    let mut freqs: Vec<f64> = v
        .mode_frequencies
        .unwrap()
        .iter()
        .map(|m| m.frequency.unwrap())
        .collect();
    freqs.sort_by(f64::total_cmp);
    for (k, e) in freqs.iter().enumerate() {
        let expect = 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 18.0).sin();
        assert!((e - expect).abs() < 1e-9, "{k}: {e} vs {expect}");
    }
}
