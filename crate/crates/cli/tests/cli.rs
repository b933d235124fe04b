//! End-to-end tests against the compiled binary: golden outputs, JSON
//! round trips, plain/JSON agreement, and exit codes.

use std::collections::HashMap;
use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("spawn spectra")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

fn group_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write group file");
    f
}

#[test]
fn sz_plain_golden() {
    let o = spectra(&["sz", "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q=8\norder=29120\nmu=[4,5,7,13]\nt=4\n");

    let o = spectra(&["sz", "--alpha", "1"]);
    assert_eq!(stdout(&o), "q=2\norder=20\nmu=[4,5]\nt=2\n");
}

#[test]
fn sz_json_agrees_with_plain() {
    for alpha in ["3", "5", "27"] {
        let plain = spectra(&["sz", "--alpha", alpha]);
        let js = spectra(&["sz", "--alpha", alpha, "--format", "json"]);
        assert_eq!(code(&plain), 0);
        assert_eq!(code(&js), 0);
        let v = json(&js);

        let text = stdout(&plain);
        let fields: HashMap<&str, &str> =
            text.lines().map(|l| l.split_once('=').unwrap()).collect();
        assert_eq!(fields["q"], v["q"].to_string());
        assert_eq!(fields["order"], v["order"].as_str().unwrap());
        assert_eq!(fields["t"], v["t"].to_string());
        let mu = v["mu"]
            .as_array()
            .unwrap()
            .iter()
            .map(Value::to_string)
            .collect::<Vec<_>>()
            .join(",");
        assert_eq!(fields["mu"], format!("[{mu}]"));
    }

    let v = json(&spectra(&["sz", "--alpha", "5", "--format", "json"]));
    assert_eq!(v["q"], 32);
    assert_eq!(v["order"], "32537600");
    assert_eq!(v["mu"], serde_json::json!([4, 25, 31, 41]));
    assert_eq!(v["t"], 4);
}

#[test]
fn sz_rejects_bad_alpha() {
    let o = spectra(&["sz", "--alpha", "4"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("must be odd"));

    let o = spectra(&["sz", "--alpha", "47"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn sz_square_golden() {
    let o = spectra(&["sz-square", "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q=8\nmu=[20,28,35,52,65,91]\n");
}

#[test]
fn recognize_square_classification() {
    let o = spectra(&["recognize-square", "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q=8\ncount=1\nsquare=[20,28,35,52,65,91]\n");

    let v = json(&spectra(&[
        "recognize-square",
        "--alpha",
        "5",
        "--format",
        "json",
    ]));
    assert_eq!(v["q"], 32);
    assert_eq!(v["count"], 4);
    let groups = v["groups"].as_array().unwrap();
    let labels: Vec<&str> = groups
        .iter()
        .map(|g| g["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["square", "X1", "X2", "X4"]);
    let square_mu = serde_json::json!([100, 124, 164, 775, 1025, 1271]);
    for g in groups {
        assert_eq!(g["mu"], square_mu);
    }
}

#[test]
fn recognize_square_twisted() {
    let o = spectra(&["recognize-square", "--alpha", "5", "--p", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "q=32\np=5\nmu=[100,124,164,775,1025,1271]\nisospectral=true\nouter_classes=3\nclass_reps=[1,2,4]\n"
    );

    let v = json(&spectra(&[
        "recognize-square",
        "--alpha",
        "15",
        "--p",
        "3",
        "--format",
        "json",
    ]));
    assert_eq!(v["isospectral"], false);
    assert_eq!(v["outer_classes"], 2);
    assert_eq!(v["class_reps"], serde_json::json!([1, 2]));

    let o = spectra(&["recognize-square", "--alpha", "5", "--p", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not a prime divisor"));
}

#[test]
fn spectrum_reads_group_files() {
    let f = group_file(r#"{"kind":"frobenius","m":7,"t":2,"k":3}"#);
    let o = spectra(&["spectrum", "--group", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "mu=[3,7]\n");

    let f = group_file(
        r#"{"kind":"product","factors":[{"kind":"frobenius","m":7,"t":2,"k":3},{"kind":"frobenius","m":13,"t":3,"k":3}]}"#,
    );
    let v = json(&spectra(&[
        "spectrum",
        "--group",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(v, serde_json::json!({ "mu": [21, 39, 91] }));

    let f = group_file(r#"{"kind":"perm","degree":4,"gens":[[1,0,2,3],[1,2,3,0]]}"#);
    let o = spectra(&["spectrum", "--group", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "mu=[3,4]\n");
}

#[test]
fn spectrum_error_paths() {
    let f = group_file(r#"{"kind":"perm","degree":4,"gens":[[1,0,2,3],[1,2,3,0]]}"#);
    let o = spectra(&[
        "spectrum",
        "--group",
        f.path().to_str().unwrap(),
        "--cap",
        "10",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cap exceeded"));

    let o = spectra(&["spectrum", "--group", "/nonexistent/group.json"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("/nonexistent/group.json"));

    let f = group_file("not json");
    let o = spectra(&["spectrum", "--group", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("parsing"));
}

#[test]
fn criterion_golden() {
    let o = spectra(&["criterion", "--mu", "20,28,35,52,65,91"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "witness=2,5,7,13\ngm=false\n");

    let v = json(&spectra(&[
        "criterion",
        "--mu",
        "20,28,35,52,65,91",
        "--format",
        "json",
    ]));
    assert_eq!(
        v,
        serde_json::json!({ "witness": [2, 5, 7, 13], "gm": false })
    );

    // all-odd witness where no prime divides another minus one
    let o = spectra(&["criterion", "--mu", "33,51,177,187,649,1003"]);
    assert_eq!(stdout(&o), "witness=3,11,17,59\ngm=true\n");

    let o = spectra(&["criterion", "--mu", "21,39,91"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "witness=none\n");
    let v = json(&spectra(&[
        "criterion",
        "--mu",
        "21,39,91",
        "--format",
        "json",
    ]));
    assert_eq!(v, serde_json::json!({ "witness": null, "gm": null }));

    let o = spectra(&["criterion", "--mu", "4,x"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn prime_graph_outputs() {
    let o = spectra(&["prime-graph", "--mu", "4,5,7,13", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "graph GK {\n  2;\n  5;\n  7;\n  13;\n}\n");

    let o = spectra(&["prime-graph", "--mu", "12", "--format", "dot"]);
    assert_eq!(stdout(&o), "graph GK {\n  2;\n  3;\n  2 -- 3;\n}\n");

    let o = spectra(&["prime-graph", "--mu", "4,5,7,13"]);
    assert_eq!(stdout(&o), "vertices=[2,5,7,13]\nedges=[]\n");
    let o = spectra(&["prime-graph", "--mu", "12"]);
    assert_eq!(stdout(&o), "vertices=[2,3]\nedges=[2-3]\n");

    let v = json(&spectra(&["prime-graph", "--mu", "12", "--format", "json"]));
    assert_eq!(
        v,
        serde_json::json!({ "vertices": [2, 3], "edges": [[2, 3]] })
    );
}

#[test]
fn zsigmondy_outputs() {
    let o = spectra(&["zsigmondy", "--base", "2", "--exp", "20"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "base=2\nexp=20\nprime=41\nexception=none\n");

    let v = json(&spectra(&[
        "zsigmondy",
        "--base",
        "2",
        "--exp",
        "20",
        "--format",
        "json",
    ]));
    assert_eq!(
        v,
        serde_json::json!({ "base": 2, "exp": 20, "prime": 41, "exception": null })
    );

    let o = spectra(&["zsigmondy", "--base", "2", "--exp", "6"]);
    assert_eq!(stdout(&o), "base=2\nexp=6\nprime=none\nexception=q2-n6\n");
    let v = json(&spectra(&[
        "zsigmondy",
        "--base",
        "2",
        "--exp",
        "6",
        "--format",
        "json",
    ]));
    assert_eq!(v["exception"], "q2-n6");

    for base in ["7", "15"] {
        let v = json(&spectra(&[
            "zsigmondy",
            "--base",
            base,
            "--exp",
            "2",
            "--format",
            "json",
        ]));
        assert_eq!(v["exception"], "mersenne-n2");
        assert_eq!(v["prime"], Value::Null);
    }

    let o = spectra(&["zsigmondy", "--base", "1", "--exp", "5"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_single_suite() {
    let o = spectra(&["verify", "--suite", "bounds"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("suite bounds: PASS"));

    let v = json(&spectra(&[
        "verify",
        "--suite",
        "sz8-master",
        "--format",
        "json",
    ]));
    assert_eq!(v["suite"], "sz8-master");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true));

    let o = spectra(&["verify", "--suite", "nope"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("unknown verification suite"));
}

#[test]
fn verify_all_runs_every_suite() {
    let o = spectra(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let reports = v.as_array().unwrap();
    let names: Vec<&str> = reports
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "sz8-master",
            "solvable-sweep",
            "recognition",
            "zsigmondy",
            "bounds"
        ]
    );
    for r in reports {
        assert!(r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
    }
}

#[test]
fn usage_and_format_gating() {
    assert_eq!(code(&spectra(&["--help"])), 0);
    assert_eq!(code(&spectra(&["--version"])), 0);
    assert_eq!(code(&spectra(&[])), 1);
    assert_eq!(code(&spectra(&["frobnicate"])), 1);
    assert_eq!(code(&spectra(&["sz"])), 1); // missing --alpha

    let o = spectra(&["sz", "--alpha", "3", "--format", "dot"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("only valid for prime-graph"));
}
