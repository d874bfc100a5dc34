use std::process::{Command, Output};

use sjk_core::Poly;

fn sjk(args: &[&str]) -> Output {
    sjk_env(args, &[])
}

fn sjk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sjk"));
    cmd.args(args).env_remove("SJK_MAX_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("failed to launch sjk")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

#[test]
fn documented_examples() {
    let out = sjk(&["poly", "--family", "sj", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim_end(), "x^4 - 6/5 x^2 + 1/5");

    let out = sjk(&["poly", "--family", "hermite", "--n", "0"]);
    assert_eq!(stdout(&out).trim_end(), "1");

    let out = sjk(&[
        "lacunary", "--family", "sj", "--K", "2", "--L", "0", "--order", "2", "--check",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim_end(), "closed-form == oracle: PASS");
}

#[test]
fn construction_methods_agree() {
    let closed = stdout(&sjk(&["poly", "--family", "sj", "--n", "7"]));
    for method in ["resolvent", "exponential", "umbral"] {
        let out = sjk(&["poly", "--family", "sj", "--n", "7", "--method", method]);
        assert_eq!(code(&out), 0, "{method}");
        assert_eq!(stdout(&out), closed, "{method}");
    }
}

#[test]
fn json_output_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["poly", "--family", "sj", "--n", "6"],
        &["poly", "--family", "hermite", "--n", "5"],
        &[
            "poly", "--family", "jacobi", "--n", "3", "--alpha", "1/2", "--beta", "-1/3",
        ],
        &["connect", "--family", "hermite", "--M", "6", "--n", "2"],
    ];
    for args in cases {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let out = sjk(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        let text = stdout(&out);
        let json = text.trim_end();
        let parsed = Poly::from_json(json).unwrap();
        assert_eq!(parsed.to_json(), json, "{args:?}");
    }
}

#[test]
fn series_json_has_one_polynomial_per_order() {
    let out = sjk(&["egf", "--family", "sj", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["parameter"], "lambda");
    assert_eq!(v["order"], 4);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 5);
    for c in coeffs {
        Poly::from_json(&c.to_string()).unwrap();
    }
}

#[test]
fn connection_row_reconstructs_monomial() {
    let out = sjk(&["connect", "--family", "sj", "--M", "6", "--reconstruct"]);
    assert_eq!(stdout(&out).trim_end(), "x^6");
    let out = sjk(&["connect", "--family", "sj", "--M", "4"]);
    assert_eq!(stdout(&out), "n=0: 1\nn=1: 0\nn=2: 6/5\nn=3: 0\nn=4: 1\n");
}

#[test]
fn verify_reports_each_suite() {
    let out = sjk(&["verify", "table", "lacunary", "--jobs", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("table: ") && text.contains("lacunary: "),
        "{text}"
    );
    assert!(!text.contains("FAIL"), "{text}");

    let out = sjk(&["verify", "eigen", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["suite"], "eigen");
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn max_order_env_caps_parameters() {
    let args = ["egf", "--family", "hermite", "--order", "10"];
    assert_eq!(code(&sjk_env(&args, &[("SJK_MAX_ORDER", "10")])), 0);
    let out = sjk_env(&args, &[("SJK_MAX_ORDER", "9")]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("SJK_MAX_ORDER"));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["poly", "--family", "sj", "--n", "3"], 0),
        (
            &["poly", "--family", "sj-beta", "--n", "2", "--beta", "1/2"],
            0,
        ),
        (
            &[
                "poly", "--family", "hermite", "--n", "3", "--format", "latex",
            ],
            0,
        ),
        (
            &[
                "egf", "--family", "sj-beta", "--beta", "3/2", "--order", "2",
            ],
            0,
        ),
        (
            &[
                "lacunary", "--family", "hermite", "--K", "3", "--L", "2", "--order", "2",
                "--check",
            ],
            0,
        ),
        (
            &[
                "lacunary", "--family", "sj", "--K", "2", "--L", "1", "--order", "3",
            ],
            0,
        ),
        (&["connect", "--family", "hermite", "--M", "5"], 0),
        (&["react", "--N0", "4", "--order", "3", "--check"], 0),
        (&["table", "--family", "sj", "--max", "5"], 0),
        (&["--help"], 0),
        (&["--version"], 0),
        // usage errors
        (&[], 1),
        (&["bogus"], 1),
        (&["poly", "--family", "sj"], 1),
        (&["poly", "--family", "laguerre", "--n", "2"], 1),
        (&["poly", "--family", "sj", "--n", "-2"], 1),
        (&["poly", "--family", "jacobi", "--n", "2"], 1),
        (
            &[
                "poly", "--family", "jacobi", "--n", "2", "--alpha", "1/0", "--beta", "0",
            ],
            1,
        ),
        (&["poly", "--family", "sj", "--n", "65"], 1),
        (
            &[
                "poly", "--family", "hermite", "--n", "3", "--method", "umbral",
            ],
            1,
        ),
        (
            &["poly", "--family", "sj", "--n", "3", "--format", "yaml"],
            1,
        ),
        // domain and parameter errors
        (
            &[
                "poly", "--family", "jacobi", "--n", "2", "--alpha", "-1", "--beta", "0",
            ],
            1,
        ),
        (
            &[
                "egf", "--family", "sj-beta", "--beta", "1/3", "--order", "2",
            ],
            1,
        ),
        (&["egf", "--family", "jacobi", "--order", "2"], 1),
        (
            &["lacunary", "--family", "sj", "--K", "0", "--order", "2"],
            1,
        ),
        (
            &["lacunary", "--family", "sj", "--K", "10", "--order", "10"],
            1,
        ),
        (&["connect", "--family", "sj", "--M", "3", "--n", "4"], 1),
        (&["verify", "no-such-suite"], 1),
        (&["verify", "--jobs", "0"], 1),
        (&["verify", "table", "--format", "latex"], 1),
    ];
    for (args, expected) in cases {
        let out = sjk(args);
        assert_eq!(
            code(&out),
            *expected,
            "args {args:?}; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if *expected == 1 {
            assert!(
                out.stdout.is_empty(),
                "errors must not write to stdout: {args:?}"
            );
            assert!(!out.stderr.is_empty(), "errors need a diagnostic: {args:?}");
        }
    }
}
