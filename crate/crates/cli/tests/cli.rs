use std::process::{Command, Output};

use apolar::poly::{parse_poly, VariableSet};
use serde_json::Value;

const IKEDA: &str = "x0*x2^3*x3 + x1*x2*x3^3 + x0^3*x1^2";

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = apolar(&all);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    apolar(args).status.code().expect("exit code")
}

#[test]
fn hvector_of_the_smallest_perazzo_cubic() {
    let r = json(&["hvector", "x0*u^2+x1*u*v+x2*v^2"]);
    assert_eq!(r["schema"], "apolar-report/1");
    assert_eq!(r["result"]["h_vector"], serde_json::json!([1, 5, 5, 1]));
    assert_eq!(
        r["result"]["perazzo"]["exact"],
        serde_json::json!([1, 5, 5, 1])
    );
}

#[test]
fn ikeda_fails_wlp_in_degree_three() {
    let r = json(&["wlp", "--vars", "x0,x1,x2,x3", IKEDA]);
    assert_eq!(r["result"]["holds"], false);
    assert_eq!(r["result"]["failing_degree"], 3);
    // verdict content does not change the exit code
    assert_eq!(code(&["wlp", "--vars", "x0,x1,x2,x3", IKEDA]), 0);
}

#[test]
fn normal_forms_are_minimal_and_have_wlp() {
    let r = json(&[
        "survey",
        "--degrees",
        "5..5",
        "--samples",
        "0",
        "--normal-forms",
    ]);
    let rows = r["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let mut cases: Vec<&str> = rows
        .iter()
        .map(|row| row["case"].as_str().unwrap())
        .collect();
    cases.sort();
    assert_eq!(cases, ["I", "II", "III"]);
    for row in rows {
        assert_eq!(row["wlp"], true);
        assert_eq!(row["h_vector"], serde_json::json!([1, 5, 6, 6, 5, 1]));
    }
    assert_eq!(r["result"]["violations"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["hvector", "x0*u^2+"]), 3);
    assert_eq!(code(&["hvector", "x0*u^2+w"]), 3);
    assert_eq!(code(&["hvector", "x0*u^2+x1"]), 3);
    assert_eq!(code(&["hvector", "--vars", "x0", "x0^40"]), 4);
    assert_eq!(
        code(&["hvector", "--vars", "x0", "--max-degree", "50", "x0^40"]),
        0
    );
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["hvector"]), 2);
    assert_eq!(code(&["survey", "--degrees", "nine"]), 2);
    assert_eq!(code(&["survey", "--degrees", "5..40", "--samples", "1"]), 4);
    assert_eq!(code(&["classify", "x0*u^3+x1*u^2*v+x2*v^3"]), 2);
    assert_eq!(code(&["waring", "x0*u^3"]), 3);
    assert_eq!(code(&["hvector", "--vars", "x0,x0", "x0"]), 3);
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("apolar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "x0*u^2 + x1*u*v + x2*v^2\n").unwrap();
    let p = path.to_str().unwrap();
    let r = json(&["hvector", "--file", p]);
    assert_eq!(r["result"]["h_vector"], serde_json::json!([1, 5, 5, 1]));
    assert_eq!(code(&["hvector", "--file", p, "x0"]), 2);
    assert_eq!(
        code(&["hvector", "--file", dir.join("missing").to_str().unwrap()]),
        2
    );

    let out = dir.join("report.json");
    let o = out.to_str().unwrap();
    let r = json(&["hvector", "--file", p, "--out", o]);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved["result"], r["result"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn polynomials_in_reports_round_trip() {
    let perazzo = VariableSet::perazzo();
    let f = "u^4*x0 + (u^3*v + 2*u*v^3)*x1 + v^4*x2 + u^2*v^3";
    let r = json(&["hvector", f]);
    let echoed = parse_poly(r["input"].as_str().unwrap(), &perazzo).unwrap();
    assert_eq!(echoed, parse_poly(f, &perazzo).unwrap());

    let r = json(&["relation", "x0*u^3+x1*u^2*v+x2*v^3"]);
    let rel_vars = VariableSet::new(
        r["result"]["relation_vars"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string()),
    )
    .unwrap();
    let rel = r["result"]["relation"].as_str().unwrap();
    assert_eq!(parse_poly(rel, &rel_vars).unwrap().to_string(), rel);
    for p in r["result"]["forms"].as_array().unwrap() {
        let p = p.as_str().unwrap();
        assert_eq!(
            parse_poly(p, &VariableSet::binary()).unwrap().to_string(),
            p
        );
    }

    let r = json(&["ann", "-t", "2", "x0*u^2+x1*u*v+x2*v^2"]);
    let dual = perazzo.dual();
    for op in r["result"]["operators"].as_array().unwrap() {
        let op = op.as_str().unwrap();
        assert_eq!(parse_poly(op, &dual).unwrap().to_string(), op);
    }

    // the decomposition, read back, sums to the input
    let f = "u^5 + 3*(u+v)^5 - (u-v)^5";
    let r = json(&["waring", "--vars", "u,v", f]);
    let parts = r["result"]["decomposition"].as_array().unwrap();
    assert_eq!(parts.len() as u64, r["result"]["rank"].as_u64().unwrap());
    let sum: Vec<String> = parts
        .iter()
        .map(|p| {
            format!(
                "{}*({})^5",
                p["coefficient"].as_str().unwrap(),
                p["form"].as_str().unwrap()
            )
        })
        .collect();
    let binary = VariableSet::binary();
    assert_eq!(
        parse_poly(&sum.join(" + "), &binary).unwrap(),
        parse_poly(f, &binary).unwrap()
    );
}

#[test]
fn identical_config_gives_identical_payload() {
    let args = [
        "survey",
        "--degrees",
        "4..6",
        "--samples",
        "4",
        "--seed",
        "7",
    ];
    let a = json(&args);
    let mut more = args.to_vec();
    more.extend(["--jobs", "1"]);
    let b = json(&more);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["seed"], 7);

    let c = json(&[
        "survey",
        "--degrees",
        "4..6",
        "--samples",
        "4",
        "--seed",
        "8",
    ]);
    assert_ne!(a["result"]["rows"], c["result"]["rows"]);
}

#[test]
fn survey_csv_has_one_row_per_sample() {
    let out = apolar(&[
        "survey",
        "--degrees",
        "4..6",
        "--samples",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "degree");
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| &r[6] == "true"));
}

#[test]
fn hessian_matrix_only_on_request() {
    let r = json(&["hessian", "-t", "1", "x0*u^2+x1*u*v+x2*v^2"]);
    assert!(r["result"].get("matrix").is_none());
    assert_eq!(r["result"]["vanishes"], true);
    let r = json(&["hessian", "-t", "1", "--matrix", "x0*u^2+x1*u*v+x2*v^2"]);
    assert_eq!(r["result"]["matrix"].as_array().unwrap().len(), 5);
    assert_eq!(r["result"]["det"], "0");
}

#[test]
fn text_reports_echo_the_seed() {
    let out = apolar(&["slp", "--seed", "42", "x0*u^2+x1*u*v+x2*v^2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("seed 42"), "{text}");
    assert!(text.contains("hessian of order 1 vanishes"), "{text}");
}
