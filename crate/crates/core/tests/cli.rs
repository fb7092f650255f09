use std::process::{Command, Output};

fn rootheights(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootheights"))
        .args(args)
        .env_remove("ROOTHEIGHTS_WEYL_CAP")
        .env_remove("ROOTHEIGHTS_PARTITION_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn roots_json_lists_heights() {
    let out = rootheights(&["roots", "--family", "A", "--rank", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        concat!(
            r#"{"system":"A2","rank":2,"cartan":[[2,-1],[-1,2]],"symmetrizer":[1,1],"#,
            r#""positive_roots":[{"root":[0,1],"height":1},{"root":[1,0],"height":1},{"root":[1,1],"height":2}],"#,
            r#""theta":[1,1],"rho":["1","1"],"height_counts":[2,1]}"#,
            "\n"
        )
    );
}

#[test]
fn roots_tsv() {
    let out = rootheights(&["roots", "--family", "B", "--rank", "2", "--format", "tsv"]);
    assert_eq!(stdout(&out), "0,1\t1\n1,0\t1\n1,1\t2\n1,2\t3\n");
}

#[test]
fn xi_coeff_prints_ascending_array() {
    let out = rootheights(&["xi-coeff", "--family", "A", "--rank", "2", "--gamma", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"system\":\"A2\",\"gamma\":[1,1],\"height_bound\":2,\"coeff\":[0,-1,1],\"pretty\":\"t^2 - t\"}\n"
    );
}

#[test]
fn verify_g2_all_exits_zero() {
    let out = rootheights(&["verify", "--family", "G", "--rank", "2", "--target", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["system"], "G2");
    assert_eq!(v["pass"], true);
    let ids: std::collections::BTreeSet<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    for id in [
        "prop1",
        "fact1",
        "fact2",
        "telescope",
        "kostka.exponents",
        "duality.conjugate",
        "constant_term",
    ] {
        assert!(ids.contains(id), "missing {id}");
    }
}

#[test]
fn a2_duality_json() {
    let out = rootheights(&[
        "verify", "--family", "A", "--rank", "2", "--target", "duality",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with(r#"{"system":"A2","claims":[{"id":"kostka.exponents","expected":[0,1,1],"computed":[0,1,1],"pass":true}"#));
    assert!(text.ends_with("\"pass\":true}\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        rootheights(&["roots", "--family", "B", "--rank", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rootheights(&["verify", "--family", "A", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rootheights(&["verify", "--family", "A", "--rank", "2", "--target", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rootheights(&["xi-coeff", "--family", "A", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn caps_exit_3_and_env_override() {
    let out = rootheights(&[
        "verify",
        "--family",
        "B",
        "--rank",
        "3",
        "--target",
        "duality",
        "--weyl-cap",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weyl_order_cap = 20"));

    let out = Command::new(env!("CARGO_BIN_EXE_rootheights"))
        .args([
            "verify", "--family", "A", "--rank", "3", "--target", "prop1",
        ])
        .env("ROOTHEIGHTS_PARTITION_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partition_cap = 2"));

    let out = rootheights(&[
        "verify",
        "--family",
        "E",
        "--rank",
        "6",
        "--target",
        "constant-term",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slow tier"));
}

#[test]
fn slow_flag_enables_e6() {
    let out = rootheights(&[
        "exponents",
        "--family",
        "E",
        "--rank",
        "6",
        "--slow",
        "--format",
        "tsv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "E6\t1,4,5,7,8,11\t[0,1,0,0,1,1,0,1,1,0,0,1]\t1,4,5,7,8,11\n"
    );
}
