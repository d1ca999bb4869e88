use std::process::{Command, Output};

use polynum::NumberTable;

fn polynum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polynum"))
        .env_remove("POLYNUM_MAX_ORDER")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn table_examples() {
    let o = polynum(&["table", "--family", "lah", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let t = NumberTable::from_json(&stdout(&o)).unwrap();
    assert_eq!(
        polynum::numeric::format_rational(t.get(4, 2).unwrap()),
        "36/1"
    );

    let o = polynum(&[
        "table",
        "--family",
        "multi-stirling1",
        "--index",
        "2",
        "--max-n",
        "3",
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).contains("3,1,2/3\n"));

    let o = polynum(&[
        "table",
        "--family",
        "multi-lah",
        "--index",
        "1,2",
        "--max-n",
        "2",
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&o), "n\tr\tvalue\n2\t2\t1/2\n");
    assert!(stderr(&o).is_empty());
}

#[test]
fn cache_second_run_is_a_hit_with_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let args = [
        "table",
        "--family",
        "multi-bernoulli",
        "--index",
        "2,1",
        "--max-n",
        "8",
        "--cache",
        cache,
    ];
    let first = polynum(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(stderr(&first).contains("cache miss"));
    let second = polynum(&args);
    assert!(stderr(&second).contains("cache hit"), "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);

    let stored =
        std::fs::read_to_string(dir.path().join("cache/multi-bernoulli_k2,1_n8.json")).unwrap();
    assert_eq!(stored, stdout(&first));

    // cached JSON is re-rendered in the requested format
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = polynum(&csv_args);
    assert!(stderr(&csv).contains("cache hit"));
    assert!(stdout(&csv).starts_with("n,r,value\n0,2,1/2\n"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s2.json");
    let o = polynum(&[
        "table",
        "--family",
        "stirling2",
        "--max-n",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let t = NumberTable::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 21);
}

#[test]
fn exit_codes() {
    assert_eq!(
        polynum(&[
            "verify",
            "--identity",
            "lemma2.1",
            "--r-max",
            "4",
            "--max-n",
            "12"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        polynum(&[
            "verify",
            "--identity",
            "thm2.4",
            "--index",
            "2",
            "--max-n",
            "10"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        polynum(&["verify", "--identity", "thm2.2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        polynum(&["series", "--expr", "bernoulli_gf_order_r", "--order", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        polynum(&[
            "table",
            "--family",
            "multi-lah",
            "--index",
            "1,-1,2",
            "--max-n",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(polynum(&["frobnicate"]).status.code(), Some(2));

    let capped = Command::new(env!("CARGO_BIN_EXE_polynum"))
        .env("POLYNUM_MAX_ORDER", "6")
        .args([
            "verify",
            "--identity",
            "thm2.2",
            "--index",
            "1,2",
            "--max-n",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(stderr(&capped).contains("order cap"));

    let bad_env = Command::new(env!("CARGO_BIN_EXE_polynum"))
        .env("POLYNUM_MAX_ORDER", "zero")
        .args(["table", "--family", "lah", "--max-n", "3"])
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn series_output() {
    let o = polynum(&["series", "--expr", "one_minus_exp_neg", "--order", "2"]);
    assert_eq!(stdout(&o), "0/1 + 1/1*t + -1/2*t^2\n");
    let o = polynum(&[
        "series",
        "--expr",
        "bernoulli_gf_order_r",
        "--r",
        "1",
        "--order",
        "2",
    ]);
    assert_eq!(stdout(&o), "1/1 + -1/2*t + 1/12*t^2\n");
}

#[test]
fn verify_json_is_byte_stable() {
    let args = [
        "verify",
        "--identity",
        "thm2.5",
        "--index",
        "1,2",
        "--max-n",
        "6",
        "--json",
    ];
    let a = polynum(&args);
    let b = polynum(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: polynum::IdentityReport = serde_json::from_slice(&a.stdout).unwrap();
    assert!(report.all_equal);
    assert_eq!(report.cases.len(), 5);
}
