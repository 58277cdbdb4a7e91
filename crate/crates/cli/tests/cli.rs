use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grundy(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grundy"))
        .args(args)
        .env("GRUNDY_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).expect("json report")
}

#[test]
fn analyze_wythoff() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&grundy(
        &["analyze", "--family", "wythoff", "--roots", "20,20"],
        dir.path(),
    ));
    assert_eq!(r["verdicts"]["miserable"], true);
    assert_eq!(r["verdicts"]["forced"], false);
}

#[test]
fn analyze_pet_fixture_and_mark() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&grundy(&["analyze", "--fixture", "pet"], dir.path()));
    assert_eq!(r["verdicts"]["pet"], true);

    let r = report(&grundy(
        &["analyze", "--family", "mark", "--roots", "20"],
        dir.path(),
    ));
    assert_eq!(r["verdicts"]["domestic"], false);
    assert_eq!(r["witnesses"]["domestic"]["position"], "8");
}

#[test]
fn wythoff_p_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let o = grundy(
        &[
            "table",
            "--family",
            "wythoff",
            "--p-sequence",
            "--n",
            "10",
            "--no-cache",
        ],
        dir.path(),
    );
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,x,y,convention");
    assert_eq!(
        &lines[1..5],
        [
            "0,0,0,normal",
            "1,1,2,normal",
            "2,3,5,normal",
            "3,4,7,normal"
        ]
    );
    assert_eq!(lines.len(), 11);

    let o = grundy(
        &[
            "table",
            "--family",
            "wyt_ab",
            "--a",
            "2",
            "--b",
            "3",
            "--n",
            "100",
            "--no-cache",
        ],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(2),
        "table without a mode is a usage error"
    );
    let o = grundy(
        &[
            "table",
            "--family",
            "wyt_ab",
            "--a",
            "2",
            "--b",
            "3",
            "--n",
            "100",
            "--p-sequence",
            "--no-cache",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&o).lines().count(), 101);
}

#[test]
fn nim_sg_table_is_xor() {
    let dir = tempfile::tempdir().unwrap();
    let o = grundy(
        &[
            "table",
            "--family",
            "nim",
            "--n",
            "2",
            "--piles",
            "3,5",
            "--sg",
            "--no-cache",
        ],
        dir.path(),
    );
    let out = stdout(&o);
    let mut rows = 0;
    for line in out.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let c: Vec<u32> = f[0].split('-').map(|v| v.parse().unwrap()).collect();
        assert_eq!(f[1].parse::<u32>().unwrap(), c[0] ^ c[1], "{line}");
        rows += 1;
    }
    assert_eq!(rows, 24);
}

#[test]
fn fixture_sg_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&grundy(
        &["table", "--fixture", "not_domestic", "--sg", "--no-cache"],
        dir.path(),
    ));
    let labels: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split_once(',').unwrap().1)
        .collect();
    assert_eq!(labels, ["0,1", "1,0", "2,2", "0,0", "1,1", "2,0", "3,2"]);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--family", "wythoff", "--roots", "6,6", "--sg"];
    let first = grundy(&args, dir.path());
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1);
    let cached = fs::read_to_string(&entries[0]).unwrap();
    assert!(cached.starts_with("# grundy-sg-table v1 family=wythoff"));

    let second = grundy(&args, dir.path());
    assert_eq!(stdout(&second), stdout(&first));
    assert!(stderr(&second).is_empty());

    fs::write(&entries[0], "# grundy-sg-table v1 garbage\nnot,a\ntable").unwrap();
    let third = grundy(&args, dir.path());
    assert_eq!(third.status.code(), Some(0));
    assert!(stderr(&third).contains("corrupt"));
    assert_eq!(stdout(&third), stdout(&first));
    assert_eq!(fs::read_to_string(&entries[0]).unwrap(), cached);
}

#[test]
fn cache_dir_flag_beats_env() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let o = grundy(
        &[
            "table",
            "--family",
            "nim",
            "--n",
            "1",
            "--roots",
            "4",
            "--sg",
            "--cache-dir",
            flag,
        ],
        env_dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = grundy(&["verify", "fixtures", "--format", "text"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));

    let o = grundy(&["verify", "ferguson"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);

    let o = grundy(
        &["verify", "stated_formulas", "--format", "text"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    let o = grundy(&["verify", "nonsense"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sum_of_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    fs::write(
        &a,
        r#"{"family": "nim", "params": {"n": 1}, "roots": [[3]]}"#,
    )
    .unwrap();
    fs::write(
        &b,
        r#"{"family": "nim", "params": {"n": 1}, "roots": [[3]]}"#,
    )
    .unwrap();
    let table = dir.path().join("sum.csv");
    let o = grundy(
        &[
            "sum",
            "--game",
            a.to_str().unwrap(),
            "--game",
            b.to_str().unwrap(),
            "--sg-table",
            table.to_str().unwrap(),
        ],
        dir.path(),
    );
    let r = report(&o);
    assert_eq!(r["verdicts"]["pet"], false);
    assert_eq!(r["verdicts"]["tame"], true);
    let csv = fs::read_to_string(&table).unwrap();
    assert!(csv.lines().any(|l| l == "2-2,0,0"), "{csv}");
}

#[test]
fn unsupported_params_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = grundy(
        &[
            "table",
            "--family",
            "wyt_ab",
            "--a",
            "0",
            "--b",
            "2",
            "--n",
            "5",
            "--p-sequence",
            "--convention",
            "misere",
            "--no-cache",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported"), "{}", stderr(&o));

    let o = grundy(
        &["analyze", "--family", "nim", "--n", "2", "--roots", "1,2,3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixtures_listing() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&grundy(&["fixtures"], dir.path()));
    for name in ["not_domestic", "pet", "abc_chain", "sodo_g1", "sodo_g2"] {
        assert!(out.lines().any(|l| l == name), "{name}");
    }
}
