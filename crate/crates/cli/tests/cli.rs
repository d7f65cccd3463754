use std::process::Command;

fn quadunit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadunit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn cf_13() {
    let (code, out) = quadunit(&["cf", "13"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["a0"], 2);
    assert_eq!(v["period"], serde_json::json!([3]));
}

#[test]
fn progression_7_3() {
    let (code, out) = quadunit(&["progression", "2", "0", "7", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["t"], 71);
    assert_eq!(v["exceptions"], serde_json::json!([2]));
}

#[test]
fn pell_csv() {
    let (code, out) = quadunit(&["survey", "pell", "--limit", "30", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "d\n2\n5\n10\n13\n17\n26\n29\n");
}

#[test]
fn exit_codes() {
    assert_eq!(quadunit(&["cf", "12"]).0, 2);
    assert_eq!(quadunit(&["nonsense"]).0, 2);
    assert_eq!(quadunit(&["cf", "13", "--precision", "8"]).0, 2);
    // a trial-division bound of 2 cannot factor 34²−8 = 1148 = 4·7·41
    assert_eq!(quadunit(&["--factor-budget", "2", "survey", "f-mu", "--limit", "40"]).0, 1);
}

#[test]
fn output_is_byte_stable_across_runs_and_widths() {
    for args in [
        vec!["survey", "bound", "--limit", "600"],
        vec!["survey", "e-mu", "--mu", "3", "--limit", "200"],
        vec!["coverage", "2", "--t-max", "60", "--y-max", "80"],
        vec!["pairs", "-1", "--y-max", "200", "--format", "csv"],
    ] {
        let serial: Vec<&str> = ["--jobs", "1"].iter().copied().chain(args.iter().copied()).collect();
        let wide: Vec<&str> = ["--jobs", "4"].iter().copied().chain(args.iter().copied()).collect();
        let (c1, a) = quadunit(&serial);
        let (c2, b) = quadunit(&wide);
        let (_, c) = quadunit(&wide);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(b, c, "{args:?}");
    }
}

#[test]
fn writes_output_file() {
    let dir = std::env::temp_dir().join(format!("quadunit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unit.json");
    let (code, out) = quadunit(&["unit", "94", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // ε_94 = 2143295 + 221064√94
    assert_eq!(v["u"], 2143295);
    assert_eq!(v["v"], 221064);
    std::fs::remove_dir_all(&dir).unwrap();
}
