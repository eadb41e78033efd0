use std::process::{Command, Output};

fn wpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wpp(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = wpp(args);
    let stderr = String::from_utf8(out.stderr).unwrap();
    (out.status.code().unwrap(), stderr)
}

#[test]
fn enumerate_streams_words() {
    assert_eq!(stdout(&["enumerate", "0"]), "ε\n");
    assert_eq!(stdout(&["enumerate", "2"]), "11\n12\n21\n");
    assert_eq!(stdout(&["enumerate", "4"]).lines().count(), 75);
}

#[test]
fn dp_and_pack_round_trip() {
    let json = stdout(&["dp", "212"]);
    assert_eq!(
        json,
        "{\"n\":3,\"rel1\":[[2,1],[3,1]],\"rel2\":[[1,3],[2,3]]}\n"
    );
    let dir = std::env::temp_dir().join(format!("wpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poset.json");
    std::fs::write(&path, &json).unwrap();
    assert_eq!(stdout(&["pack", path.to_str().unwrap()]), "212\n");
}

#[test]
fn products_and_coproducts() {
    assert_eq!(
        stdout(&["product", "1", "1", "--structure", "shuffle"]),
        "12 + 21\n"
    );
    assert_eq!(
        stdout(&["product", "1", "1", "--structure", "dot"]),
        "11 + 12 + 21\n"
    );
    assert_eq!(stdout(&["product", "1", "1"]), "12\n");
    assert_eq!(stdout(&["coproduct", "12"]), "ε⊗12 + 2·1⊗1 + 12⊗ε\n");
    assert_eq!(
        stdout(&["product", "1", "1", "--structure", "dot", "--format", "json"]),
        "{\"terms\":[{\"word\":\"11\",\"coeff\":1},{\"word\":\"12\",\"coeff\":1},{\"word\":\"21\",\"coeff\":1}]}\n"
    );
    assert_eq!(stdout(&["pairing", "12", "12"]), "2\n");
}

#[test]
fn matrices() {
    assert_eq!(
        stdout(&["matrix", "phi", "2"]),
        "{\"basis\":[\"11\",\"12\",\"21\"],\"rows\":[[1,0,0],[0,1,0],[1,1,1]]}\n"
    );
    assert_eq!(
        stdout(&["matrix", "pairing-dot", "2", "--format", "text"]),
        "   11 12 21\n11  1 -1  0\n12 -1  1  1\n21  0  1  0\n"
    );
}

#[test]
fn hasse_dot() {
    let dot = stdout(&["hasse", "3", "lin", "--dot"]);
    assert_eq!(dot.matches("[label=").count(), 13);
    let node = |w: &str| {
        dot.lines()
            .find(|l| l.contains(&format!("[label=\"{w}\"]")))
            .and_then(|l| l.split_whitespace().next())
            .unwrap()
            .to_string()
    };
    let top = node("321");
    let mut covered: Vec<String> = dot
        .lines()
        .filter_map(|l| {
            l.trim()
                .strip_suffix(&format!(" -> {top};"))
                .map(str::to_string)
        })
        .collect();
    covered.sort();
    let mut want: Vec<String> = ["221", "312", "231", "211"]
        .iter()
        .map(|w| node(w))
        .collect();
    want.sort();
    assert_eq!(covered, want);
    assert!(!dot
        .lines()
        .any(|l| l.trim().starts_with(&format!("{top} ->"))));
}

#[test]
fn hasse_to_file() {
    let dir = std::env::temp_dir().join(format!("wpp-hasse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pw2.dot");
    assert_eq!(
        stdout(&[
            "hasse",
            "2",
            "lin",
            "--dot",
            "--out",
            path.to_str().unwrap()
        ]),
        ""
    );
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("digraph \"PW(2) lin\" {"));
}

#[test]
fn exit_codes_and_diagnostics() {
    let (code, err) = failure(&["dp", "13"]);
    assert_eq!(code, 1);
    assert!(err.contains("13") && err.lines().count() == 1, "{err}");

    let (code, err) = failure(&["matrix", "phi", "6"]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);

    let (code, _) = failure(&["enumerate", "10"]);
    assert_eq!(code, 2);

    let (code, err) = failure(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(err.contains("frobnicate"));

    let (code, err) = failure(&["pack", "/nonexistent/poset.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/poset.json"));
}

#[test]
fn malformed_poset_json() {
    let dir = std::env::temp_dir().join(format!("wpp-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, body) in [
        ("syntax.json", "{\"n\": 2,"),
        ("both.json", "{\"n\":2,\"rel1\":[[1,2]],\"rel2\":[[1,2]]}"),
        ("range.json", "{\"n\":2,\"rel1\":[[1,3]],\"rel2\":[]}"),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let (code, err) = failure(&["pack", path.to_str().unwrap()]);
        assert_eq!(code, 1, "{name}");
        assert!(err.contains(name) && err.lines().count() == 1, "{err}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["matrix", "pairing", "3"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["coproduct", "2131"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn verify_passes_and_detects_faults() {
    let out = stdout(&["verify", "--max-degree", "3"]);
    assert_eq!(out.lines().filter(|l| l.contains(": PASS")).count(), 8);
    for fault in [
        "product-cross-relation",
        "open-set-predicate",
        "picture-condition",
    ] {
        let out = wpp(&["verify", "--max-degree", "3", "--inject-fault", fault]);
        assert_eq!(out.status.code(), Some(1), "{fault}");
        assert!(String::from_utf8_lossy(&out.stdout).contains(": FAIL"));
    }
    assert_eq!(failure(&["verify", "--max-degree", "6"]).0, 2);
}
