use std::fs;
use std::process::{Command, Output};

fn gp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gp"))
        .args(args)
        .env("GP_COLOR", "0")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Section `name:` of `inv` text output: the inline value, or the lines
/// up to the next section.
fn section(text: &str, name: &str) -> String {
    let mut lines = text.lines();
    let head = format!("{name}:");
    let first = lines.find(|l| l.starts_with(&head)).unwrap();
    let inline = first[head.len()..].trim();
    if !inline.is_empty() {
        return inline.to_string();
    }
    lines
        .take_while(|l| !l.ends_with(':'))
        .collect::<Vec<_>>()
        .join("\n")
}

fn bits(v: &serde_json::Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrices(v: &serde_json::Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|m| {
            m.as_array()
                .unwrap()
                .iter()
                .map(bits)
                .collect::<Vec<_>>()
                .join("\n")
        })
        .collect::<Vec<_>>()
        .join("\n--\n")
}

#[test]
fn inv_text() {
    let o = gp(&["inv", "ACBADBEF|CE|DF"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(section(&text, "T"), "0 0 0");
    assert!(section(&text, "So").starts_with("1 0 1\n1 1 0\n--"));
}

#[test]
fn json_agrees_with_text() {
    for p in [
        "ABAC|DBEDFEG|CFG",
        "ACBADBEF|CE|DF",
        "ADBAEBCFCG|JLDHIHJK|EI|FGKL",
        "AB|AC|BC",
        "-|-|-",
        "ABA|B",
        "ABAC|B|C",
        "BACA|B|C",
        "A13.A14|A23|A13.A23.A34|A14.A34",
    ] {
        let text = stdout(&gp(&["inv", p]));
        let json: serde_json::Value =
            serde_json::from_str(&stdout(&gp(&["inv", p, "--json"]))).unwrap();
        assert_eq!(section(&text, "phrase"), json["phrase"].as_str().unwrap());
        assert_eq!(section(&text, "n"), json["n"].to_string());
        assert_eq!(section(&text, "lengths"), bits(&json["lengths"]));
        assert_eq!(section(&text, "T"), bits(&json["T"]));
        assert_eq!(
            section(&text, "linking_matrix"),
            matrices(&serde_json::json!([json["linking_matrix"]]))
        );
        assert_eq!(section(&text, "So"), matrices(&json["So"]));
        assert_eq!(section(&text, "S"), matrices(&json["S"]));
    }
}

#[test]
fn letter_vectors_golden() {
    let text = stdout(&gp(&["inv", "ABAC|DBEDFEG|CFG"]));
    for line in ["l(A) = (0,1,0)", "l(D) = (1,1,0)", "l(E) = (0,1,1)"] {
        assert!(text.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn compare_exit_codes() {
    let o = gp(&["compare", "ABA|B", "A|A", "--relation", "homotopy"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("shift@c1\nH1-@c1:2\n"));

    let o = gp(&["compare", "ABA|B", "A|A", "--relation", "open"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T differs"));

    let o = gp(&[
        "search",
        "ABA|B",
        "A|A",
        "--relation",
        "homotopy",
        "--max-depth",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = gp(&["search", "ABA|B", "A|A", "--relation", "homotopy"]);
    assert_eq!(stdout(&o), "shift@c1\nH1-@c1:2\n");
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(gp(&["validate", "ABA|B"]).status.code(), Some(0));
    assert_eq!(gp(&["validate", "ABA|A"]).status.code(), Some(1));
    assert_eq!(gp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gp(&["compare", "AA", "AA"]).status.code(), Some(2));
    assert_eq!(
        gp(&["compare", "AA", "AA", "--relation", "sideways"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn realize_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.txt");
    fs::write(&l, "0 0 1 1\n0 0 1 0\n1 1 0 1\n1 0 1 0\n").unwrap();
    let o = gp(&["realize", "--linking", l.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "AB|C|ACD|BD\n");

    let so = dir.path().join("so.txt");
    fs::write(&so, "2\n0 1\n1 0\n1 1\n--\n1 0\n").unwrap();
    let o = gp(&["realize", "--so-target", so.to_str().unwrap()]);
    assert_eq!(stdout(&o), "ABACDCEDF|BEGFG\n");

    let zero = dir.path().join("zero.txt");
    fs::write(&zero, "0 0\n0 0\n").unwrap();
    let o = gp(&[
        "realize",
        "--so-target",
        so.to_str().unwrap(),
        "--linking",
        zero.to_str().unwrap(),
    ]);
    let p = stdout(&o);
    let text = stdout(&gp(&["inv", p.trim()]));
    assert_eq!(section(&text, "linking_matrix"), "0 0\n0 0");

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1\n1\n").unwrap();
    let o = gp(&["realize", "--so-target", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("1-odd"));

    let s = dir.path().join("s.txt");
    fs::write(&s, "0 1\n1 0\n--\n0 0\n--\n0 0\n").unwrap();
    let o = gp(&["realize", "--s-target", s.to_str().unwrap()]);
    assert_eq!(stdout(&o), "A|A\n");
}

#[test]
fn tabulate_and_fuzz() {
    let o = gp(&["tabulate", "--letters", "1", "--components", "2"]);
    assert_eq!(stdout(&o), "1\t3\t-|-\tlen=00 L=00,00 T=00 So=00;00 S=00;00\n2\t1\tA|A\tlen=11 L=01,10 T=00 So=00;00 S=01;10\n");
    let o = gp(&["fuzz", "--seed", "1", "--trials", "500"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violations 0\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["tabulate", "--letters", "3", "--components", "2"][..],
        &["fuzz", "--seed", "9", "--trials", "300", "--json"],
        &["compare", "ABAC|B|C", "BACA|B|C", "--relation", "homotopy"],
    ] {
        let a = gp(args);
        let mut seq = args.to_vec();
        seq.push("--sequential");
        let b = gp(&seq);
        assert_eq!(a.stdout, gp(args).stdout);
        assert_eq!(a.stdout, b.stdout);
    }
}
