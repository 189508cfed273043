mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use common::*;

const STUDENT: &str =
    r#"{"NL": "Not every student is hardworking.", "FOL": "¬∀x (Student(x) → Hardworking(x))"}"#;

fn folcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folcheck"))
        .args(args)
        .output()
        .expect("run folcheck")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn parse_subcommand() {
    let o = folcheck(&["parse", "--canonical", "forall x (P(x) and Q(x))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "∀x(P(x)∧Q(x))\n");

    let o = folcheck(&[
        "parse",
        "--style",
        "textual",
        "¬∀x (Student(x) → Hardworking(x))",
    ]);
    assert_eq!(
        stdout(&o),
        "not forall x (Student(x) implies Hardworking(x))\n"
    );

    let o = folcheck(&["parse", "--tree", "P(a)"]);
    assert_eq!(stdout(&o), "Atom P(a)\n");

    let o = folcheck(&["parse", "("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte 1"));

    assert_eq!(folcheck(&["parse", "--bogus", "P"]).status.code(), Some(1));
    assert_eq!(folcheck(&["--help"]).status.code(), Some(0));
}

#[test]
fn score_identical_and_mismatched_files() {
    let dir = tempfile::tempdir().unwrap();
    let gold = write(
        dir.path(),
        "g.jsonl",
        "{\"FOL\": \"P(a)\"}\n{\"FOL\": \"∀x (P(x) → Q(x))\"}\n",
    );
    let o = folcheck(&[
        "score", "--pred", &gold, "--gold", &gold, "--json", "--engine", "enum",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["exact_pct", "exact_pred_pct", "equiv_pct", "equiv_pred_pct"] {
        assert_eq!(report[key], 100.0, "{key}");
    }
    let short = write(dir.path(), "p.jsonl", "{\"FOL\": \"P(a)\"}\n");
    let o = folcheck(&[
        "score", "--pred", &short, "--gold", &gold, "--engine", "enum",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn score_four_record_fixture_table() {
    solver();
    let dir = tempfile::tempdir().unwrap();
    let pairs: Vec<(String, String)> = [
        ("P(a)", "P(a)"),
        (TOMATO_PRED, TOMATO_GOLD),
        (PINEAPPLE_PRED, PINEAPPLE_GOLD),
        ("∃x Cat(x)", "∃x Cat(x)"),
    ]
    .iter()
    .map(|(p, g)| (p.to_string(), g.to_string()))
    .collect();
    let path = dir.path().join("pairs.jsonl");
    write_pairs_jsonl(&path, &pairs);
    let alignments = dir.path().join("align.json");
    let o = folcheck(&[
        "score",
        "--pairs",
        path.to_str().unwrap(),
        "--table",
        "--dump-alignments",
        alignments.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let table = stdout(&o);
    let values: Vec<&str> = table.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(&values[..5], ["4", "50.00", "75.00", "75.00", "100.00"]);

    let dump: Value = serde_json::from_str(&std::fs::read_to_string(alignments).unwrap()).unwrap();
    let pineapple = dump[2]["alignment"].as_array().unwrap();
    assert!(pineapple
        .iter()
        .any(|e| e["from"] == "HasSpikySkin" && e["to"] == "SpikySkin" && e["similarity"] == 0.75));

    // enumeration cannot prove the tomato pair
    let o = folcheck(&[
        "score",
        "--pairs",
        path.to_str().unwrap(),
        "--json",
        "--engine",
        "enum",
    ]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["equiv_pct"], 50.0);
    assert_eq!(report["unknown_count"], 1);
}

#[test]
fn strict_raw_adds_a_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.jsonl");
    write_pairs_jsonl(&path, &[("Φ= P(a)".into(), "P(a)".into())]);
    let o = folcheck(&[
        "score",
        "--pairs",
        path.to_str().unwrap(),
        "--json",
        "--engine",
        "enum",
        "--strict-raw",
    ]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["exact_pct"], 100.0);
    assert_eq!(report["exact_raw_pct"], 0.0);
}

#[test]
fn missing_solver_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.jsonl");
    write_pairs_jsonl(&path, &[("P(a)".into(), "P(a)".into())]);
    let o = folcheck(&[
        "score",
        "--pairs",
        path.to_str().unwrap(),
        "--solver-cmd",
        "/nonexistent/z3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let premises = write(dir.path(), "p.txt", "P(a)\n");
    let o = folcheck(&[
        "entail",
        "--premises",
        &premises,
        "--conclusion",
        "P(a)",
        "--solver-cmd",
        "/nonexistent/z3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn stats_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "c.jsonl", &format!("{STUDENT}\n"));
    let o = folcheck(&["stats", &corpus, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["total"], 1);
    assert_eq!(report["avg_quantifiers"], 1.0);
    let text = stdout(&folcheck(&["stats", &corpus]));
    assert!(text.contains("Unique predicates"));

    let empty = write(dir.path(), "e.jsonl", "");
    assert_eq!(folcheck(&["stats", &empty]).status.code(), Some(2));
    assert_eq!(
        folcheck(&["stats", "/nonexistent.jsonl"]).status.code(),
        Some(2)
    );
}

fn corpus_of(n: usize) -> String {
    (0..n)
        .map(|i| {
            serde_json::json!({
                "id": format!("r{i}"),
                "NL": format!("sentence {i}"),
                "FOL": format!("∀x (Kind{i}(x) → Shared(x)) ∧ Extra{}(c)", i % 3),
            })
            .to_string()
                + "\n"
        })
        .collect()
}

#[test]
fn augment_modes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.jsonl", &format!("{STUDENT}\n"));
    let out = dir.path().join("out.jsonl");
    let out_s = out.to_str().unwrap();

    assert_eq!(
        folcheck(&["augment", "--mode", "predlist", &input, out_s])
            .status
            .code(),
        Some(0)
    );
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        record["predicates"],
        serde_json::json!(["Hardworking", "Student"])
    );

    folcheck(&["augment", "--mode", "extract", &input, out_s]);
    let pair: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(pair["target"], "Hardworking, Student");

    folcheck(&[
        "augment",
        "--mode",
        "prompt",
        "--template",
        "prefix",
        &input,
        out_s,
    ]);
    let prompt: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        prompt["input"],
        "translate English natural language statements into first-order logic (FOL): Not every student is hardworking."
    );
    assert_eq!(
        prompt["target"],
        "not forall x (Student(x) implies Hardworking(x))"
    );

    folcheck(&[
        "augment",
        "--mode",
        "prompt",
        "--template",
        "chat",
        &input,
        out_s,
    ]);
    let chat: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(chat[2]["content"].as_str().unwrap().starts_with("Φ="));

    // one record cannot supply five distractors
    assert_eq!(
        folcheck(&["augment", "--mode", "noisy", &input, out_s])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn noisy_augment_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.jsonl", &corpus_of(30));
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for out in [&a, &b] {
        let o = folcheck(&[
            "augment",
            "--mode",
            "noisy",
            "--seed",
            "7",
            &input,
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 30);
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let names = first["predicates"].as_array().unwrap();
    // gold Kind0, Shared, Extra0 plus five other Kind_i
    assert!(names.len() >= 8);
}

#[test]
fn split_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.jsonl", &corpus_of(10));
    let out = dir.path().join("splits");
    let o = folcheck(&[
        "split",
        &input,
        "--out-dir",
        out.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    assert_eq!(stdout(&o), "train 8\nval 0\ntest 2\n");
    let count = |n: &str| {
        std::fs::read_to_string(out.join(n))
            .unwrap()
            .lines()
            .count()
    };
    assert_eq!(
        (
            count("train.jsonl"),
            count("val.jsonl"),
            count("test.jsonl")
        ),
        (8, 0, 2)
    );
}

#[test]
fn entail_single_and_batch() {
    solver();
    let dir = tempfile::tempdir().unwrap();
    let premises = write(
        dir.path(),
        "mp.txt",
        "∀x (Man(x) → Mortal(x))\n\nMan(socrates)\n",
    );
    let o = folcheck(&[
        "entail",
        "--premises",
        &premises,
        "--conclusion",
        "Mortal(socrates)",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), "Entailed\n");

    let bad = write(dir.path(), "bad.txt", "P(a)\nP(a\n");
    let o = folcheck(&["entail", "--premises", &bad, "--conclusion", "P(a)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.txt:2"));

    // ten arguments with hand-assigned labels; the last label is wrong on purpose
    let items = [
        (vec!["∀x (P(x) → Q(x))", "P(a)"], "Q(a)", "True"),
        (vec!["∀x (P(x) → Q(x))", "P(a)"], "¬Q(a)", "False"),
        (vec!["∀x (P(x) → Q(x))"], "Q(a)", "Uncertain"),
        (vec!["P(a) ∨ Q(a)", "¬P(a)"], "Q(a)", "True"),
        (vec!["∃x P(x)"], "P(a)", "Uncertain"),
        (vec!["∀x P(x)"], "∃x P(x)", "True"),
        (vec!["∀x ¬P(x)"], "P(b)", "False"),
        (vec!["P(a) ⊕ Q(a)", "P(a)"], "Q(a)", "False"),
        (vec!["P(a) ↔ Q(a)", "Q(a)"], "P(a)", "True"),
        (vec!["R(a, b)"], "R(b, a)", "True"),
    ];
    let lines: String = items
        .iter()
        .map(|(p, c, l)| {
            serde_json::json!({"premises": p, "conclusion": c, "label": l}).to_string() + "\n"
        })
        .collect();
    let batch = write(dir.path(), "batch.jsonl", &lines);
    let o = folcheck(&["entail", "--batch", &batch]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).ends_with("agreement: 90.00% (9/10)\n"),
        "{}",
        stdout(&o)
    );
    let o = folcheck(&["entail", "--batch", &batch, "--json", "--workers", "1"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["agreed"], 9);
    assert_eq!(report["items"][9]["verdict"], "Neutral");
}
