//! End-to-end runs of the `lexcat` binary: exit codes, report contents
//! and byte-identical reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lexcat::fixtures::toy;
use serde_json::Value;

fn manifest() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/minicorpus/manifest.tsv")
        .display()
        .to_string()
}

fn lexcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexcat"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Writes the toy language and its three partitions into `dir`.
fn toy_files(dir: &Path) -> (String, [String; 3]) {
    let toy = toy();
    let write = |name: &str, text: String| {
        let path: PathBuf = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    };
    let language = write(
        "toy.json",
        serde_json::to_string(&toy.language.to_json(&toy.vocab).unwrap()).unwrap(),
    );
    let p = |name: &str, part: &lexcat::Partition| {
        write(
            name,
            serde_json::to_string(&part.to_json(&toy.vocab).unwrap()).unwrap(),
        )
    };
    (
        language,
        [
            p("p1.json", &toy.p1),
            p("p2.json", &toy.p2),
            p("p3.json", &toy.p3),
        ],
    )
}

#[test]
fn info_on_toy_language() {
    let dir = tempfile::tempdir().unwrap();
    let (lang, [p1, p2, _]) = toy_files(dir.path());
    let v = json(&lexcat(&["info", "--language", &lang, "--partition", &p1]));
    assert_eq!(v["partition"], "p1");
    assert_eq!(v["information"].as_f64().unwrap(), 3.0);
    let v = json(&lexcat(&[
        "mi",
        "--language",
        &lang,
        "--partition",
        &p1,
        "--partition",
        &p2,
    ]));
    assert_eq!(v["mutual_information"].as_f64().unwrap(), 0.0);
}

#[test]
fn info_on_corpus_with_partition_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let corpus = lexcat::corpus::load_corpus(Path::new(&m), Default::default()).unwrap();
    let topic = lexcat::corpus::topic_partition(&corpus).unwrap();
    let path = dir.path().join("p1.json");
    std::fs::write(
        &path,
        serde_json::to_string(&topic.to_json(&corpus.vocab).unwrap()).unwrap(),
    )
    .unwrap();
    let from_file = json(&lexcat(&[
        "info",
        "--corpus",
        &m,
        "--n",
        "3",
        "--partition",
        path.to_str().unwrap(),
    ]));
    let builtin = json(&lexcat(&[
        "info",
        "--corpus",
        &m,
        "--n",
        "3",
        "--partition",
        "@topic",
    ]));
    assert_eq!(from_file["information"], builtin["information"]);
}

#[test]
fn split_experiment_on_corpus() {
    let m = manifest();
    let v = json(&lexcat(&[
        "split-experiment",
        "--corpus",
        &m,
        "--tags",
        "--pair",
        "NN,V",
        "--gamma",
        "0.001",
        "--mu",
        "0.5",
    ]));
    let scenarios = v["experiment"]["scenarios"].as_array().unwrap();
    assert_eq!(scenarios[0]["scenario"], "merge-baseline");
    assert_eq!(scenarios.len(), 3 + 10);
    let reference = &v["contextual_reference"];
    let threshold = reference["gamma_threshold"].as_f64().unwrap();
    assert!(threshold < 0.01);
    assert_eq!(reference["gamma_contextual"], threshold <= 0.001);
}

#[test]
fn exit_codes() {
    let missing = lexcat(&["info", "--corpus", "missing.tsv"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.tsv"));

    assert_eq!(lexcat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        lexcat(&["info", "--corpus", &manifest(), "--bogus"])
            .status
            .code(),
        Some(1)
    );
    let bad_pair = lexcat(&[
        "split-experiment",
        "--corpus",
        &manifest(),
        "--tags",
        "--pair",
        "NN,XX",
    ]);
    assert_eq!(bad_pair.status.code(), Some(1));
    let bad_base = lexcat(&[
        "info",
        "--corpus",
        &manifest(),
        "--log-base",
        "3",
        "--partition",
        "@topic",
    ]);
    assert_eq!(bad_base.status.code(), Some(1));
    let no_partition = lexcat(&["info", "--corpus", &manifest()]);
    assert_eq!(no_partition.status.code(), Some(1));
}

#[test]
fn every_subcommand_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (lang, [p1, p2, p3]) = toy_files(dir.path());
    let m = manifest();
    let runs: Vec<Vec<&str>> = vec![
        vec!["ingest", "--corpus", &m, "--n", "2"],
        vec![
            "info",
            "--corpus",
            &m,
            "--partition",
            "@topic",
            "--partition",
            "@tags",
        ],
        vec![
            "info",
            "--corpus",
            &m,
            "--partition",
            "@tags",
            "--format",
            "csv",
            "--log-base",
            "e",
        ],
        vec![
            "mi",
            "--corpus",
            &m,
            "--partition",
            "@topic",
            "--partition",
            "@tags",
        ],
        vec![
            "check-contextual",
            "--language",
            &lang,
            "--partition",
            &p1,
            "--partition",
            &p2,
        ],
        vec![
            "check-syntactic",
            "--language",
            &lang,
            "--partition",
            &p2,
            "--partition",
            &p3,
        ],
        vec![
            "split-experiment",
            "--corpus",
            &m,
            "--tags",
            "--pair",
            "JJ,ADV",
            "--seed",
            "7",
            "--mu",
            "0.5",
        ],
        vec![
            "split-experiment",
            "--corpus",
            &m,
            "--tags",
            "--pair",
            "NN,V",
            "--format",
            "csv",
        ],
        vec![
            "hull",
            "--language",
            &lang,
            "--partition",
            "@nul",
            "--partition",
            &p1,
            "--partition",
            &p2,
        ],
        vec![
            "hull",
            "--language",
            &lang,
            "--mode",
            "syntactic",
            "--reference",
            &p1,
            "--partition",
            "@nul",
            "--partition",
            &p2,
            "--partition",
            &p3,
            "--format",
            "csv",
        ],
        vec!["search", "--language", &lang, "--gamma", "0.000001"],
        vec![
            "search",
            "--language",
            &lang,
            "--strategy",
            "greedy",
            "--mu",
            "0.1",
            "--reference",
            &p1,
        ],
        vec!["model-info", "--language", &lang, "--partition", &p3],
    ];
    for args in runs {
        let a = lexcat(&args);
        let b = lexcat(&args);
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (lang, [p1, ..]) = toy_files(dir.path());
    let out = dir.path().join("report.json");
    let args = ["info", "--language", &lang, "--partition", &p1];
    let stdout = lexcat(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    assert!(lexcat(&with_out).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), stdout);
}

#[test]
fn ingested_language_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest();
    let corpus = lexcat::corpus::load_corpus(Path::new(&m), Default::default()).unwrap();
    let topic = lexcat::corpus::topic_partition(&corpus).unwrap();
    let p = dir.path().join("topic.json");
    std::fs::write(
        &p,
        serde_json::to_string(&topic.to_json(&corpus.vocab).unwrap()).unwrap(),
    )
    .unwrap();
    let lang = dir.path().join("l3.json");
    assert!(
        lexcat(&["ingest", "--corpus", &m, "--out", lang.to_str().unwrap()])
            .status
            .success()
    );
    let p = p.to_str().unwrap();
    let from_lang = json(&lexcat(&[
        "info",
        "--language",
        lang.to_str().unwrap(),
        "--partition",
        p,
    ]));
    let from_corpus = json(&lexcat(&["info", "--corpus", &m, "--partition", p]));
    let i = |v: &Value| v["information"].as_f64().unwrap();
    assert!((i(&from_lang) - i(&from_corpus)).abs() < 1e-12);
}
