use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn core_fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(rel)
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

fn tsw<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_tsw"))
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

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn version_and_help() {
    let o = tsw(["--version"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("tsw "));
    let o = tsw(["no-such-command"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simplify_matches_golden() {
    let dir = core_fixture("pipeline");
    let o = tsw([
        "simplify".as_ref(),
        "--input".as_ref(),
        dir.join("sentences.txt").as_os_str(),
        "--resources".as_ref(),
        dir.as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), fs::read_to_string(dir.join("expected.tsv")).unwrap());
}

#[test]
fn simplify_single_thread_matches_golden() {
    let dir = core_fixture("pipeline");
    let out = tempfile::tempdir().unwrap();
    let path = out.path().join("pred.tsv");
    let o = tsw([
        "--threads".as_ref(),
        "1".as_ref(),
        "simplify".as_ref(),
        "--input".as_ref(),
        dir.join("sentences.txt").as_os_str(),
        "--resources".as_ref(),
        dir.as_os_str(),
        "--out".as_ref(),
        path.as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(path).unwrap(),
        fs::read_to_string(dir.join("expected.tsv")).unwrap()
    );
}

#[test]
fn simplify_with_pinned_target() {
    let dir = core_fixture("pipeline");
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("in.txt");
    fs::write(&input, "She purchased a new car .\tcar\n").unwrap();
    let o = tsw([
        "simplify".as_ref(),
        "--input".as_ref(),
        input.as_os_str(),
        "--resources".as_ref(),
        dir.as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("She purchased a new car .\tcar"));
}

#[test]
fn simplify_missing_resource_exits_3() {
    let src = core_fixture("pipeline");
    let tmp = tempfile::tempdir().unwrap();
    for name in ["freq.tsv", "morph.tsv", "embeddings.vec", "synonyms.tsv"] {
        fs::copy(src.join(name), tmp.path().join(name)).unwrap();
    }
    let o = tsw([
        "simplify".as_ref(),
        "--input".as_ref(),
        src.join("sentences.txt").as_os_str(),
        "--resources".as_ref(),
        tmp.path().as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cefr.tsv"), "{}", stderr(&o));
}

#[test]
fn simplify_empty_input_is_empty_output() {
    let dir = core_fixture("pipeline");
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("empty.txt");
    fs::write(&input, "").unwrap();
    let o = tsw([
        "simplify".as_ref(),
        "--input".as_ref(),
        input.as_os_str(),
        "--resources".as_ref(),
        dir.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn eval_lexical_matches_golden_json() {
    let o = tsw([
        "eval-lexical".as_ref(),
        "--gold".as_ref(),
        core_fixture("lexical/gold.tsv").as_os_str(),
        "--pred".as_ref(),
        core_fixture("lexical/pred.tsv").as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        fs::read_to_string(core_fixture("lexical/expected_report.json")).unwrap()
    );
}

#[test]
fn eval_lexical_k_grid_restricts_columns() {
    let o = tsw([
        "eval-lexical".as_ref(),
        "--gold".as_ref(),
        core_fixture("lexical/gold.tsv").as_os_str(),
        "--pred".as_ref(),
        core_fixture("lexical/pred.tsv").as_os_str(),
        "--k-grid".as_ref(),
        "1,3".as_ref(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "ACC@1",
            "ACC@1@top1",
            "ACC@3@top1",
            "MAP@1",
            "MAP@3",
            "Potential@1",
            "Potential@3",
            "Precision@1",
            "Precision@3",
            "Recall@1",
            "Recall@3",
            "instances"
        ]
    );
}

#[test]
fn eval_lexical_table_format() {
    let o = tsw([
        "eval-lexical".as_ref(),
        "--gold".as_ref(),
        core_fixture("lexical/gold.tsv").as_os_str(),
        "--pred".as_ref(),
        core_fixture("lexical/pred.tsv").as_os_str(),
        "--format".as_ref(),
        "table".as_ref(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.starts_with("ACC@1 ") && l.ends_with("0.600")),
        "{text}"
    );
}

#[test]
fn eval_lexical_unmatched_prediction_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let pred = tmp.path().join("pred.tsv");
    fs::write(&pred, "Nothing like the gold .\tgold\tore\n").unwrap();
    let o = tsw([
        "eval-lexical".as_ref(),
        "--gold".as_ref(),
        core_fixture("lexical/gold.tsv").as_os_str(),
        "--pred".as_ref(),
        pred.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
}

fn write_sentence_corpus(dir: &Path, identity_pairs: usize) -> (PathBuf, PathBuf) {
    let refs = dir.join("refs.jsonl");
    let output = dir.join("out.txt");
    let mut jsonl = String::new();
    let mut out = String::new();
    for i in 0..4 {
        let source = format!("The committee will scrutinize proposal number {i} .");
        let reference = if i < identity_pairs {
            source.clone()
        } else {
            format!("The group will check proposal number {i} .")
        };
        jsonl.push_str(
            &serde_json::json!({"id": i.to_string(), "source": source, "references": [reference]})
                .to_string(),
        );
        jsonl.push('\n');
        out.push_str(&format!("The group will check proposal number {i} .\n"));
    }
    fs::write(&refs, jsonl).unwrap();
    fs::write(&output, out).unwrap();
    (refs, output)
}

#[test]
fn eval_sentence_identity_scores_one() {
    let tmp = tempfile::tempdir().unwrap();
    let (refs, output) = write_sentence_corpus(tmp.path(), 0);
    let o = tsw([
        "eval-sentence".as_ref(),
        "--output".as_ref(),
        output.as_os_str(),
        "--refs".as_ref(),
        refs.as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["BLEU"].as_f64(), Some(1.0));
    assert!(v["SARI"].is_f64());
    assert_eq!(v["pairs"].as_u64(), Some(4));
}

#[test]
fn eval_sentence_exclude_identity() {
    let tmp = tempfile::tempdir().unwrap();
    let (refs, output) = write_sentence_corpus(tmp.path(), 1);
    let o = tsw([
        "eval-sentence".as_ref(),
        "--output".as_ref(),
        output.as_os_str(),
        "--refs".as_ref(),
        refs.as_os_str(),
        "--exclude-identity".as_ref(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["pairs"].as_u64(), Some(3));
    assert_eq!(v["excluded_identity"].as_u64(), Some(1));
}

#[test]
fn eval_sentence_line_mismatch_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let (refs, output) = write_sentence_corpus(tmp.path(), 0);
    fs::write(&output, "only one line\n").unwrap();
    let o = tsw([
        "eval-sentence".as_ref(),
        "--output".as_ref(),
        output.as_os_str(),
        "--refs".as_ref(),
        refs.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn drift_matches_golden() {
    let tmp = tempfile::tempdir().unwrap();
    let cos = tmp.path().join("cos.csv");
    let edit = tmp.path().join("edit.csv");
    let o = tsw([
        "drift".as_ref(),
        "--orig".as_ref(),
        fixture("drift/orig.jsonl").as_os_str(),
        "--trans".as_ref(),
        fixture("drift/trans.jsonl").as_os_str(),
        "--orig-emb".as_ref(),
        fixture("drift/orig_emb.tsv").as_os_str(),
        "--trans-emb".as_ref(),
        fixture("drift/trans_emb.tsv").as_os_str(),
        "--bins".as_ref(),
        "2".as_ref(),
        "--cos-hist".as_ref(),
        cos.as_os_str(),
        "--edit-hist".as_ref(),
        edit.as_os_str(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        fs::read_to_string(fixture("drift/expected_summary.json")).unwrap()
    );
    assert_eq!(
        fs::read_to_string(cos).unwrap(),
        fs::read_to_string(fixture("drift/expected_cos_hist.csv")).unwrap()
    );
    assert_eq!(
        fs::read_to_string(edit).unwrap(),
        fs::read_to_string(fixture("drift/expected_edit_hist.csv")).unwrap()
    );
}

#[test]
fn drift_unmatched_ids_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let trans = tmp.path().join("trans.jsonl");
    fs::write(
        &trans,
        "{\"id\": \"a\", \"source\": \"aaaa\", \"references\": [\"aabb\"]}\n",
    )
    .unwrap();
    let o = tsw([
        "drift".as_ref(),
        "--orig".as_ref(),
        fixture("drift/orig.jsonl").as_os_str(),
        "--trans".as_ref(),
        trans.as_os_str(),
        "--orig-emb".as_ref(),
        fixture("drift/orig_emb.tsv").as_os_str(),
        "--trans-emb".as_ref(),
        fixture("drift/trans_emb.tsv").as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains('b') && err.contains('c'), "{err}");
}

#[test]
fn align_identical_files_warns_and_outputs_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("src.txt");
    let tgt = tmp.path().join("tgt.txt");
    let text = "The cat sat on the mat .\nA dog barked loudly .\n";
    fs::write(&src, text).unwrap();
    fs::write(&tgt, text).unwrap();

    let o = tsw([
        "align".as_ref(),
        "--src".as_ref(),
        src.as_os_str(),
        "--tgt".as_ref(),
        tgt.as_os_str(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("warning"));

    let o = tsw([
        "align".as_ref(),
        "--src".as_ref(),
        src.as_os_str(),
        "--tgt".as_ref(),
        tgt.as_os_str(),
        "--lo".as_ref(),
        "0".as_ref(),
        "--hi".as_ref(),
        "1".as_ref(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "1\t1\t1.000000\tThe cat sat on the mat .\tThe cat sat on the mat .\n\
         2\t2\t1.000000\tA dog barked loudly .\tA dog barked loudly .\n"
    );
}

#[test]
fn align_rejects_inverted_band() {
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("src.txt");
    fs::write(&src, "x\n").unwrap();
    let o = tsw([
        "align".as_ref(),
        "--src".as_ref(),
        src.as_os_str(),
        "--tgt".as_ref(),
        src.as_os_str(),
        "--lo".as_ref(),
        "0.9".as_ref(),
        "--hi".as_ref(),
        "0.1".as_ref(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
