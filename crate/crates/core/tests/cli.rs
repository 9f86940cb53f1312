mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use atlas::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED};
use common::*;

fn atlas(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("atlas").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data(name: &str) -> String {
    data_path(name).to_string_lossy().into_owned()
}

#[test]
fn validate_summarises_each_input() {
    let (aif, dangling) = (data("fig_aif.xml"), data("dangling_xref.xml"));
    let (code, out, err) = atlas(&["validate", &aif, &dangling]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(out, format!("{aif}: ok\n{dangling}: 1 violation(s)\n"));
    assert_eq!(err, "DanglingReference A9,A3 referenced by A3\n");
}

#[test]
fn stats_counts_objects() {
    let (code, out, _) = atlas(&["stats", &data("fig_aif.xml")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "signals: 2\ntimelines: 2\nnodes: 5\nanchored: 5\nunanchored: 0\narcs: 3\n\
         type ASL: 1\ntype Part-of-Speech: 1\ntype Transcription: 1\n"
    );
    let (_, out, _) = atlas(&["stats", "--from", "lexicon", &data("fig_lexicon.xml")]);
    assert_eq!(out, "signals: 1\nentries: 2\nlexemes: 1\n");
}

#[test]
fn query_filters_conjoin() {
    let aif = data("fig_aif.xml");
    let (code, out, _) = atlas(&["query", "--feature", "sign=e", &aif]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "A1 ASL 382.520..383.922 sign=e\n");
    let (_, out, _) = atlas(&["query", "--feature", "sign=e", "--type", "W", &aif]);
    assert_eq!(out, "");
    let (_, out, _) = atlas(&["query", "--signal-group", "S2", &aif]);
    assert_eq!(out, "A2 Part-of-Speech 78..85 VBD\n");
    let (code, _, _) = atlas(&["query", "--feature", "no-equals-sign", &aif]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn timit_inputs_by_type_or_extension() {
    let (wrd, phn) = (data("sa1.wrd"), data("sa1.phn"));
    let by_ext = atlas(&[
        "convert",
        "--from",
        "timit-columns",
        "--to",
        "aif",
        &wrd,
        &phn,
    ]);
    let explicit = atlas(&[
        "convert",
        "--from",
        "timit-columns",
        "--to",
        "aif",
        &format!("W={wrd}"),
        &format!("P={phn}"),
    ]);
    assert_eq!(by_ext.0, EXIT_OK);
    assert_eq!(by_ext.1, explicit.1);
    assert_eq!(by_ext.1.as_bytes(), read_data("sa1.canonical.xml"));
    let (code, out, _) = atlas(&[
        "query",
        "--from",
        "timit-columns",
        "--type",
        "P",
        &wrd,
        &phn,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 10);
}

#[test]
fn tiers_come_back_out() {
    let (code, out, _) = atlas(&[
        "convert",
        "--from",
        "aif",
        "--to",
        "timit-columns",
        "--type",
        "P",
        &data("sa1.canonical.xml"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.as_bytes(), read_data("sa1.phn"));
    let (code, _, _) = atlas(&[
        "convert",
        "--from",
        "aif",
        "--to",
        "timit-columns",
        &data("fig_aif.xml"),
    ]);
    assert_eq!(code, EXIT_UNSUPPORTED);
}

#[test]
fn output_file_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("lex.xml");
    let (code, out, _) = atlas(&[
        "convert",
        "--from",
        "lexicon",
        "--to",
        "lexicon",
        "-o",
        target.to_str().unwrap(),
        &data("fig_lexicon.xml"),
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    assert_eq!(
        std::fs::read(&target).unwrap(),
        read_data("fig_lexicon.canonical.xml")
    );
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn strict_flag_rejects_unknown_elements() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.xml");
    std::fs::write(&path, "<AnnotationGraph><Extra/></AnnotationGraph>").unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(atlas(&["validate", path]).0, EXIT_OK);
    assert_eq!(atlas(&["--strict", "validate", path]).0, EXIT_PARSE);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(atlas(&["frobnicate"]).0, EXIT_PARSE);
    assert_eq!(atlas(&["convert", "--to", "yaml", "x"]).0, EXIT_PARSE);
    let (code, out, err) = atlas(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("validate") && err.is_empty());
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(["stats", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&read_data("fig_aif.xml"))
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("signals: 2\n"));
}

#[test]
fn empty_document_counts_zero() {
    let (code, out, _) = atlas(&["stats", &data("empty.xml")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.ends_with(": 0")), "{out}");
}

#[test]
fn query_and_stats_agree_with_the_library() {
    use atlas::aif::serialize_aif;
    use atlas::{AnnotationSet, Criterion};
    use rand::SeedableRng;

    let dir = tempfile::tempdir().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for i in 0..40 {
        let g = random_graph(&mut rng, 10, 16);
        let path = dir.path().join(format!("g{i}.xml"));
        std::fs::write(&path, serialize_aif(&g).unwrap()).unwrap();
        let path = path.to_str().unwrap();

        let (code, out, _) = atlas(&["query", path]);
        assert_eq!(code, EXIT_OK);
        let listed: Vec<&str> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
        let all: Vec<String> = g.arcs().map(|a| a.id.to_string()).collect();
        assert_eq!(listed, all);

        let set = AnnotationSet::from_graph(&g);
        let (_, out, _) = atlas(&["query", "--type", "W", "--signal-group", "T1", path]);
        let listed: Vec<&str> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
        let selected = set.select_all(&[Criterion::by_type("W"), Criterion::by_signal_group("T1")]);
        assert_eq!(
            listed,
            selected.iter().map(|id| id.as_str()).collect::<Vec<_>>()
        );

        let (_, out, _) = atlas(&["stats", path]);
        assert!(
            out.contains(&format!("\nnodes: {}\n", g.node_count())),
            "{out}"
        );
        assert!(
            out.contains(&format!("\narcs: {}\n", g.arc_count())),
            "{out}"
        );

        let first = atlas(&["convert", "--from", "aif", "--to", "aif", path]);
        assert_eq!(
            first,
            atlas(&["convert", "--from", "aif", "--to", "aif", path])
        );
    }
}
