use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alc-abduct")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn entails_exit_codes() {
    let onto = fixture("redundant_disjuncts.dl");
    let onto = onto.to_str().unwrap();
    let yes = cli(&["entails", "--ontology", onto, "--axiom", "A SubClassOf D"]);
    assert_eq!(yes.status.code(), Some(0), "{}", stdout(&yes));
    let no = cli(&["entails", "--ontology", onto, "--axiom", "D SubClassOf A"]);
    assert_eq!(no.status.code(), Some(1));
    let bad = cli(&["entails", "--ontology", onto, "--axiom", "A SubClassOf"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}

#[test]
fn abduce_writes_hypothesis_report_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let trace = dir.path().join("trace.txt");
    let out = cli(&[
        "abduce",
        "--ontology",
        fixture("pogona.dl").to_str().unwrap(),
        "--observation",
        fixture("pogona.obs").to_str().unwrap(),
        "--forget",
        "Woodland",
        "--report",
        report.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let h = stdout(&out);
    assert!(h.contains("Pogona") && h.contains("PineWoods"), "{h}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["mode"], "full");
    assert_eq!(json["conditions"]["explains"], "holds");
    assert!(std::fs::read_to_string(&trace).unwrap().contains("ℓ"));
}

#[test]
fn abduce_rejects_an_entailed_observation() {
    let dir = tempfile::tempdir().unwrap();
    let obs = dir.path().join("obs");
    std::fs::write(&obs, "D(a)\n").unwrap();
    let onto = dir.path().join("o.dl");
    std::fs::write(&onto, "A SubClassOf D\nA(a)\n").unwrap();
    let out =
        cli(&["abduce", "--ontology", onto.to_str().unwrap(), "--observation", obs.to_str().unwrap(), "--forget", "D"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let a = cli(&["generate", "--tbox", "50", "--seed", "3"]);
    let b = cli(&["generate", "--tbox", "50", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 55);
}

#[test]
fn bench_prints_the_csv_header() {
    let out = cli(&["bench", "--synthetic", "40", "--num-obs", "2", "--sizes", "1", "--modes", "approx"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some(alc_abduct::bench::CSV_HEADER));
    assert_eq!(csv.lines().count(), 3);
}
