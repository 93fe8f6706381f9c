use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn eventlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eventlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn chi_and_omega_of_fig1() {
    let fig1 = fixture("fig1.es");
    let o = eventlab(&["chi", &fig1], None);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "4\n"));
    let o = eventlab(&["omega", &fig1], None);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "3\n"));
}

#[test]
fn label_then_verify_through_stdin() {
    let fork = fixture("fork.es");
    let labels = eventlab(&["label", &fork, "--strategy", "forest3"], None);
    assert_eq!(labels.status.code(), Some(0));
    assert_eq!(stdout(&labels), std::fs::read_to_string(fixture("fork.labels")).unwrap());
    let o = eventlab(&["verify", &fork, "--labels", "-"], Some(&stdout(&labels)));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn verify_reports_violations() {
    let o = eventlab(&["verify", &fixture("pair_conf.es"), "--labels", &fixture("constant.labels")], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "violation a b\n");
}

#[test]
fn every_strategy_runs_on_fig1_or_reports_its_precondition() {
    let fig1 = fixture("fig1.es");
    for strategy in ["stratified", "dilworth", "simple12", "exact"] {
        let o = eventlab(&["label", &fig1, "--strategy", strategy], None);
        assert_eq!(o.status.code(), Some(0), "{strategy}");
        let v = eventlab(&["verify", &fig1, "--labels", "-"], Some(&stdout(&o)));
        assert_eq!(v.status.code(), Some(0), "{strategy}");
    }
    let o = eventlab(&["label", &fig1, "--strategy", "stratified", "--h", "below-count"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = eventlab(&["label", &fig1, "--strategy", "forest3"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("NotAForest"));
    let o = eventlab(&["label", &fig1, "--strategy", "degree2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("DegreeTooHigh"));
}

#[test]
fn stats_and_validate() {
    let o = eventlab(&["stats", &fixture("fig1.es")], None);
    assert_eq!(
        stdout(&o),
        "events: 9\nis_forest: false\nis_graded: true\nis_simple: true\ndegree: 3\nheight: 2\nwidth: 5\ne0: 2\ne1: 6\ne2: 1\ne3: 0\n"
    );
    let o = eventlab(&["validate", "-"], Some("event a\ncover a b\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("UnknownEventRef"));
    let o = eventlab(&["validate", "-"], Some("event a\nevent b\ncover a b\nconflict a b\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ConflictOnComparablePair"));
    let o = eventlab(&["validate", "/nonexistent/x.es"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn domain_graph_and_cycles() {
    let o = eventlab(&["domain", &fixture("pair_conc.es")], None);
    assert_eq!(stdout(&o), "nodes: 4\nedges: 4\nmax_out_degree: 2\n");
    let o = eventlab(&["domain", &fixture("pair_conc.es"), "--dot"], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("pair_conc.domain.dot")).unwrap());
    let o = eventlab(&["domain", &fixture("fig1.es"), "--cap", "5"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("DomainTooLarge"));

    let o = eventlab(&["graph", &fixture("pair_conf.es"), "--dot"], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("pair_conf.graph.dot")).unwrap());
    let fig1 = fixture("fig1.es");
    let o = eventlab(&["graph", &fig1, "--dot", "--labels", &fixture("fig1.exact.labels")], None);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("fig1.exact.dot")).unwrap());

    let o = eventlab(&["cycles", &fig1], None);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "none\n"));
    let square = "event p\nevent q\nevent r\nevent s\nevent a\nevent b\nevent c\nevent d\n\
                  cover p a\ncover r b\ncover q c\ncover s d\nconflict p q\nconflict r s\n";
    let o = eventlab(&["cycles", "-", "--max-len", "4"], Some(square));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("cycle "));
}

#[test]
fn gen_is_deterministic_and_parsable() {
    let args = ["gen", "--events", "20", "--degree", "3", "--shape", "forest", "--seed", "42"];
    let a = eventlab(&args, None);
    let b = eventlab(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = eventlab(&["stats", "-"], Some(&stdout(&a)));
    assert!(stdout(&o).contains("events: 20\nis_forest: true\n"));
    let o = eventlab(&["gen", "--events", "3", "--degree", "5", "--shape", "general", "--seed", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("InvalidParams"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(eventlab(&[], None).status.code(), Some(2));
    assert_eq!(eventlab(&["label", &fixture("fig1.es")], None).status.code(), Some(2));
    assert_eq!(eventlab(&["frobnicate"], None).status.code(), Some(2));
    let o = eventlab(&["verify", "-", "--labels", "-"], Some(""));
    assert_eq!(o.status.code(), Some(2));
}
