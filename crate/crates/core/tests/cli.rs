use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_edgecolor");

fn edgecolor(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_writes_instances() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgecolor(dir.path(), &["gen", "fat_triangle:2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "c name fat_triangle:2,2,2\np multigraph 3 6\ne 0 1\ne 0 1\ne 0 2\ne 0 2\ne 1 2\ne 1 2\n"
    );
    let o = edgecolor(dir.path(), &["gen", "random:6,0.5,2", "--seed", "9", "--out", "r.mg"]);
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read(dir.path().join("r.mg")).unwrap();
    edgecolor(dir.path(), &["gen", "random:6,0.5,2", "--seed", "9", "--out", "r.mg"]);
    assert_eq!(first, fs::read(dir.path().join("r.mg")).unwrap());
    assert_eq!(edgecolor(dir.path(), &["gen", "thick_ring:4,2"]).status.code(), Some(1));
}

#[test]
fn density_chi_and_reorder() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.mg", "p multigraph 3 3\ne 0 1\ne 0 2\ne 1 2\n");
    let o = edgecolor(dir.path(), &["density", "k3.mg"]);
    assert_eq!(stdout(&o), "omega 3\nwitness 0 1 2\nwitness_edges 3\nfractional_index 3\n");
    let o = edgecolor(dir.path(), &["chi", "k3.mg", "--out", "opt.col"]);
    assert_eq!(stdout(&o), "chi 3\n");
    assert_eq!(fs::read_to_string(dir.path().join("opt.col")).unwrap().lines().count(), 3);

    write(dir.path(), "path.mg", "p multigraph 3 2\ne 0 1\ne 1 2\n");
    let o = edgecolor(dir.path(), &["reorder", "path.mg"]);
    assert_eq!(stdout(&o), "vertices 1 0 2\nedges 0 1\n");
}

#[test]
fn color_and_check() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.mg", "p multigraph 3 3\ne 0 1\ne 0 2\ne 1 2\n");
    let o = edgecolor(dir.path(), &["color", "k3.mg", "--k", "omega", "--trace", "t.jsonl", "--out", "k3.col"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k 3\ncomplete 3 edges\nresult complete\n");
    assert_eq!(fs::read_to_string(dir.path().join("k3.col")).unwrap(), "0 1\n1 2\n2 3\n");
    assert_eq!(fs::read_to_string(dir.path().join("t.jsonl")).unwrap().lines().count(), 3);

    let o = edgecolor(dir.path(), &["check", "k3.mg", "k3.col"]);
    assert_eq!(stdout(&o), "k 3\nproper yes\ncomplete yes\nadmissible yes\n");

    write(dir.path(), "star.mg", "p multigraph 4 3\ne 0 1\ne 0 2\ne 0 3\n");
    write(dir.path(), "star.col", "0 1\n");
    let o = edgecolor(dir.path(), &["check", "star.mg", "star.col"]);
    assert_eq!(stdout(&o), "k 2\nproper yes\ncomplete no\nadmissible no S={0,2,3} cover=1 uncolored_inside=2\n");
    write(dir.path(), "bad.col", "0 1\n1 1\n");
    let o = edgecolor(dir.path(), &["check", "star.mg", "bad.col"]);
    assert_eq!(stdout(&o), "k 2\nproper no\ncomplete no\n");

    let o = edgecolor(dir.path(), &["color", "star.mg"]);
    assert_eq!(stdout(&o), "k 2\nhalted at step 1 S={0,2,3} cover=1 uncolored_inside=2\nresult halted\n");
}

#[test]
fn color_splits_components() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "two.mg", "p multigraph 6 4\ne 0 1\ne 3 4\ne 4 5\ne 3 5\n");
    let o = edgecolor(dir.path(), &["color", "two.mg", "--trace", "t.jsonl", "--out", "two.col"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k 3\ncomponent 0 complete 1 edges\ncomponent 1 complete 3 edges\nresult complete\n");
    let trace = fs::read_to_string(dir.path().join("t.jsonl")).unwrap();
    assert!(trace.lines().nth(1).unwrap().contains(r#""component":1,"edge":1,"u":3,"v":4"#));
    let o = edgecolor(dir.path(), &["check", "two.mg", "two.col"]);
    assert!(stdout(&o).contains("proper yes\ncomplete yes\nadmissible yes"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(edgecolor(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(edgecolor(dir.path(), &["density"]).status.code(), Some(1));
    assert_eq!(edgecolor(dir.path(), &["density", "missing.mg"]).status.code(), Some(1));
    assert_eq!(edgecolor(dir.path(), &["--help"]).status.code(), Some(0));

    let mut big = String::from("p multigraph 27 1\ne 0 1\n");
    write(dir.path(), "big.mg", &big);
    assert_eq!(edgecolor(dir.path(), &["density", "big.mg"]).status.code(), Some(2));
    big = String::from("p multigraph 2 41\n") + &"e 0 1\n".repeat(41);
    write(dir.path(), "fat.mg", &big);
    assert_eq!(edgecolor(dir.path(), &["chi", "fat.mg"]).status.code(), Some(2));
    let o = edgecolor(dir.path(), &["chi", "fat.mg", "--force"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "chi 41\n".to_string()));
}

#[test]
fn search_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--family", "random", "--count", "8", "--seed", "7", "--n", "6", "--out", "a.csv", "--traces", "ta"];
    assert_eq!(edgecolor(dir.path(), &args).status.code(), Some(0));
    let mut again = args;
    again[10] = "b.csv";
    again[12] = "tb";
    assert_eq!(edgecolor(dir.path(), &again).status.code(), Some(0));
    let read = |p: &str| fs::read(dir.path().join(p)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_eq!(read("a.summary.csv"), read("b.summary.csv"));
    for i in 0..8 {
        let name = format!("{i:04}.jsonl");
        assert_eq!(read(&format!("ta/{name}")), read(&format!("tb/{name}")));
    }
    assert_eq!(String::from_utf8(read("a.csv")).unwrap().lines().count(), 9);
}

#[test]
fn sampled_fat_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgecolor(
        dir.path(),
        &["search", "--family", "fat_triangle", "--min-mult", "2", "--max-mult", "4", "--count", "50", "--seed", "7", "--out", "report.csv"],
    );
    assert_eq!(o.status.code(), Some(0));
    let report = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(report.lines().count(), 51);
    assert!(stdout(&o).starts_with("instances 50 applicable 50 completions 50"));
}

/// Forcing a palette below the density makes the greedy halt on an
/// applicable instance; the run must be flagged and the bundle must replay.
#[test]
fn candidate_failures_are_bundled_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let o = edgecolor(
        dir.path(),
        &["search", "--family", "named", "--names", "shannon,k3", "--k", "4", "--out", "report.csv"],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("candidate_failures 1"), "{out}");
    let report = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.contains("CONJECTURE-CANDIDATE-FAILURE"));

    let bundle = dir.path().join("report.artifacts").join("0000-named-shannon-s0");
    for f in ["instance.mg", "trace.jsonl", "replay.sh"] {
        assert!(bundle.join(f).exists(), "{f}");
    }
    let bin_dir = Path::new(BIN).parent().unwrap();
    let path = format!("{}:{}", bin_dir.display(), std::env::var("PATH").unwrap_or_default());
    let replay = Command::new("sh").arg("replay.sh").current_dir(&bundle).env("PATH", path).output().unwrap();
    assert!(replay.status.success(), "{}", String::from_utf8_lossy(&replay.stderr));
}
