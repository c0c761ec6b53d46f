//! End-to-end runs of the binary: output shapes, exit codes, certificate
//! round trips and byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigidpack"))
}

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Self {
        let path = std::env::temp_dir().join(format!("rigidpack-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&path).unwrap();
        Dir(path)
    }

    fn file(&self, name: &str, content: &str) -> PathBuf {
        let path = self.0.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn complete_graph(n: usize) -> String {
    let mut out = format!("{n}\n");
    for u in 0..n {
        for v in u + 1..n {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

const BOWTIE: &str = "5\n0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n";

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn rank_reports_components() {
    let dir = Dir::new("rank");
    let graph = dir.file("bowtie.txt", BOWTIE);
    let out = run(bin().arg("rank").arg(&graph));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "rank 6 of max 7; not rigid; components: {0,1,2},{0,3,4}"
    );
}

#[test]
fn connectivity_exit_codes() {
    let dir = Dir::new("conn");
    let k7 = dir.file("k7.txt", &complete_graph(7));
    let yes = run(bin()
        .args(["connectivity"])
        .arg(&k7)
        .args(["--p", "6", "--q", "2"]));
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "yes");

    let no = run(bin()
        .args(["connectivity"])
        .arg(&k7)
        .args(["--p", "7", "--q", "2"]));
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("no:"), "{}", stdout(&no));
}

#[test]
fn pack_certificates_round_trip_through_certify() {
    let dir = Dir::new("pack");
    let k9 = dir.file("k9.txt", &complete_graph(9));
    let cert = dir.path("packing.txt");
    let out = run(bin()
        .arg("pack")
        .arg(&k9)
        .args(["-k", "1", "-l", "1", "-o"])
        .arg(&cert));
    assert_eq!(out.status.code(), Some(0));

    let verify = run(bin().arg("certify").arg(&k9).arg("--packing").arg(&cert));
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));

    // Tampering: hand one rigid edge to the tree as a duplicate.
    let text = std::fs::read_to_string(&cert).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let rigid_edge = lines[1].split_whitespace().nth(1).unwrap().to_string();
    let mut tree_fields: Vec<String> = lines[2].split_whitespace().map(String::from).collect();
    tree_fields.pop();
    tree_fields.push(rigid_edge);
    lines[2] = tree_fields.join(" ");
    let tampered = dir.file("tampered.txt", &(lines.join("\n") + "\n"));
    let verify = run(bin()
        .arg("certify")
        .arg(&k9)
        .arg("--packing")
        .arg(&tampered));
    assert_eq!(verify.status.code(), Some(1));
    assert!(
        stdout(&verify).contains("disjointness"),
        "{}",
        stdout(&verify)
    );
}

#[test]
fn deficiency_witness_round_trips() {
    let dir = Dir::new("witness");
    let bowtie = dir.file("bowtie.txt", BOWTIE);
    let cert = dir.path("witness.txt");
    let out = run(bin()
        .arg("pack")
        .arg(&bowtie)
        .args(["-k", "1", "-l", "0", "-o"])
        .arg(&cert));
    assert_eq!(out.status.code(), Some(1));

    let verify = run(bin()
        .arg("certify")
        .arg(&bowtie)
        .arg("--witness")
        .arg(&cert));
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
}

#[test]
fn removal_witness_round_trips_with_matching_flags() {
    let dir = Dir::new("removal");
    let k9 = dir.file("k9.txt", &complete_graph(9));
    let cert = dir.path("witness.txt");
    // Stripping the whole star at vertex 0 makes the packing impossible.
    let star = "0,1,2,3,4,5,6,7";
    let out = run(bin()
        .arg("pack")
        .arg(&k9)
        .args(["-k", "1", "-l", "1", "--remove", star, "-o"])
        .arg(&cert));
    assert_eq!(out.status.code(), Some(1));

    let verify = run(bin()
        .arg("certify")
        .arg(&k9)
        .arg("--witness")
        .arg(&cert)
        .args(["--remove", star]));
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));

    // Without the removal context the outside term cannot match.
    let verify = run(bin().arg("certify").arg(&k9).arg("--witness").arg(&cert));
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn cover_emission_round_trips() {
    let dir = Dir::new("cover");
    let bowtie = dir.file("bowtie.txt", BOWTIE);
    let cover = dir.path("cover.txt");
    let out = run(bin()
        .arg("rank")
        .arg(&bowtie)
        .arg("--emit-cover")
        .arg(&cover));
    assert_eq!(out.status.code(), Some(0));
    let verify = run(bin().arg("certify").arg(&bowtie).arg("--cover").arg(&cover));
    assert_eq!(verify.status.code(), Some(0));

    // A triangle is rigid, so its trivial cover cannot certify non-rigidity.
    let triangle = dir.file("triangle.txt", "3\n0 1\n1 2\n0 2\n");
    let tri_cover = dir.file("tri-cover.txt", "cover 1\n0 1 2\n");
    let verify = run(bin()
        .arg("certify")
        .arg(&triangle)
        .arg("--cover")
        .arg(&tri_cover));
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn certify_accepts_the_four_block_cover() {
    // Four 8-vertex cliques glued in a ring at four shared vertices: the
    // four blocks partition the 112 edges, and 4*(2*8-3) = 52 < 53 = 2*28-3.
    let blocks: [Vec<usize>; 4] = [
        (0..8).collect(),
        (7..15).collect(),
        (14..22).collect(),
        (21..28).chain([0]).collect(),
    ];
    let mut graph_text = String::from("28\n");
    for block in &blocks {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                let (u, v) = (block[i].min(block[j]), block[i].max(block[j]));
                graph_text.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    let mut cover_text = String::from("cover 4\n");
    for block in &blocks {
        let ids: Vec<String> = {
            let mut sorted = block.clone();
            sorted.sort_unstable();
            sorted.iter().map(|v| v.to_string()).collect()
        };
        cover_text.push_str(&ids.join(" "));
        cover_text.push('\n');
    }

    let dir = Dir::new("figure");
    let graph = dir.file("ring.txt", &graph_text);
    let cover = dir.file("cover.txt", &cover_text);
    let out = run(bin().arg("certify").arg(&graph).arg("--cover").arg(&cover));
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(
        stdout(&out).contains("52 < 53"),
        "expected the caption arithmetic, got: {}",
        stdout(&out)
    );
}

#[test]
fn orient_round_trips_and_is_deterministic() {
    let dir = Dir::new("orient");
    let k13 = dir.file("k13.txt", &complete_graph(13));
    let first = dir.path("o1.txt");
    let second = dir.path("o2.txt");
    for out_file in [&first, &second] {
        let out = run(bin()
            .arg("orient")
            .arg(&k13)
            .args(["-k", "1", "--seed", "7", "-o"])
            .arg(out_file));
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap(),
        "same seed, same bytes"
    );
    let verify = run(bin()
        .arg("certify")
        .arg(&k13)
        .arg("--orientation")
        .arg(&first)
        .args(["-k", "1"]));
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
}

#[test]
fn orient_reports_packing_stage_failure() {
    let dir = Dir::new("orient-fail");
    let path5 = dir.file("p5.txt", "5\n0 1\n1 2\n2 3\n3 4\n");
    let out = run(bin().arg("orient").arg(&path5).args(["-k", "1"]));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("stage packing"), "{err}");
}

#[test]
fn gen_is_byte_deterministic() {
    let a = run(bin().args([
        "gen", "--family", "random", "-n", "13", "--p", "6", "--q", "2", "--seed", "5",
    ]));
    let b = run(bin().args([
        "gen", "--family", "random", "-n", "13", "--p", "6", "--q", "2", "--seed", "5",
    ]));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));

    let c = run(bin().args([
        "gen",
        "--family",
        "circulant",
        "-n",
        "28",
        "--offsets",
        "1,2,3",
    ]));
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(stdout(&c).lines().count(), 85); // n line + 84 edges
}

#[test]
fn oracle_commands_agree() {
    let dir = Dir::new("oracle");
    let k4 = dir.file("k4.txt", &complete_graph(4));
    let laman = run(bin().arg("oracle").arg("laman").arg(&k4));
    let matrix = run(bin().arg("oracle").arg("matrix").arg(&k4));
    assert_eq!(stdout(&laman).trim(), "5");
    assert_eq!(stdout(&matrix).trim(), "5");
    let union = run(bin()
        .arg("oracle")
        .arg("union")
        .arg(&k4)
        .args(["-k", "0", "-l", "2"]));
    assert_eq!(stdout(&union).trim(), "6");
}

#[test]
fn malformed_input_exits_2() {
    let dir = Dir::new("bad");
    let loopy = dir.file("loop.txt", "2\n0 0\n");
    let out = run(bin().arg("rank").arg(&loopy));
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path("missing.txt");
    let out = run(bin().arg("rank").arg(&missing));
    assert_eq!(out.status.code(), Some(2));

    let k4 = dir.file("k4.txt", &complete_graph(4));
    let garbage = dir.file("garbage.txt", "not a certificate\n");
    let out = run(bin().arg("certify").arg(&k4).arg("--cover").arg(&garbage));
    assert_eq!(out.status.code(), Some(2));
}
