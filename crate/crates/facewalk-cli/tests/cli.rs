use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn facewalk(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_facewalk"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("FACEWALK_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    let input = stdin.to_string();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let o = child.wait_with_output().unwrap();
    writer.join().unwrap();
    Run {
        code: o.status.code().unwrap(),
        out: String::from_utf8(o.stdout).unwrap(),
        err: String::from_utf8(o.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    facewalk(args, "", &[])
}

fn pipe(args: &[&str], input: &str) -> Run {
    facewalk(args, input, &[])
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "facewalk", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn body(out: &str) -> Vec<&str> {
    out.lines().skip(1).collect()
}

#[test]
fn generate_examples() {
    let r = run(&["generate", "--family", "cube", "--n", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "#family=cube n=1 cyclic=1\n0\n-\n1\nEMPTY\n");
    assert_eq!(body(&run(&["generate", "--family", "cube", "--n", "3"]).out).len(), 28);
    assert_eq!(body(&run(&["generate", "--family", "perm", "--n", "2"]).out), ["1|2", "12", "2|1", "EMPTY"]);
    assert_eq!(body(&run(&["generate", "--family", "assoc", "--n", "4"]).out).len(), 4);
}

#[test]
fn json_lines_carry_ranks() {
    let r = run(&["generate", "--family", "perm", "--n", "3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let rows: Vec<serde_json::Value> = r.out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[0], serde_json::json!({"id": "1|2|3", "rank": 0}));
    assert_eq!(rows[13], serde_json::json!({"id": "EMPTY", "rank": -1}));
    assert!(rows.iter().any(|v| v["id"] == "123" && v["rank"] == 2));
    for fam in ["cube", "bperm", "assoc"] {
        let r = run(&["generate", "--family", fam, "--n", "4", "--format", "json"]);
        assert_eq!(r.code, 0, "{fam}");
        let ranks: Vec<i64> =
            r.out.lines().map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["rank"].as_i64().unwrap()).collect();
        // consecutive faces are in cover relation, up to the EMPTY wrap
        for w in ranks[..ranks.len() - 1].windows(2) {
            assert_eq!((w[0] - w[1]).abs(), 1, "{fam}");
        }
    }
}

#[test]
fn round_trips_for_every_family() {
    let cases: &[(&str, &[usize])] =
        &[("cube", &[1, 2, 3, 4, 5]), ("perm", &[2, 3, 4, 5]), ("bperm", &[1, 2, 3]), ("assoc", &[4, 5, 6, 7, 8])];
    for &(fam, sizes) in cases {
        for n in sizes {
            let n = n.to_string();
            let g = run(&["generate", "--family", fam, "--n", &n]);
            assert_eq!(g.code, 0, "{fam} {n}: {}", g.err);
            let v = pipe(&["verify"], &g.out);
            assert_eq!((v.code, v.out.as_str()), (0, "OK\n"), "{fam} {n}");
            let v = pipe(&["verify", "--family", fam, "--n", &n], &g.out);
            assert_eq!(v.code, 0);
        }
    }
    let graph = temp_file("#graph n=5\n1 2\n2 3\n1 3\n3 4\n4 5\n");
    let gpath = graph.path().to_str().unwrap();
    let g = run(&["generate", "--family", "gassoc", "--graph", gpath]);
    assert_eq!(g.code, 0, "{}", g.err);
    assert_eq!(pipe(&["verify", "--graph", gpath], &g.out).code, 0);

    let cong = temp_file("#congruence n=4\nfence 1 3 {2}\nfence 2 4 {}\n");
    let cpath = cong.path().to_str().unwrap();
    let g = run(&["generate", "--family", "quotientope", "--congruence", cpath]);
    assert_eq!(g.code, 0, "{}", g.err);
    assert_eq!(pipe(&["verify", "--congruence", cpath], &g.out).code, 0);
    let g = run(&["generate", "--family", "quotientope", "--n", "3"]);
    assert_eq!(body(&g.out).len(), 14);
    assert_eq!(pipe(&["verify"], &g.out).code, 0);

    for file in ["cube.plane", "fano.plane", "truncated_tetra1.plane"] {
        let path = data(file);
        let g = run(&["generate", "--family", "planar3", "--graph", &path]);
        assert_eq!(g.code, 0, "{file}");
        assert_eq!(pipe(&["verify", "--graph", &path], &g.out).code, 0, "{file}");
    }
}

#[test]
fn broken_listings_fail_with_position() {
    let g = run(&["generate", "--family", "cube", "--n", "3"]);
    let mut lines: Vec<&str> = g.out.lines().collect();
    lines[1..].shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    let v = pipe(&["verify"], &(lines.join("\n") + "\n"));
    assert_eq!(v.code, 1);
    assert!(v.out.starts_with("FAIL "), "{}", v.out);
    let pos: usize = v.out.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(pos >= 1);

    let short = g.out.lines().take(20).collect::<Vec<_>>().join("\n");
    assert_eq!(pipe(&["verify"], &short).code, 1);

    // an unstable representative of a quotientope class
    let cong = temp_file("#congruence n=3\nfence 1 3 {2}\n");
    let cpath = cong.path().to_str().unwrap();
    let g = run(&["generate", "--family", "quotientope", "--congruence", cpath]);
    let tampered = g.out.replace("\n2|1|3\n", "\n2|13\n");
    assert_ne!(tampered, g.out);
    let v = pipe(&["verify", "--congruence", cpath], &tampered);
    assert_eq!(v.code, 1);
    assert!(v.out.contains("stable"), "{}", v.out);
}

#[test]
fn budget_is_distinct_from_failure() {
    let g = run(&["generate", "--family", "perm", "--n", "8"]);
    let v = pipe(&["verify"], &g.out);
    assert_eq!(v.code, 2);
    assert!(v.err.contains("oracle budget exceeded"), "{}", v.err);

    let g = run(&["generate", "--family", "cube", "--n", "4"]);
    assert_eq!(facewalk(&["verify"], &g.out, &[("FACEWALK_BUDGET", "50")]).code, 2);
    assert_eq!(facewalk(&["verify"], &g.out, &[("FACEWALK_BUDGET", "82")]).code, 0);
    assert_eq!(facewalk(&["verify"], &g.out, &[("FACEWALK_BUDGET", "lots")]).code, 3);

    let cong = temp_file("#congruence n=6\n");
    let g = run(&["generate", "--family", "quotientope", "--congruence", cong.path().to_str().unwrap()]);
    assert_eq!(g.code, 0);
    assert_eq!(pipe(&["verify", "--congruence", cong.path().to_str().unwrap()], &g.out).code, 2);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(run(&["generate", "--family", "gassoc"]).code, 3);
    assert_eq!(run(&["generate", "--family", "assoc", "--n", "3"]).code, 3);
    assert_eq!(run(&["generate", "--family", "cube"]).code, 3);
    assert_eq!(run(&["generate", "--family", "planar3", "--graph", "/nonexistent"]).code, 3);
    assert_eq!(pipe(&["verify"], "cube\n0\n").code, 3);
    assert_eq!(pipe(&["verify"], "#family=cube n=2 cyclic=1\n").code, 1);
    assert_eq!(pipe(&["verify", "--family", "perm"], "#family=cube n=2 cyclic=1\n00\n").code, 3);
    let bad = temp_file("#graph n=4\n1 2\n2 3\n3 4\n4 1\n");
    assert_eq!(run(&["generate", "--family", "gassoc", "--graph", bad.path().to_str().unwrap()]).code, 3);
    let bad = temp_file("1: 2\n2: 1\nouter: 1 2\n");
    assert_eq!(run(&["generate", "--family", "planar3", "--graph", bad.path().to_str().unwrap()]).code, 3);
    // argument parsing errors come from clap and are nonzero
    assert_ne!(run(&["generate", "--family", "nope", "--n", "2"]).code, 0);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["generate", "--family", "bperm", "--n", "3"][..],
        &["generate", "--family", "assoc", "--n", "7", "--format", "json"],
        &["sweep", "--family", "cube", "--n", "3"],
        &["strip", "--family", "cube-faces", "--n", "3"],
    ] {
        assert_eq!(run(args).out, run(args).out);
    }
    let fano = data("fano.plane");
    assert_eq!(run(&["decide-strip", "--graph", &fano]).out, run(&["decide-strip", "--graph", &fano]).out);
}

#[test]
fn strips_and_sweeps() {
    for (fam, n) in [("cube-faces", "4"), ("boolean-mirror", "5"), ("boolean-stack", "5")] {
        let s = run(&["strip", "--family", fam, "--n", n]);
        assert_eq!(s.code, 0);
        assert!(s.out.starts_with(&format!("#strip family={fam} n={n}\n")));
        assert_eq!(pipe(&["strip-verify"], &s.out).out, "OK\n");
        let sw = pipe(&["sweep"], &s.out);
        assert_eq!(sw.code, 0);
        assert_eq!(pipe(&["facet-verify"], &sw.out).code, 0, "{fam}");
    }
    let sw = run(&["sweep", "--family", "cube", "--n", "3"]);
    assert_eq!(body(&sw.out).len(), 26);
    let v = pipe(&["facet-verify", "--n", "3"], &sw.out);
    assert_eq!((v.code, v.out.as_str()), (0, "OK\n"));
    assert!(v.err.contains("facets=26"));

    let mut flags: Vec<&str> = sw.out.lines().collect();
    flags.swap(3, 9);
    assert_eq!(pipe(&["facet-verify"], &flags.join("\n")).code, 1);

    let signed = run(&["sweep", "--family", "cube", "--n", "2", "--signed"]);
    assert_eq!(body(&signed.out).len(), 8);

    // dropping one edge leaves a cover pair uncovered
    let s = run(&["strip", "--family", "cube-faces", "--n", "2"]).out;
    let edges = s.find("edges:").unwrap();
    let mut lines: Vec<String> = s[edges..].lines().map(str::to_string).collect();
    lines.remove(1);
    let tampered = format!("{}{}\n", &s[..edges], lines.join("\n"));
    assert_eq!(pipe(&["strip-verify"], &tampered).code, 1);
}

#[test]
fn planar_strips() {
    let cube = data("cube.plane");
    let s = run(&["strip", "--family", "planar3", "--graph", &cube]);
    assert_eq!(s.code, 0, "{}", s.err);
    assert_eq!(pipe(&["strip-verify", "--graph", &cube], &s.out).code, 0);
    assert_eq!(pipe(&["strip-verify"], &s.out).code, 3);
    let s = run(&["strip", "--family", "planar3", "--graph", &cube, "--cycle", "1,2,3,4,8,7,6,5"]);
    assert_eq!(s.code, 0, "{}", s.err);
    assert_eq!(pipe(&["strip-verify", "--graph", &cube], &s.out).code, 0);

    let fano = data("fano.plane");
    let s = run(&["strip", "--family", "planar3", "--graph", &fano, "--cycle", "1 2 3 4 5 6 7"]);
    assert_eq!(s.code, 1);
    assert!(s.out.contains("chords"), "{}", s.out);
}

#[test]
fn decide_strip_answers() {
    let r = run(&["decide-strip", "--graph", &data("fano.plane")]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "NO");
    assert!(lines.len() > 1);
    assert!(lines[1..].iter().all(|l| l.starts_with("cycle ") && l.split(" chords ").nth(1).unwrap().split(' ').count() == 3));

    for file in ["truncated_tetra0.plane", "truncated_tetra1.plane"] {
        assert!(run(&["decide-strip", "--graph", &data(file)]).out.starts_with("NO\n"), "{file}");
    }

    let cube = data("cube.plane");
    let r = run(&["decide-strip", "--graph", &cube]);
    assert!(r.out.starts_with("YES\ncycle "));
    let strip: String = r.out.lines().skip(2).map(|l| format!("{l}\n")).collect();
    assert_eq!(pipe(&["strip-verify", "--graph", &cube], &strip).code, 0);

    let r = run(&["decide-strip", "--graph", &cube, "--budget", "6"]);
    assert_eq!(r.code, 2);
}

#[test]
fn bench_reports_csv() {
    let r = run(&["bench", "--family", "cube", "--n", "6"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "family,n,faces,seconds,faces_per_sec,max_step_work,mean_step_work,peak_rss_kb");
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row[..3], ["cube", "6", "730"]);
    assert!(row[5].parse::<usize>().unwrap() <= 6);

    assert_eq!(run(&["bench", "--family", "perm", "--n", "5", "--min-rate", "1e15"]).code, 1);
    assert_eq!(run(&["bench", "--family", "assoc", "--n", "6", "--max-work", "0"]).code, 1);
}
