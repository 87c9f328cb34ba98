//! End-to-end tests of the `tailmatch` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tailmatch"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_err(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        !out.status.success(),
        "command {args:?} unexpectedly succeeded:\nstdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    out
}

#[test]
fn generate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("p1");
    let out2 = dir.path().join("p2");
    for out in [&out1, &out2] {
        run_ok(&[
            "generate",
            "--n",
            "400",
            "--p-mode",
            "logn",
            "--s",
            "0.9",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    for name in ["a.edges", "b.edges", "truth.perm", "meta.json"] {
        assert_eq!(
            fs::read(out1.join(name)).unwrap(),
            fs::read(out2.join(name)).unwrap(),
            "{name} differs across identical runs"
        );
    }
}

#[test]
fn generate_meta_carries_resolved_p() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pair");
    run_ok(&[
        "generate",
        "--n",
        "1000",
        "--p-mode",
        "logn",
        "--s",
        "1",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    let (pair, meta) = tailmatch::io::read_pair(&out).unwrap();
    assert!((meta.p - 0.0069078).abs() < 1e-6, "meta p = {}", meta.p);
    // s = 1: reloading and evaluating under the truth gives zero disagreement.
    assert_eq!(
        tailmatch::edge_disagreement(&pair.g_a, &pair.g_b, &pair.truth).unwrap(),
        0
    );
}

fn write_toy_graphs(dir: &Path) -> (String, String) {
    let a_edges = "18 15\n18 12\n18 21\n18 2\n18 20\n15 3\n2 3\n20 24\n3 24\n3 4\n\
                   5 6\n5 7\n7 8\n7 9\n9 10\n9 11\n";
    let b_edges = "9 15\n9 5\n9 21\n9 2\n9 20\n15 3\n2 3\n20 24\n3 24\n3 4\n\
                   12 6\n12 7\n7 8\n7 18\n18 10\n18 11\n24 0\n";
    let a_path = dir.join("a.edges");
    let b_path = dir.join("b.edges");
    fs::write(&a_path, a_edges).unwrap();
    fs::write(&b_path, b_edges).unwrap();
    (
        a_path.to_str().unwrap().to_string(),
        b_path.to_str().unwrap().to_string(),
    )
}

#[test]
fn match_toy_pair_maps_known_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_toy_graphs(dir.path());
    let out = dir.path().join("matching.tsv");
    run_ok(&[
        "match", "--a", &a, "--b", &b, "--n", "25", "--theta", "1", "--lambda", "2", "--out",
        out.to_str().unwrap(),
    ]);
    let content = fs::read_to_string(&out).unwrap();
    let rows: Vec<(&str, &str)> = content
        .lines()
        .map(|l| {
            let mut f = l.split('\t');
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.contains(&("5", "12")), "missing 5 -> 12 in:\n{content}");
    assert!(rows.contains(&("18", "9")), "missing 18 -> 9 in:\n{content}");
}

#[test]
fn match_rejects_size_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.edges");
    let b = dir.path().join("b.edges");
    fs::write(&a, "0 1\n1 2\n").unwrap();
    fs::write(&b, "0 1\n").unwrap();
    let out = run_err(&[
        "match",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--out",
        dir.path().join("m.tsv").to_str().unwrap(),
    ]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("node counts"), "stderr: {stderr}");
}

fn bench_args<'a>(out: &'a str, seed: &'a str) -> Vec<&'a str> {
    vec![
        "bench",
        "--n",
        "150",
        "--p",
        "0.05",
        "--p-mode",
        "explicit",
        "--s-grid",
        "0.9",
        "--replicates",
        "2",
        "--seed",
        seed,
        "--out",
        out,
    ]
}

/// Strips the wall-time columns, which legitimately vary across runs.
fn stable_columns(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            fields[..fields.len().saturating_sub(3)].join(",")
        })
        .collect()
}

#[test]
fn bench_row_contract_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("b1.csv");
    let out2 = dir.path().join("b2.csv");
    run_ok(&bench_args(out1.to_str().unwrap(), "11"));
    run_ok(&bench_args(out2.to_str().unwrap(), "11"));

    let csv1 = fs::read_to_string(&out1).unwrap();
    let lines: Vec<&str> = csv1.lines().collect();
    assert_eq!(
        lines[0],
        "n,p_mode,p,s,seed,matcher,accuracy,mean_cost,t_feature_ms,t_matrix_ms,t_assign_ms"
    );
    // One grid point x two replicates x two matchers.
    assert_eq!(lines.len(), 1 + 4);
    assert_eq!(
        lines.iter().filter(|l| l.contains("hungarian")).count(),
        2
    );
    assert_eq!(lines.iter().filter(|l| l.contains("greedy")).count(), 2);

    let csv2 = fs::read_to_string(&out2).unwrap();
    assert_eq!(
        stable_columns(&csv1),
        stable_columns(&csv2),
        "non-timing columns must be identical for a fixed master seed"
    );
}

#[test]
fn bench_restricted_matcher() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let mut args = bench_args(out.to_str().unwrap(), "3");
    args.extend_from_slice(&["--matcher", "greedy"]);
    run_ok(&args);
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2);
    assert!(csv.lines().skip(1).all(|l| l.contains("greedy")));
}

#[test]
fn bench_invalid_s_leaves_no_partial_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let mut args = bench_args(out.to_str().unwrap(), "3");
    args[8] = "1.5"; // s outside [0, 1]
    run_err(&args);
    assert!(!out.exists(), "failed run must not leave a partial CSV");
}

#[test]
fn tailscore_row_contract() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ts.csv");
    run_ok(&[
        "tailscore",
        "--s-grid",
        "0.7",
        "--instances",
        "1",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "s,mean_s_tail,mean_s_center,dropped_instances");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "0.7");
    assert!(fields[1].parse::<f64>().unwrap() >= 0.0);
    assert!(fields[2].parse::<f64>().unwrap() >= 0.0);
    let dropped: usize = fields[3].parse().unwrap();
    assert!(dropped <= 1);
}

#[test]
fn eval_truth_against_itself_is_perfect() {
    let dir = tempfile::tempdir().unwrap();
    let pair_dir = dir.path().join("pair");
    run_ok(&[
        "generate",
        "--n",
        "200",
        "--p",
        "0.05",
        "--s",
        "0.9",
        "--seed",
        "9",
        "--out",
        pair_dir.to_str().unwrap(),
    ]);
    let truth = pair_dir.join("truth.perm");
    let out = run_ok(&[
        "eval",
        "--matching",
        truth.to_str().unwrap(),
        "--truth",
        truth.to_str().unwrap(),
        "--a",
        pair_dir.join("a.edges").to_str().unwrap(),
        "--b",
        pair_dir.join("b.edges").to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let row = stdout.lines().nth(1).expect("csv row");
    let acc: f64 = row.split(',').next().unwrap().parse().unwrap();
    assert_eq!(acc, 1.0, "stdout: {stdout}");
}

#[test]
fn eval_swapped_arguments_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let pair_dir = dir.path().join("pair");
    run_ok(&[
        "generate",
        "--n",
        "100",
        "--p",
        "0.05",
        "--s",
        "1",
        "--seed",
        "2",
        "--out",
        pair_dir.to_str().unwrap(),
    ]);
    // Graph file passed where the matching belongs.
    let out = run_err(&[
        "eval",
        "--matching",
        pair_dir.join("a.edges").to_str().unwrap(),
        "--truth",
        pair_dir.join("truth.perm").to_str().unwrap(),
        "--a",
        pair_dir.join("a.edges").to_str().unwrap(),
        "--b",
        pair_dir.join("b.edges").to_str().unwrap(),
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn usage_errors_exit_nonzero() {
    run_err(&["generate", "--n", "10"]); // missing --s and --out
    run_err(&["bench", "--n", "50", "--out", "x.csv"]); // missing --s-grid
    run_err(&["frobnicate"]);
}

/// Two permuted copies of the same labeled network (the s = 1 real-data
/// arrangement): the file pipeline must run end to end and report accuracy.
#[test]
fn permuted_real_style_pipeline() {
    use rand::SeedableRng;
    use tailmatch::{permute_graph, Permutation};

    let dir = tempfile::tempdir().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    let n = 120;
    let g = tailmatch::generate_parent(n, 0.06, 31);
    let sigma = Permutation::uniform(n, &mut rng);
    let permuted = permute_graph(&g, &sigma).unwrap();

    // Arbitrary external labels, shared by both files.
    let label = |i: u32| format!("v{}", i * 3 + 7);
    let write_graph = |path: &Path, graph: &tailmatch::Graph| {
        let mut content = String::from("# collaboration-style snapshot\n");
        for (u, v) in graph.edges() {
            content.push_str(&format!("{} {}\n", label(u), label(v)));
        }
        fs::write(path, content).unwrap();
    };
    let a_path = dir.path().join("net_a.edges");
    let b_path = dir.path().join("net_b.edges");
    write_graph(&a_path, &g);
    write_graph(&b_path, &permuted);
    let truth_path = dir.path().join("truth.tsv");
    let mut truth = String::new();
    for i in 0..n as u32 {
        truth.push_str(&format!("{}\t{}\n", label(i), label(sigma.apply(i))));
    }
    fs::write(&truth_path, truth).unwrap();

    let matching = dir.path().join("matching.tsv");
    run_ok(&[
        "match",
        "--a",
        a_path.to_str().unwrap(),
        "--b",
        b_path.to_str().unwrap(),
        "--out",
        matching.to_str().unwrap(),
    ]);
    let out = run_ok(&[
        "eval",
        "--matching",
        matching.to_str().unwrap(),
        "--truth",
        truth_path.to_str().unwrap(),
        "--a",
        a_path.to_str().unwrap(),
        "--b",
        b_path.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let row = stdout.lines().nth(1).expect("csv row");
    let acc: f64 = row.split(',').next().unwrap().parse().unwrap();
    assert!(
        (0.0..=1.0).contains(&acc) && acc >= 0.9,
        "expected near-perfect recovery of a permuted copy, got {acc} ({stdout})"
    );
}
