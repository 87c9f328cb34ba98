use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use tailmatch::analysis::{accuracy, tail_center_scores, TailScoreConfig};
use tailmatch::io::{
    self, EdgeListFormat, EdgeRecord, LabelMap, PairMeta,
};
use tailmatch::tds::{self, FeatureConfig, FeatureVector};
use tailmatch::{
    edge_disagreement, fan_out_seed, generate_pair, AssignMethod, CorrelatedErConfig, Graph,
    MatchingF64, NodeId, PMode, Permutation, SimilarityMatrixF64,
};

use crate::args::{
    BenchArgs, BenchMatcherArg, EvalArgs, FormatArg, GenerateArgs, MatchArgs, MatcherArg,
    TailscoreArgs,
};

impl From<FormatArg> for EdgeListFormat {
    fn from(value: FormatArg) -> EdgeListFormat {
        match value {
            FormatArg::Whitespace => EdgeListFormat::Whitespace,
            FormatArg::Csv => EdgeListFormat::Csv,
        }
    }
}

fn resolve_p(n: usize, p: Option<f64>, mode: PMode) -> Result<f64> {
    match mode {
        PMode::Explicit => {
            p.context("--p is required with --p-mode explicit")
        }
        _ => Ok(mode.resolve(n, 0.0)),
    }
}

fn feature_config(theta: usize, lambda: usize) -> FeatureConfig {
    FeatureConfig {
        theta,
        lambda,
        pad_value: 0,
    }
}

pub fn run_generate(args: GenerateArgs) -> Result<()> {
    let p_mode: PMode = args.p_mode.into();
    let p = resolve_p(args.n, args.p, p_mode)?;
    let config = CorrelatedErConfig {
        n: args.n,
        p,
        s: args.s,
        seed: args.seed,
        p_mode,
    };
    let pair = generate_pair(&config)?;
    let meta = PairMeta {
        n: args.n,
        p,
        s: args.s,
        seed: args.seed,
        p_mode,
    };
    io::write_pair(&args.out, &pair, &meta)?;
    println!(
        "wrote pair to {} (n={}, p={p}, s={}, seed={}, m_a={}, m_b={})",
        args.out.display(),
        args.n,
        args.s,
        args.seed,
        pair.g_a.edge_count(),
        pair.g_b.edge_count()
    );
    Ok(())
}

fn load_graph(
    path: &Path,
    format: EdgeListFormat,
    positive_only: bool,
    n: Option<usize>,
) -> Result<(Graph, LabelMap)> {
    let mut records = io::parse_edge_records(path, format)?;
    if positive_only {
        records = io::filter_positive(records)?;
        if records.is_empty() {
            bail!("{}: no positive-weight edges left", path.display());
        }
    }
    match n {
        // Dense-id mode: the node universe is [0, n), labels are the ids.
        Some(n) => {
            let edges = records
                .iter()
                .map(|r| {
                    let parse = |s: &str| {
                        s.parse::<NodeId>().with_context(|| {
                            format!("{}: label {s:?} is not a dense id (--n given)", path.display())
                        })
                    };
                    Ok((parse(&r.source)?, parse(&r.target)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((Graph::from_edges(n, &edges)?, LabelMap::identity(n)))
        }
        None => Ok(io::graph_from_records(&records)?),
    }
}

fn pick_matcher(arg: MatcherArg, n: usize) -> AssignMethod {
    match arg {
        MatcherArg::Hungarian => AssignMethod::Hungarian,
        MatcherArg::Greedy => AssignMethod::Greedy,
        // Hungarian's cubic runtime grows dramatically past a couple of
        // thousand nodes; greedy keeps large inputs tractable.
        MatcherArg::Auto => {
            if n <= 2000 {
                AssignMethod::Hungarian
            } else {
                AssignMethod::Greedy
            }
        }
    }
}

fn solve(x: &SimilarityMatrixF64, method: AssignMethod) -> tailmatch::Result<MatchingF64> {
    match method {
        AssignMethod::Hungarian => tailmatch::hungarian(x),
        AssignMethod::Greedy => tailmatch::greedy(x),
    }
}

fn all_identical(features: &[FeatureVector]) -> bool {
    features.windows(2).all(|w| w[0] == w[1])
}

pub fn run_match(args: MatchArgs) -> Result<()> {
    let format = args.format.into();
    let (g_a, map_a) = load_graph(&args.a, format, args.positive_only, args.n)?;
    let (g_b, map_b) = load_graph(&args.b, format, args.positive_only, args.n)?;
    if g_a.node_count() != g_b.node_count() {
        bail!(
            "graphs have different node counts: {} vs {}",
            g_a.node_count(),
            g_b.node_count()
        );
    }
    let cfg = feature_config(args.features.theta, args.features.lambda);

    let t0 = Instant::now();
    let fa = tds::extract_all(&g_a, &cfg)?;
    let fb = tds::extract_all(&g_b, &cfg)?;
    let t_feature = t0.elapsed();

    let t1 = Instant::now();
    let x: SimilarityMatrixF64 = tds::similarity_matrix(&fa, &fb)?;
    let t_matrix = t1.elapsed();

    let method = pick_matcher(args.matcher, g_a.node_count());
    let t2 = Instant::now();
    let matching = solve(&x, method)?;
    let t_assign = t2.elapsed();

    io::write_matching(&args.out, &matching.pi_hat, &map_a, &map_b)?;
    println!(
        "matcher={} n={} mean_cost={} t_feature_ms={:.3} t_matrix_ms={:.3} t_assign_ms={:.3}",
        method.name(),
        g_a.node_count(),
        matching.mean_cost,
        t_feature.as_secs_f64() * 1e3,
        t_matrix.as_secs_f64() * 1e3,
        t_assign.as_secs_f64() * 1e3,
    );
    if all_identical(&fa) || all_identical(&fb) {
        println!("note: degenerate input, all feature vectors identical on at least one side");
    }
    Ok(())
}

/// Builds the node universe of an evaluation from the truth file, then maps
/// graphs and matching into it. Edge lists may omit isolated nodes; every
/// label they do carry must appear in the truth file.
struct EvalUniverse {
    map_a: LabelMap,
    map_b: LabelMap,
    truth: Permutation,
}

fn eval_universe(truth_path: &Path) -> Result<EvalUniverse> {
    let rows = io::read_label_pairs(truth_path)?;
    if rows.is_empty() {
        bail!("{}: empty truth file", truth_path.display());
    }
    let mut map_a = LabelMap::new();
    let mut map_b = LabelMap::new();
    let mut image = Vec::with_capacity(rows.len());
    for (idx, (a, b)) in rows.iter().enumerate() {
        if map_a.insert_or_get(a) != idx as NodeId {
            bail!("{}: duplicate source label {a:?}", truth_path.display());
        }
        image.push(map_b.insert_or_get(b));
    }
    let truth = Permutation::from_vec(image)
        .with_context(|| format!("{}: truth is not a bijection", truth_path.display()))?;
    Ok(EvalUniverse {
        map_a,
        map_b,
        truth,
    })
}

fn graph_in_universe(
    path: &Path,
    format: EdgeListFormat,
    positive_only: bool,
    map: &LabelMap,
) -> Result<Graph> {
    let mut records = io::parse_edge_records(path, format)?;
    if positive_only {
        records = io::filter_positive(records)?;
    }
    let resolve = |label: &str| -> Result<NodeId> {
        map.id_of(label).with_context(|| {
            format!(
                "{}: label {label:?} does not appear in the truth file",
                path.display()
            )
        })
    };
    let edges = records
        .iter()
        .map(|r: &EdgeRecord| Ok((resolve(&r.source)?, resolve(&r.target)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Graph::from_edges(map.len(), &edges)?)
}

pub fn run_eval(args: EvalArgs) -> Result<()> {
    let format = args.format.into();
    let universe = eval_universe(&args.truth)?;
    let g_a = graph_in_universe(&args.a, format, args.positive_only, &universe.map_a)?;
    let g_b = graph_in_universe(&args.b, format, args.positive_only, &universe.map_b)?;
    let matching = io::read_matching(&args.matching, &universe.map_a, &universe.map_b)?;

    let acc = accuracy(&matching, &universe.truth)?;
    let disagreement = edge_disagreement(&g_a, &g_b, &matching)?;

    let cfg = feature_config(args.features.theta, args.features.lambda);
    let fa = tds::extract_all(&g_a, &cfg)?;
    let fb = tds::extract_all(&g_b, &cfg)?;
    let n = g_a.node_count();
    let mean_cost: f64 = (0..n as NodeId)
        .map(|i| tds::feature_distance::<f64>(&fa[i as usize], &fb[matching.apply(i) as usize]))
        .sum::<f64>()
        / n as f64;

    let header = "accuracy,edge_disagreement,mean_cost";
    let row = format!("{acc},{disagreement},{mean_cost}");
    match &args.out {
        Some(path) => {
            let existing = fs::read_to_string(path).unwrap_or_default();
            let mut content = if existing.trim().is_empty() {
                format!("{header}\n")
            } else {
                existing
            };
            content.push_str(&row);
            content.push('\n');
            fs::write(path, content)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            println!("{header}");
            println!("{row}");
        }
    }
    Ok(())
}

struct BenchRow {
    s: f64,
    seed: u64,
    matcher: AssignMethod,
    accuracy: f64,
    mean_cost: f64,
    t_feature_ms: f64,
    t_matrix_ms: f64,
    t_assign_ms: f64,
}

pub fn run_bench(args: BenchArgs) -> Result<()> {
    let p_mode: PMode = args.p_mode.into();
    let p = resolve_p(args.n, args.p, p_mode)?;
    if args.replicates == 0 {
        bail!("--replicates must be >= 1");
    }
    if args.s_grid.is_empty() {
        bail!("--s-grid must not be empty");
    }
    let methods: Vec<AssignMethod> = match args.matcher {
        BenchMatcherArg::Hungarian => vec![AssignMethod::Hungarian],
        BenchMatcherArg::Greedy => vec![AssignMethod::Greedy],
        BenchMatcherArg::Both => vec![AssignMethod::Hungarian, AssignMethod::Greedy],
    };
    let cfg = feature_config(args.features.theta, args.features.lambda);

    let tasks: Vec<(usize, usize)> = (0..args.s_grid.len())
        .flat_map(|si| (0..args.replicates).map(move |r| (si, r)))
        .collect();

    let mut results: Vec<(usize, usize, Vec<BenchRow>)> = tasks
        .par_iter()
        .map(|&(si, rep)| {
            let s = args.s_grid[si];
            let seed = fan_out_seed(args.seed, (si * args.replicates + rep) as u64);
            let rows = bench_one(args.n, p, p_mode, s, seed, &cfg, &methods)?;
            Ok((si, rep, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|&(si, rep, _)| (si, rep));

    let mut csv = String::from(
        "n,p_mode,p,s,seed,matcher,accuracy,mean_cost,t_feature_ms,t_matrix_ms,t_assign_ms\n",
    );
    let mode_name = match p_mode {
        PMode::Explicit => "explicit",
        PMode::LogNOverN => "logn",
        PMode::Log2NOverN => "log2n",
    };
    for (_, _, rows) in &results {
        for r in rows {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3}\n",
                args.n,
                mode_name,
                p,
                r.s,
                r.seed,
                r.matcher.name(),
                r.accuracy,
                r.mean_cost,
                r.t_feature_ms,
                r.t_matrix_ms,
                r.t_assign_ms
            ));
        }
    }
    fs::write(&args.out, csv).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {} rows to {}",
        results.iter().map(|(_, _, r)| r.len()).sum::<usize>(),
        args.out.display()
    );
    Ok(())
}

fn bench_one(
    n: usize,
    p: f64,
    p_mode: PMode,
    s: f64,
    seed: u64,
    cfg: &FeatureConfig,
    methods: &[AssignMethod],
) -> Result<Vec<BenchRow>> {
    let pair = generate_pair(&CorrelatedErConfig {
        n,
        p,
        s,
        seed,
        p_mode,
    })?;

    let t0 = Instant::now();
    let fa = tds::extract_all(&pair.g_a, cfg)?;
    let fb = tds::extract_all(&pair.g_b, cfg)?;
    let t_feature_ms = t0.elapsed().as_secs_f64() * 1e3;

    let t1 = Instant::now();
    let x: SimilarityMatrixF64 = tds::similarity_matrix(&fa, &fb)?;
    let t_matrix_ms = t1.elapsed().as_secs_f64() * 1e3;

    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let t2 = Instant::now();
        let matching = solve(&x, method)?;
        let t_assign_ms = t2.elapsed().as_secs_f64() * 1e3;
        rows.push(BenchRow {
            s,
            seed,
            matcher: method,
            accuracy: accuracy(&matching.pi_hat, &pair.truth)?,
            mean_cost: matching.mean_cost,
            t_feature_ms,
            t_matrix_ms,
            t_assign_ms,
        });
    }
    Ok(rows)
}

pub fn run_tailscore(args: TailscoreArgs) -> Result<()> {
    let p_mode: PMode = args.p_mode.into();
    let p = resolve_p(args.n, args.p, p_mode)?;
    let cfg = TailScoreConfig {
        n: args.n,
        p,
        s_grid: args.s_grid.clone(),
        samples_per_instance: args.samples,
        instances: args.instances,
        threshold: args.threshold,
        bin_width: args.bin_width,
        support_clip: args.support_clip,
        seed: args.seed,
    };
    let report = tail_center_scores(&cfg)?;
    let mut csv = String::from("s,mean_s_tail,mean_s_center,dropped_instances\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            row.s, row.mean_s_tail, row.mean_s_center, row.dropped_instances
        ));
    }
    fs::write(&args.out, csv).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} rows to {}", report.rows.len(), args.out.display());
    Ok(())
}
