//! Shared fixtures and oracles for the integration suites.
//!
//! Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use rand::Rng;
use tailmatch::analysis::accuracy;
use tailmatch::tds::{self, FeatureConfig};
use tailmatch::{
    generate_pair, AssignMethod, CorrelatedErConfig, Graph, NodeId, PMode, SimilarityMatrixF64,
};

/// 25-node graph with hand-checkable tail signatures (theta = 1, lambda = 2):
/// node 18 yields [1,2,2,4], node 5 yields [1,3,1,3].
pub fn toy_graph_a() -> Graph {
    Graph::from_edges(
        25,
        &[
            (18, 15),
            (18, 12),
            (18, 21),
            (18, 2),
            (18, 20),
            (15, 3),
            (2, 3),
            (20, 24),
            (3, 24),
            (3, 4),
            (5, 6),
            (5, 7),
            (7, 8),
            (7, 9),
            (9, 10),
            (9, 11),
        ],
    )
    .unwrap()
}

/// Correlated counterpart of [`toy_graph_a`]: the same graph relabeled
/// (18 <-> 9, 5 <-> 12) plus one extra edge (24, 0), so node 9 yields
/// [1,2,3,4] and node 12 yields [1,3,1,3].
pub fn toy_graph_b() -> Graph {
    Graph::from_edges(
        25,
        &[
            (9, 15),
            (9, 5),
            (9, 21),
            (9, 2),
            (9, 20),
            (15, 3),
            (2, 3),
            (20, 24),
            (3, 24),
            (3, 4),
            (12, 6),
            (12, 7),
            (7, 8),
            (7, 18),
            (18, 10),
            (18, 11),
            (24, 0),
        ],
    )
    .unwrap()
}

pub fn random_edges(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Exhaustive minimum assignment cost over all n! permutations.
pub fn brute_force_min_cost(x: &SimilarityMatrixF64) -> f64 {
    fn recurse(x: &SimilarityMatrixF64, row: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        if row == x.rows() {
            *best = best.min(acc);
            return;
        }
        for col in 0..x.cols() {
            if !used[col] {
                used[col] = true;
                recurse(x, row + 1, used, acc + x.get(row, col), best);
                used[col] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; x.cols()];
    recurse(x, 0, &mut used, 0.0, &mut best);
    best
}

/// Floyd–Warshall all-pairs distances, independent of the BFS under test.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| if v >= INF { None } else { Some(v) })
                .collect()
        })
        .collect()
}

/// Full TDS pipeline on one generated pair; returns per-method accuracy.
pub fn pipeline_accuracy(
    n: usize,
    p_mode: PMode,
    s: f64,
    seed: u64,
    methods: &[AssignMethod],
) -> Vec<(AssignMethod, f64)> {
    let pair = generate_pair(&CorrelatedErConfig {
        n,
        p: 0.0,
        s,
        seed,
        p_mode,
    })
    .unwrap();
    let cfg = FeatureConfig::default();
    let fa = tds::extract_all(&pair.g_a, &cfg).unwrap();
    let fb = tds::extract_all(&pair.g_b, &cfg).unwrap();
    let x: SimilarityMatrixF64 = tds::similarity_matrix(&fa, &fb).unwrap();
    methods
        .iter()
        .map(|&m| {
            let matching = match m {
                AssignMethod::Hungarian => tailmatch::hungarian(&x).unwrap(),
                AssignMethod::Greedy => tailmatch::greedy(&x).unwrap(),
            };
            (m, accuracy(&matching.pi_hat, &pair.truth).unwrap())
        })
        .collect()
}
