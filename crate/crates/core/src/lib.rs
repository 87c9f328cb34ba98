//! Seedless graph matching for correlated Erdős–Rényi and real networks.
//!
//! The pipeline: extract a tail degree signature per node (the extreme
//! neighbor degrees at each exact BFS distance), build the all-pairs
//! Euclidean distance matrix between the two graphs' signatures, and solve
//! the assignment with either the exact Hungarian solver or greedy
//! global-minimum elimination. Generators, statistical validators, and file
//! formats round out the toolkit; the `tailmatch` binary wires them into
//! reproducible CSV-emitting experiments.

pub mod analysis;
pub mod assign;
pub mod error;
pub mod graph;
pub mod io;
pub mod scalar;
pub mod synth;
pub mod tds;

pub use assign::{greedy, hungarian, matching_cost, AssignMethod, Matching};
pub use error::{Error, Result};
pub use graph::{edge_disagreement, Graph, NodeId, Permutation};
pub use scalar::Real;
pub use synth::{
    fan_out_seed, generate_pair, generate_parent, permute_graph, perturb_real,
    sample_child_pair, CorrelatedErConfig, GraphPair, PMode,
};
pub use tds::{
    extract_all, extract_feature, similarity_matrix, FeatureConfig, FeatureVector,
    SimilarityMatrix,
};

/// Concrete scalar instantiations of the generic surfaces.
pub type SimilarityMatrixF32 = tds::SimilarityMatrix<f32>;
pub type SimilarityMatrixF64 = tds::SimilarityMatrix<f64>;
pub type MatchingF32 = assign::Matching<f32>;
pub type MatchingF64 = assign::Matching<f64>;
pub type DegreeStatsF64 = analysis::DegreeStats<f64>;
pub type HistogramGridF64 = analysis::HistogramGrid<f64>;

#[cfg(test)]
pub(crate) mod test_fixtures {
    use crate::graph::{Graph, NodeId};
    use crate::scalar::Real;
    use crate::tds::SimilarityMatrix;
    use rand::Rng;

    /// 25-node graph with hand-checkable signatures: node 18 sees degree
    /// multiset {2,1,1,2,2} at distance 1 and {4,2} at distance 2, node 5
    /// sees {1,3} at both distances.
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
    /// (18 <-> 9, 5 <-> 12) plus one extra edge (24, 0), which lifts node
    /// 24's degree so node 9's distance-2 view becomes {3, 4}. Node 12 keeps
    /// node 5's exact signature.
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

    /// Unordered pairs drawn independently with probability `p` (test-side
    /// generator, independent of the synth module).
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

    /// Dense boolean adjacency with self-loops dropped and duplicates merged.
    pub fn dense_adjacency(n: usize, edges: &[(NodeId, NodeId)]) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                a[u as usize][v as usize] = true;
                a[v as usize][u as usize] = true;
            }
        }
        a
    }

    /// Floyd–Warshall all-pairs shortest distances (independent of the BFS
    /// implementation under test). `None` marks unreachable pairs.
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

    /// Exhaustive minimum assignment cost over all n! permutations.
    pub fn brute_force_min_cost<T: Real>(x: &SimilarityMatrix<T>) -> T {
        fn recurse<T: Real>(
            x: &SimilarityMatrix<T>,
            row: usize,
            used: &mut [bool],
            acc: T,
            best: &mut T,
        ) {
            if row == x.rows() {
                if acc < *best {
                    *best = acc;
                }
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
        let mut best = T::infinity();
        let mut used = vec![false; x.cols()];
        recurse(x, 0, &mut used, T::zero(), &mut best);
        best
    }
}
