//! Correlated Erdős–Rényi pair generation and edge-noise injection for real
//! networks, fully determined by a 64-bit seed.
//!
//! The RNG is ChaCha8 with one sub-stream per generation stage (parent edges,
//! child-A mask, child-B mask, permutation), so changing `s` never perturbs
//! the parent graph drawn for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Permutation};

const STREAM_PARENT: u64 = 0;
const STREAM_CHILD_A: u64 = 1;
const STREAM_CHILD_B: u64 = 2;
const STREAM_PERMUTATION: u64 = 3;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives the sub-seed of replicate/instance `index` from a master seed by
/// fixed arithmetic (one splitmix64 round), so any replicate is reproducible
/// in isolation.
pub fn fan_out_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// How the edge probability of the parent graph is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PMode {
    /// Use `p` as given.
    Explicit,
    /// p = ln(n) / n.
    LogNOverN,
    /// p = ln(n)² / n.
    Log2NOverN,
}

impl PMode {
    pub fn resolve(&self, n: usize, explicit_p: f64) -> f64 {
        let n = n as f64;
        match self {
            PMode::Explicit => explicit_p,
            PMode::LogNOverN => n.ln() / n,
            PMode::Log2NOverN => n.ln().powi(2) / n,
        }
    }
}

/// Parameters of one correlated-pair draw.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrelatedErConfig {
    pub n: usize,
    /// Edge probability; ignored unless `p_mode` is `Explicit`.
    pub p: f64,
    /// Per-child edge retention probability.
    pub s: f64,
    pub seed: u64,
    pub p_mode: PMode,
}

impl CorrelatedErConfig {
    pub fn resolved_p(&self) -> f64 {
        self.p_mode.resolve(self.n, self.p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::input(format!("n must be >= 2 (got {})", self.n)));
        }
        let p = self.resolved_p();
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("p must lie in [0, 1] (got {p})")));
        }
        if !(0.0..=1.0).contains(&self.s) {
            return Err(Error::input(format!("s must lie in [0, 1] (got {})", self.s)));
        }
        Ok(())
    }
}

/// Two correlated graphs plus the ground-truth node mapping π*: V_a → V_b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPair {
    pub g_a: Graph,
    pub g_b: Graph,
    pub truth: Permutation,
}

/// G(n, p): each of the C(n, 2) unordered pairs is an edge independently with
/// probability `p`. Pairs are visited in lexicographic order.
pub fn generate_parent(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = stream_rng(seed, STREAM_PARENT);
    let mut pairs = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.random::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique_edges(n, &pairs)
}

/// Independently retains each parent edge in child A with probability `s` and
/// in child B with probability `s`. Both children share the parent node set.
pub fn sample_child_pair(parent: &Graph, s: f64, seed: u64) -> (Graph, Graph) {
    let n = parent.node_count();
    let mut rng_a = stream_rng(seed, STREAM_CHILD_A);
    let mut rng_b = stream_rng(seed, STREAM_CHILD_B);
    let mut edges_a = Vec::new();
    let mut edges_b = Vec::new();
    for (u, v) in parent.edges() {
        if rng_a.random::<f64>() < s {
            edges_a.push((u, v));
        }
        if rng_b.random::<f64>() < s {
            edges_b.push((u, v));
        }
    }
    (
        Graph::from_sorted_unique_edges(n, &edges_a),
        Graph::from_sorted_unique_edges(n, &edges_b),
    )
}

/// Relabels a graph: edge (i, j) maps to (perm(i), perm(j)).
pub fn permute_graph(g: &Graph, perm: &Permutation) -> Result<Graph> {
    if perm.len() != g.node_count() {
        return Err(Error::input(format!(
            "permutation length {} != node count {}",
            perm.len(),
            g.node_count()
        )));
    }
    let edges: Vec<(NodeId, NodeId)> = g
        .edges()
        .map(|(u, v)| (perm.apply(u), perm.apply(v)))
        .collect();
    Graph::from_edges(g.node_count(), &edges)
}

/// Draws a full correlated pair: parent, two subsampled children, and a
/// uniformly random relabeling π* applied to child B.
pub fn generate_pair(config: &CorrelatedErConfig) -> Result<GraphPair> {
    config.validate()?;
    let p = config.resolved_p();
    let parent = generate_parent(config.n, p, config.seed);
    let (child_a, child_b) = sample_child_pair(&parent, config.s, config.seed);
    let mut rng = stream_rng(config.seed, STREAM_PERMUTATION);
    let truth = Permutation::uniform(config.n, &mut rng);
    let g_b = permute_graph(&child_b, &truth)?;
    Ok(GraphPair {
        g_a: child_a,
        g_b,
        truth,
    })
}

/// Real-network noise model: keeps `g` as side A and pairs it with a randomly
/// relabeled copy in which each edge survives independently with probability
/// `s`.
pub fn perturb_real(g: &Graph, s: f64, seed: u64) -> Result<GraphPair> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::input(format!("s must lie in [0, 1] (got {s})")));
    }
    let n = g.node_count();
    let mut rng_mask = stream_rng(seed, STREAM_CHILD_B);
    let kept: Vec<(NodeId, NodeId)> = g
        .edges()
        .filter(|_| rng_mask.random::<f64>() < s)
        .collect();
    let child = Graph::from_sorted_unique_edges(n, &kept);
    let mut rng_perm = stream_rng(seed, STREAM_PERMUTATION);
    let truth = Permutation::uniform(n, &mut rng_perm);
    let g_b = permute_graph(&child, &truth)?;
    Ok(GraphPair {
        g_a: g.clone(),
        g_b,
        truth,
    })
}
