//! Immutable undirected simple graphs in compressed adjacency form,
//! exact-distance BFS layers, and the edge-disagreement objective.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Dense node index in `[0, n)`. External labels are remapped at ingestion.
pub type NodeId = u32;

/// Undirected simple graph. Neighbor lists are strictly increasing, symmetric,
/// and free of self-loops; `m` is the undirected edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// CSR offsets, length n + 1.
    offsets: Vec<usize>,
    /// Concatenated sorted neighbor lists, length 2m.
    neighbors: Vec<NodeId>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are dropped and duplicate
    /// edges (in either orientation) are collapsed.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_unique_edges(n, &pairs))
    }

    /// `pairs` must be sorted, deduplicated, with u < v for every entry.
    pub(crate) fn from_sorted_unique_edges(n: usize, pairs: &[(NodeId, NodeId)]) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0 as NodeId; 2 * pairs.len()];
        // Sweeping edges in lexicographic order fills every neighbor list in
        // ascending order: for node v, all (a, v) with a < v precede all (v, b).
        for &(u, v) in pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Graph {
            n,
            offsets,
            neighbors,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.neighbors(i).len()
    }

    /// Sorted neighbor list of `i`.
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        let i = i as usize;
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n as NodeId).into_iter()
    }

    /// Undirected edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// BFS layers around `root`: element `t` holds the nodes at shortest-path
    /// distance exactly `t`, each sorted ascending. Layer 0 is `[root]`; the
    /// result always has `max_depth + 1` layers, trailing ones possibly empty.
    pub fn bfs_layers(&self, root: NodeId, max_depth: usize) -> Vec<Vec<NodeId>> {
        let mut layers = vec![Vec::new(); max_depth + 1];
        layers[0].push(root);
        if max_depth == 0 {
            return layers;
        }
        let mut visited = vec![false; self.n];
        visited[root as usize] = true;
        let mut queue: VecDeque<(NodeId, usize)> = VecDeque::new();
        queue.push_back((root, 0));
        while let Some((u, d)) = queue.pop_front() {
            if d == max_depth {
                continue;
            }
            for &v in self.neighbors(u) {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    layers[d + 1].push(v);
                    queue.push_back((v, d + 1));
                }
            }
        }
        // Frontier discovery order follows sorted adjacency of mixed parents,
        // so each layer needs one final sort to be canonical.
        for layer in &mut layers[1..] {
            layer.sort_unstable();
        }
        layers
    }

    /// Nodes at shortest-path distance exactly `t` from `i`, sorted ascending.
    /// Empty when no node sits at that distance.
    pub fn neighbors_at_distance(&self, i: NodeId, t: usize) -> Vec<NodeId> {
        debug_assert!(t >= 1);
        self.bfs_layers(i, t).pop().unwrap_or_default()
    }
}

/// Bijection on `[0, n)`, stored as `map[i] = image of i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<NodeId>,
}

impl Permutation {
    pub fn from_vec(map: Vec<NodeId>) -> Result<Permutation> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::input(format!(
                    "mapping of length {n} is not a bijection (value {v})"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            map: (0..n as NodeId).collect(),
        }
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn uniform(n: usize, rng: &mut impl rand::Rng) -> Permutation {
        use rand::seq::SliceRandom;
        let mut map: Vec<NodeId> = (0..n as NodeId).collect();
        map.shuffle(rng);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: NodeId) -> NodeId {
        self.map[i as usize]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as NodeId; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as NodeId;
        }
        Permutation { map: inv }
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.map
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.map.iter().copied()
    }
}

/// Number of unordered pairs that are an edge in exactly one of `g_a` and
/// `g_b[m]`: the objective value ½‖A(G_b) − PᵀA(G_a)P‖²_F.
pub fn edge_disagreement(g_a: &Graph, g_b: &Graph, m: &Permutation) -> Result<usize> {
    if g_a.node_count() != g_b.node_count() || m.len() != g_a.node_count() {
        return Err(Error::input(format!(
            "size mismatch: |V_a| = {}, |V_b| = {}, |mapping| = {}",
            g_a.node_count(),
            g_b.node_count(),
            m.len()
        )));
    }
    let mut shared = 0usize;
    for (u, v) in g_a.edges() {
        if g_b.has_edge(m.apply(u), m.apply(v)) {
            shared += 1;
        }
    }
    Ok((g_a.edge_count() - shared) + (g_b.edge_count() - shared))
}
