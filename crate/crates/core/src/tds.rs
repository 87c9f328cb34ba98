//! Tail degree signatures: per-node features built from the extreme neighbor
//! degrees at each exact BFS distance, plus the all-pairs distance matrix the
//! matchers consume.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Real;

/// Feature-extraction parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeatureConfig {
    /// How many smallest and how many largest degrees to keep per layer.
    pub theta: usize,
    /// Maximum BFS distance considered.
    pub lambda: usize,
    /// Sentinel written into unfilled slots when a layer holds fewer than
    /// 2·theta degrees.
    pub pad_value: u32,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            theta: 10,
            lambda: 2,
            pad_value: 0,
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta == 0 || self.lambda == 0 {
            return Err(Error::input("theta and lambda must be >= 1".to_string()));
        }
        Ok(())
    }

    pub fn feature_len(&self) -> usize {
        2 * self.theta * self.lambda
    }
}

/// Tail degree signature of one node: lambda blocks of 2·theta entries, block
/// t built from the distance-t neighbors. Within a block the selected smallest
/// degrees come first (ascending), then the selected largest (ascending);
/// unfilled slots carry the pad value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureVector {
    pub values: Vec<u32>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.values
    }
}

/// Multiset of degrees of the nodes at distance exactly `t` from `i`.
pub fn layer_degrees(g: &Graph, i: NodeId, t: usize) -> Vec<u32> {
    g.neighbors_at_distance(i, t)
        .iter()
        .map(|&v| g.degree(v) as u32)
        .collect()
}

/// Picks min(theta, |d|) smallest and min(theta, |d|) largest elements of the
/// multiset (the two selections may overlap when |d| < 2·theta), pads each
/// half to length theta at its tail, and returns low half then high half,
/// both ascending.
pub fn tail_select(degrees: &[u32], theta: usize, pad_value: u32) -> Vec<u32> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let k = sorted.len().min(theta);
    let mut out = Vec::with_capacity(2 * theta);
    out.extend_from_slice(&sorted[..k]);
    out.resize(theta, pad_value);
    out.extend_from_slice(&sorted[sorted.len() - k..]);
    out.resize(2 * theta, pad_value);
    out
}

/// Builds the full signature of node `i`: one BFS to depth lambda, then a
/// tail selection per layer, concatenated.
pub fn extract_feature(g: &Graph, i: NodeId, cfg: &FeatureConfig) -> FeatureVector {
    let layers = g.bfs_layers(i, cfg.lambda);
    let mut values = Vec::with_capacity(cfg.feature_len());
    for layer in &layers[1..] {
        let degrees: Vec<u32> = layer.iter().map(|&v| g.degree(v) as u32).collect();
        values.extend(tail_select(&degrees, cfg.theta, cfg.pad_value));
    }
    FeatureVector { values }
}

/// Signatures for every node. Nodes are independent, so extraction runs in
/// parallel; output is positionally identical to the sequential result.
pub fn extract_all(g: &Graph, cfg: &FeatureConfig) -> Result<Vec<FeatureVector>> {
    cfg.validate()?;
    Ok((0..g.node_count() as NodeId)
        .into_par_iter()
        .map(|i| extract_feature(g, i, cfg))
        .collect())
}

/// Dense matrix of Euclidean feature distances, entry (i, j) comparing node i
/// of side A with node j of side B.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> SimilarityMatrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix data length {} != {rows} x {cols}",
                data.len()
            )));
        }
        Ok(SimilarityMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }
}

/// Squared Euclidean distance in exact integer arithmetic, so a zero entry
/// certifies identical vectors.
fn squared_distance(a: &[u32], b: &[u32]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum()
}

/// ℓ₂ distance between two signatures of equal length.
pub fn feature_distance<T: Real>(a: &FeatureVector, b: &FeatureVector) -> T {
    assert_eq!(a.len(), b.len(), "feature lengths differ");
    T::from_u64(squared_distance(a.as_slice(), b.as_slice()))
        .expect("squared distance fits scalar")
        .sqrt()
}

/// All-pairs ℓ₂ distances between the two feature sets.
pub fn similarity_matrix<T: Real>(
    fa: &[FeatureVector],
    fb: &[FeatureVector],
) -> Result<SimilarityMatrix<T>> {
    let len = fa
        .first()
        .or_else(|| fb.first())
        .map(|f| f.len())
        .unwrap_or(0);
    if fa.iter().chain(fb).any(|f| f.len() != len) {
        return Err(Error::input(
            "feature vectors must all have the same length".to_string(),
        ));
    }
    let cols = fb.len();
    let mut data = vec![T::zero(); fa.len() * cols];
    data.par_chunks_mut(cols.max(1))
        .zip(fa.par_iter())
        .for_each(|(row, fi)| {
            for (cell, fj) in row.iter_mut().zip(fb) {
                let d2 = squared_distance(fi.as_slice(), fj.as_slice());
                *cell = T::from_u64(d2).expect("squared distance fits scalar").sqrt();
            }
        });
    SimilarityMatrix::from_vec(fa.len(), cols, data)
}
