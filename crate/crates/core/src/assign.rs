//! Assignment solvers turning a distance matrix into a node matching: exact
//! Hungarian (TDS-h) and global-minimum greedy elimination (TDS-g).

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, Permutation};
use crate::scalar::Real;
use crate::tds::SimilarityMatrix;

/// Total-order key for matrix entries; safe because inputs are validated
/// finite before any key is built.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
struct Key<T>(T);

impl<T: Real> Eq for Key<T> {}

impl<T: Real> Ord for Key<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("finite matrix entry")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssignMethod {
    Hungarian,
    Greedy,
}

impl AssignMethod {
    pub fn name(&self) -> &'static str {
        match self {
            AssignMethod::Hungarian => "hungarian",
            AssignMethod::Greedy => "greedy",
        }
    }
}

/// A bijection between the two node sets plus the mean selected distance.
#[derive(Clone, Debug, PartialEq)]
pub struct Matching<T> {
    pub pi_hat: Permutation,
    pub method: AssignMethod,
    pub mean_cost: T,
}

fn check_input<T: Real>(x: &SimilarityMatrix<T>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::input(format!(
            "assignment needs a square matrix (got {} x {})",
            x.rows(),
            x.cols()
        )));
    }
    if x.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::input(
            "assignment matrix entries must be finite".to_string(),
        ));
    }
    Ok(())
}

/// Mean selected entry (1/n)·Σᵢ X[i][π(i)].
pub fn matching_cost<T: Real>(x: &SimilarityMatrix<T>, pi: &Permutation) -> T {
    let n = pi.len();
    if n == 0 {
        return T::zero();
    }
    let mut total = T::zero();
    for i in 0..n {
        total = total + x.get(i, pi.apply(i as NodeId) as usize);
    }
    total / T::from_count(n)
}

/// Exact minimum-cost assignment in O(n³) via augmenting paths over dual
/// potentials. Returns the bijection minimizing Σᵢ X[i][π(i)].
pub fn hungarian<T: Real>(x: &SimilarityMatrix<T>) -> Result<Matching<T>> {
    check_input(x)?;
    let n = x.rows();
    if n == 0 {
        return Ok(Matching {
            pi_hat: Permutation::identity(0),
            method: AssignMethod::Hungarian,
            mean_cost: T::zero(),
        });
    }
    // Column n is the virtual entry point of each augmenting search.
    let mut row_potential = vec![T::zero(); n];
    let mut col_potential = vec![T::zero(); n + 1];
    let mut col_match: Vec<Option<usize>> = vec![None; n + 1];
    let mut min_reduced = vec![T::zero(); n + 1];
    let mut came_from = vec![0usize; n + 1];
    let mut in_tree = vec![false; n + 1];

    for row in 0..n {
        col_match[n] = Some(row);
        let mut current_col = n;
        min_reduced[..=n].fill(T::infinity());
        in_tree[..=n].fill(false);

        // Grow the alternating tree until an unmatched column is reached.
        while let Some(tree_row) = col_match[current_col] {
            in_tree[current_col] = true;
            let mut delta = T::infinity();
            let mut next_col = n;
            let row_vals = x.row(tree_row);
            for col in 0..n {
                if in_tree[col] {
                    continue;
                }
                let reduced = row_vals[col] - row_potential[tree_row] - col_potential[col];
                if reduced < min_reduced[col] {
                    min_reduced[col] = reduced;
                    came_from[col] = current_col;
                }
                if min_reduced[col] < delta {
                    delta = min_reduced[col];
                    next_col = col;
                }
            }
            for col in 0..=n {
                if in_tree[col] {
                    let r = col_match[col].expect("tree column is matched");
                    row_potential[r] = row_potential[r] + delta;
                    col_potential[col] = col_potential[col] - delta;
                } else {
                    min_reduced[col] = min_reduced[col] - delta;
                }
            }
            current_col = next_col;
        }

        // Flip matched edges along the augmenting path.
        while current_col != n {
            let prev = came_from[current_col];
            col_match[current_col] = col_match[prev];
            current_col = prev;
        }
    }

    let mut map = vec![0 as NodeId; n];
    for col in 0..n {
        map[col_match[col].expect("perfect matching")] = col as NodeId;
    }
    let pi_hat = Permutation::from_vec(map)?;
    let mean_cost = matching_cost(x, &pi_hat);
    Ok(Matching {
        pi_hat,
        method: AssignMethod::Hungarian,
        mean_cost,
    })
}

/// Greedy global-minimum elimination: repeatedly select the smallest entry of
/// the remaining matrix, fix that pair, and delete its row and column. Ties
/// break toward the smallest row index, then the smallest column index.
pub fn greedy<T: Real>(x: &SimilarityMatrix<T>) -> Result<Matching<T>> {
    check_input(x)?;
    let n = x.rows();
    if n == 0 {
        return Ok(Matching {
            pi_hat: Permutation::identity(0),
            method: AssignMethod::Greedy,
            mean_cost: T::zero(),
        });
    }
    // Per-row column order by (value, column); a lazy heap of row heads then
    // yields entries in global (value, row, column) order without rescanning.
    let row_order: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let vals = x.row(i);
            let mut cols: Vec<u32> = (0..n as u32).collect();
            cols.sort_unstable_by_key(|&c| (Key(vals[c as usize]), c));
            cols
        })
        .collect();

    let mut heap: BinaryHeap<Reverse<(Key<T>, usize, u32, usize)>> =
        BinaryHeap::with_capacity(n);
    for (i, order) in row_order.iter().enumerate() {
        let c = order[0];
        heap.push(Reverse((Key(x.get(i, c as usize)), i, c, 0)));
    }

    let mut col_used = vec![false; n];
    let mut map = vec![0 as NodeId; n];
    let mut matched = 0usize;
    while matched < n {
        let Reverse((_, row, col, ptr)) = heap.pop().expect("heap holds every unmatched row");
        if col_used[col as usize] {
            // Head is stale; advance to the row's next unused column. Values
            // only grow along the row order, so re-pushing keeps the heap
            // invariant.
            let order = &row_order[row];
            let mut next = ptr + 1;
            while col_used[order[next] as usize] {
                next += 1;
            }
            let c = order[next];
            heap.push(Reverse((Key(x.get(row, c as usize)), row, c, next)));
            continue;
        }
        col_used[col as usize] = true;
        map[row] = col;
        matched += 1;
    }

    let pi_hat = Permutation::from_vec(map)?;
    let mean_cost = matching_cost(x, &pi_hat);
    Ok(Matching {
        pi_hat,
        method: AssignMethod::Greedy,
        mean_cost,
    })
}
