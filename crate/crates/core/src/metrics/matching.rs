//! One-to-one pixel correspondence within a distance tolerance.
//!
//! Solved exactly as maximum-cardinality bipartite matching (Hopcroft-Karp)
//! on the graph linking predicted and ground-truth pixels no farther apart
//! than the tolerance.

use std::collections::VecDeque;

use crate::error::{Result, VtError};
use crate::grid::BoundaryMask;

/// Name of the correspondence solver, recorded in metric reports.
pub const SOLVER: &str = "hopcroft-karp";

const NIL: u32 = u32::MAX;
const INF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchResult {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub tolerance: f64,
}

impl MatchResult {
    pub fn predicted(&self) -> usize {
        self.true_positives + self.false_positives
    }

    pub fn ground_truth(&self) -> usize {
        self.true_positives + self.false_negatives
    }

    pub fn precision(&self) -> f64 {
        ratio(self.true_positives, self.predicted())
    }

    pub fn recall(&self) -> f64 {
        ratio(self.true_positives, self.ground_truth())
    }

    pub fn f_measure(&self) -> f64 {
        f_measure(self.precision(), self.recall())
    }
}

pub(crate) fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean, `0` when both inputs are `0`.
pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Lattice offsets within `tolerance`, nearest first.
fn disk_offsets(tolerance: f64) -> Vec<(isize, isize)> {
    let r = tolerance.floor() as isize;
    let t2 = tolerance * tolerance;
    let mut out: Vec<(isize, isize)> = (-r..=r)
        .flat_map(|dy| (-r..=r).map(move |dx| (dx, dy)))
        .filter(|&(dx, dy)| ((dx * dx + dy * dy) as f64) <= t2)
        .collect();
    out.sort_by_key(|&(dx, dy)| (dx * dx + dy * dy, dy, dx));
    out
}

/// Matches `pred` against `gt`; unmatched predictions are false positives
/// and unmatched ground-truth pixels false negatives.
pub fn match_boundaries(
    pred: &BoundaryMask,
    gt: &BoundaryMask,
    tolerance: f64,
) -> Result<MatchResult> {
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(VtError::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    pred.grid.same_dims(&gt.grid)?;
    let (w, h) = gt.dims();
    let pred_pts = pred.points();
    let gt_pts = gt.points();

    let mut gt_index = vec![NIL; w * h];
    for (i, &(x, y)) in gt_pts.iter().enumerate() {
        gt_index[y * w + x] = i as u32;
    }
    let offsets = disk_offsets(tolerance);
    let adjacency: Vec<Vec<u32>> = pred_pts
        .iter()
        .map(|&(x, y)| {
            offsets
                .iter()
                .filter_map(|&(dx, dy)| {
                    let nx = x as isize + dx;
                    let ny = y as isize + dy;
                    if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                        return None;
                    }
                    let j = gt_index[ny as usize * w + nx as usize];
                    (j != NIL).then_some(j)
                })
                .collect()
        })
        .collect();

    let tp = max_bipartite_matching(gt_pts.len(), &adjacency);
    Ok(MatchResult {
        true_positives: tp,
        false_positives: pred_pts.len() - tp,
        false_negatives: gt_pts.len() - tp,
        tolerance,
    })
}

/// Size of a maximum matching; `adjacency[u]` lists the right vertices of
/// left vertex `u`.
pub fn max_bipartite_matching(n_right: usize, adjacency: &[Vec<u32>]) -> usize {
    let n_left = adjacency.len();
    let mut match_l = vec![NIL; n_left];
    let mut match_r = vec![NIL; n_right];
    let mut size = 0;

    // Greedy start; Hopcroft-Karp then augments to optimality.
    for (u, adj) in adjacency.iter().enumerate() {
        if let Some(&v) = adj.iter().find(|&&v| match_r[v as usize] == NIL) {
            match_l[u] = v;
            match_r[v as usize] = u as u32;
            size += 1;
        }
    }

    let mut dist = vec![INF; n_left];
    let mut queue = VecDeque::new();
    let mut edge_ptr = vec![0usize; n_left];
    let mut stack: Vec<u32> = Vec::new();
    let mut via: Vec<u32> = Vec::new();
    loop {
        queue.clear();
        for u in 0..n_left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u as u32);
            } else {
                dist[u] = INF;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u as usize] {
                let w = match_r[v as usize];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w as usize] == INF {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }

        edge_ptr.iter_mut().for_each(|p| *p = 0);
        for root in 0..n_left {
            if match_l[root] != NIL {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root as u32);
            while let Some(&u) = stack.last() {
                let u = u as usize;
                if edge_ptr[u] == adjacency[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let v = adjacency[u][edge_ptr[u]];
                edge_ptr[u] += 1;
                let w = match_r[v as usize];
                if w == NIL {
                    via.push(v);
                    for (&a, &b) in stack.iter().zip(&via) {
                        match_l[a as usize] = b;
                        match_r[b as usize] = a;
                    }
                    size += 1;
                    break;
                }
                if dist[w as usize] == dist[u].wrapping_add(1) {
                    via.push(v);
                    stack.push(w);
                }
            }
        }
    }
    size
}
