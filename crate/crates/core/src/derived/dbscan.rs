//! Density-based clustering of 2-D points on a uniform grid hash.

use std::collections::HashMap;

type Cell = (i64, i64);

struct GridIndex<'a> {
    points: &'a [[f64; 2]],
    eps: f64,
    cells: HashMap<Cell, Vec<usize>>,
}

impl<'a> GridIndex<'a> {
    fn new(points: &'a [[f64; 2]], eps: f64) -> Self {
        let mut cells: HashMap<Cell, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            cells.entry(Self::cell(p, eps)).or_default().push(i);
        }
        Self { points, eps, cells }
    }

    fn cell(p: &[f64; 2], eps: f64) -> Cell {
        ((p[0] / eps).floor() as i64, (p[1] / eps).floor() as i64)
    }

    /// Indices within `eps` of point `i`, itself included, ascending.
    fn neighbors(&self, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let p = self.points[i];
        let (cx, cy) = Self::cell(&p, self.eps);
        let e2 = self.eps * self.eps;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if let Some(bucket) = self.cells.get(&(cx + dx, cy + dy)) {
                    for &j in bucket {
                        let q = self.points[j];
                        if (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) <= e2 {
                            out.push(j);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
    }
}

/// DBSCAN with inclusive `eps` and `min_samples` counting the point itself.
/// Returns per-point cluster ids (`None` for noise) and the cluster count.
/// Clusters are numbered in order of their lowest-index core point.
pub fn dbscan(points: &[[f64; 2]], eps: f64, min_samples: usize) -> (Vec<Option<usize>>, usize) {
    let n = points.len();
    let mut labels: Vec<Option<usize>> = vec![None; n];
    if n == 0 || !(eps > 0.0) {
        return (labels, 0);
    }
    let index = GridIndex::new(points, eps);
    let mut visited = vec![false; n];
    let mut clusters = 0;
    let mut nbrs = Vec::new();
    let mut inner = Vec::new();
    let mut queue = Vec::new();
    for i in 0..n {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        index.neighbors(i, &mut nbrs);
        if nbrs.len() < min_samples {
            continue;
        }
        let id = clusters;
        clusters += 1;
        labels[i] = Some(id);
        queue.clear();
        queue.extend(nbrs.iter().copied());
        let mut head = 0;
        while head < queue.len() {
            let j = queue[head];
            head += 1;
            if labels[j].is_none() {
                labels[j] = Some(id);
            }
            if visited[j] {
                continue;
            }
            visited[j] = true;
            index.neighbors(j, &mut inner);
            if inner.len() >= min_samples {
                queue.extend(inner.iter().copied().filter(|&k| labels[k].is_none() || !visited[k]));
            }
        }
    }
    (labels, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_blobs_and_noise() {
        let mut pts = Vec::new();
        for i in 0..5 {
            pts.push([i as f64 * 0.5, 0.0]);
            pts.push([100.0 + i as f64 * 0.5, 50.0]);
        }
        pts.push([50.0, 50.0]);
        let (labels, k) = dbscan(&pts, 2.0, 4);
        assert_eq!(k, 2);
        assert_eq!(labels[0], Some(0));
        assert_eq!(labels[1], Some(1));
        assert!(labels[..10].iter().step_by(2).all(|&l| l == Some(0)));
        assert!(labels[1..10].iter().step_by(2).all(|&l| l == Some(1)));
        assert_eq!(labels[10], None);
    }

    #[test]
    fn chain_links_through_cores() {
        let pts: Vec<[f64; 2]> = (0..40).map(|i| [i as f64 * 1.5, 3.0]).collect();
        let (labels, k) = dbscan(&pts, 2.0, 3);
        assert_eq!(k, 1);
        assert!(labels.iter().all(|&l| l == Some(0)));
    }

    #[test]
    fn matches_naive_core_definition() {
        let mut rng = crate::synth::rng(11);
        use rand::Rng;
        let pts: Vec<[f64; 2]> = (0..300)
            .map(|_| [rng.random_range(0.0..40.0), rng.random_range(0.0..40.0)])
            .collect();
        let (labels, _) = dbscan(&pts, 2.0, 4);
        let nb: Vec<Vec<usize>> = pts
            .iter()
            .map(|p| {
                (0..pts.len())
                    .filter(|&j| (p[0] - pts[j][0]).powi(2) + (p[1] - pts[j][1]).powi(2) <= 4.0)
                    .collect()
            })
            .collect();
        let core = |i: usize| nb[i].len() >= 4;
        for i in 0..pts.len() {
            if core(i) {
                assert!(labels[i].is_some());
                // Neighbouring cores share a cluster; border points join one.
                for &j in &nb[i] {
                    assert!(labels[j].is_some());
                    if core(j) {
                        assert_eq!(labels[j], labels[i]);
                    }
                }
            } else if nb[i].iter().all(|&j| !core(j)) {
                assert_eq!(labels[i], None);
            }
        }
    }
}
