//! Brute-force references shared by the integration tests. Everything here
//! is written from the definitions, without calling the library's kernels.
#![allow(dead_code)]

use boundary_vt::{BoundaryMask, LabelMask, VectorField};

/// Squared distance from every pixel to the closest pixel of `sites`.
pub fn brute_sq_dist(mask: &BoundaryMask) -> Vec<u64> {
    let (w, h) = mask.dims();
    let pts = mask.points();
    (0..w * h)
        .map(|p| {
            let (x, y) = ((p % w) as i64, (p / w) as i64);
            pts.iter()
                .map(|&(bx, by)| ((bx as i64 - x).pow(2) + (by as i64 - y).pow(2)) as u64)
                .min()
                .expect("non-empty mask")
        })
        .collect()
}

/// Unit vector from `(x, y)` to the mean of the equidistant closest `sites`;
/// when that mean is the pixel itself, to the closest site with the smallest
/// `(y, x)`.
fn toward_closest(x: usize, y: usize, sites: &[(usize, usize)]) -> [f64; 2] {
    let d2 = |&(sx, sy): &(usize, usize)| (sx as i64 - x as i64).pow(2) + (sy as i64 - y as i64).pow(2);
    let best = sites.iter().map(d2).min().expect("some site");
    let ties: Vec<(usize, usize)> = sites.iter().copied().filter(|s| d2(s) == best).collect();
    let n = ties.len() as f64;
    let mx = ties.iter().map(|t| t.0 as f64).sum::<f64>() / n - x as f64;
    let my = ties.iter().map(|t| t.1 as f64).sum::<f64>() / n - y as f64;
    let (fx, fy) = if mx.hypot(my) > 1e-9 {
        (mx, my)
    } else {
        let t = ties.iter().min_by_key(|t| (t.1, t.0)).unwrap();
        (t.0 as f64 - x as f64, t.1 as f64 - y as f64)
    };
    let len = fx.hypot(fy);
    [fx / len, fy / len]
}

/// Field of a label map: each pixel points at its closest pixel of another
/// label.
pub fn brute_label_field(labels: &LabelMask) -> VectorField {
    let (w, h) = labels.dims();
    let g = &labels.grid;
    let all: Vec<(usize, usize)> = (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect();
    VectorField::from_fn(w, h, |x, y| {
        let others: Vec<(usize, usize)> =
            all.iter().copied().filter(|&(a, b)| g[(a, b)] != g[(x, y)]).collect();
        toward_closest(x, y, &others)
    })
}

/// Field of a thin mask: non-boundary pixels point at the closest boundary
/// pixel, boundary pixels copy a non-boundary neighbour (left, up, right,
/// down, then diagonals).
pub fn brute_mask_field(mask: &BoundaryMask) -> VectorField {
    let (w, h) = mask.dims();
    let pts = mask.points();
    let base = VectorField::from_fn(w, h, |x, y| {
        if mask.is_boundary(x, y) {
            [0.0, 0.0]
        } else {
            toward_closest(x, y, &pts)
        }
    });
    let order = [(-1, 0), (0, -1), (1, 0), (0, 1), (-1, -1), (1, -1), (-1, 1), (1, 1)];
    VectorField::from_fn(w, h, |x, y| {
        if !mask.is_boundary(x, y) {
            return base.at(x, y);
        }
        for (dx, dy) in order {
            let nx = x as i64 + dx;
            let ny = y as i64 + dy;
            if nx >= 0 && ny >= 0 && (nx as usize) < w && (ny as usize) < h && !mask.is_boundary(nx as usize, ny as usize) {
                return base.at(nx as usize, ny as usize);
            }
        }
        panic!("thick boundary at ({x}, {y})");
    })
}

/// Largest distance from a pixel of `a` to the closest pixel of `b`.
pub fn brute_directed_hausdorff(a: &BoundaryMask, b: &BoundaryMask) -> f64 {
    let pb = b.points();
    a.points()
        .iter()
        .map(|&(x, y)| {
            pb.iter()
                .map(|&(u, v)| ((u as f64 - x as f64).powi(2) + (v as f64 - y as f64).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Mean distance from each pixel of `a` to the closest pixel of `b`.
pub fn brute_mean_distance(a: &BoundaryMask, b: &BoundaryMask) -> f64 {
    let pb = b.points();
    let pa = a.points();
    pa.iter()
        .map(|&(x, y)| {
            pb.iter()
                .map(|&(u, v)| ((u as f64 - x as f64).powi(2) + (v as f64 - y as f64).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .sum::<f64>()
        / pa.len() as f64
}

/// Maximum matching size by exhaustive search over which free right vertex
/// (or none) each left vertex takes. Memoised on the set of used right
/// vertices, so at most 2^right states per left vertex.
pub fn exhaustive_matching(adjacency: &[Vec<usize>], n_right: usize) -> usize {
    assert!(n_right <= 20);
    let mut memo = vec![vec![usize::MAX; 1 << n_right]; adjacency.len() + 1];
    fn go(i: usize, used: usize, adj: &[Vec<usize>], memo: &mut [Vec<usize>]) -> usize {
        if i == adj.len() {
            return 0;
        }
        if memo[i][used] != usize::MAX {
            return memo[i][used];
        }
        let mut best = go(i + 1, used, adj, memo);
        for &r in &adj[i] {
            if used & (1 << r) == 0 {
                best = best.max(1 + go(i + 1, used | (1 << r), adj, memo));
            }
        }
        memo[i][used] = best;
        best
    }
    go(0, 0, adjacency, &mut memo)
}

/// Tolerance graph between the pixels of two masks.
pub fn tolerance_graph(pred: &BoundaryMask, gt: &BoundaryMask, tol: f64) -> (Vec<Vec<usize>>, usize) {
    let pg = gt.points();
    let adj = pred
        .points()
        .iter()
        .map(|&(x, y)| {
            pg.iter()
                .enumerate()
                .filter(|(_, &(u, v))| ((u as f64 - x as f64).powi(2) + (v as f64 - y as f64).powi(2)).sqrt() <= tol)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    (adj, pg.len())
}

/// Writes one line straight to stderr so it shows up even when the test
/// harness captures output.
pub fn emit(line: &str) {
    use std::io::Write;
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

/// Line response from its definition: the four absolute Sobel derivatives
/// of `|vx|` and `|vy|`, scaled by 1/8. Interior pixels only.
pub fn reference_line_response(f: &VectorField, x: usize, y: usize) -> f64 {
    let sx = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
    let sy = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];
    let mut total = 0.0;
    for comp in 0..2 {
        for k in [&sx, &sy] {
            let mut acc = 0.0;
            for (r, row) in k.iter().enumerate() {
                for (c, &wgt) in row.iter().enumerate() {
                    acc += wgt * f.at(x + c - 1, y + r - 1)[comp].abs();
                }
            }
            total += (acc / 8.0).abs();
        }
    }
    total
}
