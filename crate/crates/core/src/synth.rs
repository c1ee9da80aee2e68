//! Seeded synthetic shapes: random masks, rectangles, disks, Voronoi maps
//! and rasterised straight lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{BoundaryMask, LabelMask};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent Bernoulli pixels; at least one boundary pixel is forced.
pub fn random_mask(width: usize, height: usize, density: f64, rng: &mut impl Rng) -> BoundaryMask {
    let mut mask = BoundaryMask::from_fn(width, height, |_, _| rng.random::<f64>() < density);
    if mask.is_blank() {
        let x = rng.random_range(0..width);
        let y = rng.random_range(0..height);
        mask.set(x, y, true);
    }
    mask
}

/// Axis-aligned rectangles `(x, y, w, h)` labelled `1..` on background `0`.
/// Later rectangles paint over earlier ones.
pub fn rectangle_labels(width: usize, height: usize, rects: &[(usize, usize, usize, usize)]) -> LabelMask {
    LabelMask::from_fn(width, height, |x, y| {
        rects
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &(rx, ry, rw, rh))| x >= rx && x < rx + rw && y >= ry && y < ry + rh)
            .map_or(0, |(i, _)| i as u32 + 1)
    })
}

/// Filled disk (label 1) of radius `r` centred at `(cx, cy)`.
pub fn disk_labels(width: usize, height: usize, cx: f64, cy: f64, r: f64) -> LabelMask {
    LabelMask::from_fn(width, height, |x, y| {
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        u32::from(dx * dx + dy * dy <= r * r)
    })
}

/// Inner rim of a filled disk: disk pixels with a 4-neighbour outside.
pub fn disk_outline(width: usize, height: usize, cx: f64, cy: f64, r: f64) -> BoundaryMask {
    let labels = disk_labels(width, height, cx, cy, r);
    let band = labels.induced_boundary();
    BoundaryMask::from_fn(width, height, |x, y| {
        band.is_boundary(x, y) && labels.grid[(x, y)] == 1
    })
}

/// Nearest-seed partition with `seeds` distinct random seeds; ties go to
/// the lower seed index.
pub fn voronoi_labels(width: usize, height: usize, seeds: usize, rng: &mut impl Rng) -> LabelMask {
    let mut points: Vec<(i64, i64)> = Vec::with_capacity(seeds);
    while points.len() < seeds.min(width * height) {
        let p = (
            rng.random_range(0..width) as i64,
            rng.random_range(0..height) as i64,
        );
        if !points.contains(&p) {
            points.push(p);
        }
    }
    voronoi_from_seeds(width, height, &points)
}

pub fn voronoi_from_seeds(width: usize, height: usize, seeds: &[(i64, i64)]) -> LabelMask {
    LabelMask::from_fn(width, height, |x, y| {
        let (x, y) = (x as i64, y as i64);
        let mut best = (i64::MAX, 0u32);
        for (i, &(sx, sy)) in seeds.iter().enumerate() {
            let d = (sx - x).pow(2) + (sy - y).pow(2);
            if d < best.0 {
                best = (d, i as u32);
            }
        }
        best.1
    })
}

/// 8-connected raster of the line through `(x0, y0)` with direction
/// `(dx, dy)`, spanning the whole image.
pub fn line_mask(width: usize, height: usize, x0: f64, y0: f64, dx: i64, dy: i64) -> BoundaryMask {
    assert!(dx != 0 || dy != 0, "direction must be non-zero");
    let mut mask = BoundaryMask::empty(width, height);
    if dx.abs() >= dy.abs() {
        let slope = dy as f64 / dx as f64;
        for x in 0..width {
            let y = (y0 + slope * (x as f64 - x0)).round();
            if y >= 0.0 && (y as usize) < height {
                mask.set(x, y as usize, true);
            }
        }
    } else {
        let slope = dx as f64 / dy as f64;
        for y in 0..height {
            let x = (x0 + slope * (y as f64 - y0)).round();
            if x >= 0.0 && (x as usize) < width {
                mask.set(x as usize, y, true);
            }
        }
    }
    mask
}

/// Two labels split by the line through `(x0, y0)` with direction `(dx, dy)`.
pub fn half_plane_labels(width: usize, height: usize, x0: f64, y0: f64, dx: f64, dy: f64) -> LabelMask {
    LabelMask::from_fn(width, height, |x, y| {
        let cross = dx * (y as f64 - y0) - dy * (x as f64 - x0);
        u32::from(cross > 0.0)
    })
}

/// Kind of a generated label map, for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Rectangles,
    Disk,
    Voronoi,
}

/// A deterministic mix of rectangle, disk and Voronoi label maps.
pub fn label_suite(width: usize, height: usize, count: usize, seed: u64) -> Vec<(ShapeKind, LabelMask)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => {
                let n = rng.random_range(1..=3);
                let rects: Vec<_> = (0..n)
                    .map(|_| {
                        let rw = rng.random_range(8..width / 2);
                        let rh = rng.random_range(8..height / 2);
                        let rx = rng.random_range(2..width - rw - 2);
                        let ry = rng.random_range(2..height - rh - 2);
                        (rx, ry, rw, rh)
                    })
                    .collect();
                (ShapeKind::Rectangles, rectangle_labels(width, height, &rects))
            }
            1 => {
                let r = rng.random_range(6.0..(width.min(height) as f64 / 2.0 - 4.0));
                let cx = rng.random_range(r + 2.0..width as f64 - r - 2.0);
                let cy = rng.random_range(r + 2.0..height as f64 - r - 2.0);
                (ShapeKind::Disk, disk_labels(width, height, cx, cy, r))
            }
            _ => {
                let seeds = rng.random_range(2..=6);
                (ShapeKind::Voronoi, voronoi_labels(width, height, seeds, &mut rng))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_deterministic_and_multilabel() {
        let a = label_suite(64, 64, 9, 7);
        let b = label_suite(64, 64, 9, 7);
        assert_eq!(a.len(), 9);
        for ((ka, la), (kb, lb)) in a.iter().zip(&b) {
            assert_eq!(ka, kb);
            assert_eq!(la, lb);
            assert!(la.distinct_labels().len() >= 2);
        }
    }

    #[test]
    fn lines_are_thin() {
        let m = line_mask(16, 16, 0.0, 3.0, 2, 1);
        for x in 0..16 {
            assert_eq!((0..16).filter(|&y| m.is_boundary(x, y)).count(), 1);
        }
    }

    #[test]
    fn rectangles_paint_in_order() {
        let l = rectangle_labels(10, 10, &[(0, 0, 5, 5), (3, 3, 4, 4)]);
        assert_eq!(l.grid[(1, 1)], 1);
        assert_eq!(l.grid[(4, 4)], 2);
        assert_eq!(l.grid[(9, 9)], 0);
    }
}
