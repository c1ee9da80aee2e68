//! Forward vector transform and distance transform.
//!
//! For every pixel the field is the unit vector pointing at its nearest
//! boundary point. Equidistant boundary pixels are averaged first; only when
//! the average coincides with the pixel itself does a deterministic
//! tie-break (smallest `(y, x)`) pick a single pixel.

use crate::edt::{self, argmin_from_distances, resolve_ties, ArgminMap};
use crate::error::{Result, VtError};
use crate::grid::{BoundaryMask, DistanceField, LabelMask, PixelGrid, VectorField};
use crate::par;

/// Neighbour order used to give boundary pixels a direction: left, up,
/// right, down, then the four diagonals.
const NEIGHBOR_ORDER: [(isize, isize); 8] = [
    (-1, 0),
    (0, -1),
    (1, 0),
    (0, 1),
    (-1, -1),
    (1, -1),
    (-1, 1),
    (1, 1),
];

fn require_boundary(mask: &BoundaryMask) -> Result<()> {
    if mask.is_blank() {
        return Err(VtError::EmptyBoundary);
    }
    Ok(())
}

/// Exact nearest-boundary map via the separable feature transform.
pub fn nearest_boundary_map(mask: &BoundaryMask) -> Result<ArgminMap> {
    require_boundary(mask)?;
    let (w, h) = mask.dims();
    let sites = mask.grid.data();
    let ft = edt::feature_transform(w, h, sites).ok_or(VtError::EmptyBoundary)?;
    Ok(argmin_from_distances(w, h, ft.sq_dist, |_, q| sites[q]))
}

/// Exhaustive `O(N * |boundary|)` reference for [`nearest_boundary_map`].
pub fn brute_force_nearest(mask: &BoundaryMask) -> Result<ArgminMap> {
    require_boundary(mask)?;
    let (w, h) = mask.dims();
    let points: Vec<(i64, i64)> = mask
        .points()
        .into_iter()
        .map(|(x, y)| (x as i64, y as i64))
        .collect();
    let per_pixel = par::map_range(w * h, |p| {
        let (x, y) = ((p % w) as i64, (p / w) as i64);
        let mut best = u64::MAX;
        let mut ties: Vec<(i64, i64)> = Vec::new();
        for &(bx, by) in &points {
            let (dx, dy) = (bx - x, by - y);
            let d = (dx * dx + dy * dy) as u64;
            if d < best {
                best = d;
                ties.clear();
            }
            if d == best {
                ties.push((dx, dy));
            }
        }
        (best, resolve_ties(x as usize, y as usize, &ties))
    });
    let mut sq = Vec::with_capacity(w * h);
    let mut nearest = Vec::with_capacity(w * h);
    let mut target = Vec::with_capacity(w * h);
    let mut count = Vec::with_capacity(w * h);
    for (d, t) in per_pixel {
        sq.push(d);
        nearest.push(t.nearest);
        target.push(t.target);
        count.push(t.count);
    }
    Ok(ArgminMap::from_parts(w, h, sq, nearest, target, count))
}

/// Euclidean distance transform of a boundary mask.
pub fn dt_from_mask(mask: &BoundaryMask) -> Result<DistanceField> {
    require_boundary(mask)?;
    let (w, h) = mask.dims();
    let ft = edt::feature_transform(w, h, mask.grid.data()).ok_or(VtError::EmptyBoundary)?;
    let data = ft.sq_dist.iter().map(|&d| (d as f64).sqrt()).collect();
    Ok(DistanceField {
        grid: PixelGrid::new(w, h, data)?,
    })
}

fn direction_to(target: [f64; 2], x: usize, y: usize) -> [f64; 2] {
    let fx = target[0] - x as f64;
    let fy = target[1] - y as f64;
    let n = fx.hypot(fy);
    [fx / n, fy / n]
}

/// Vector transform of a thin boundary mask.
///
/// Boundary pixels copy the vector of the first non-boundary neighbour in
/// the fixed order left, up, right, down, then diagonals.
pub fn vt_from_mask(mask: &BoundaryMask) -> Result<VectorField> {
    let argmin = nearest_boundary_map(mask)?;
    vt_from_argmin(mask, &argmin)
}

/// Same as [`vt_from_mask`] but reuses a precomputed nearest-boundary map.
pub fn vt_from_argmin(mask: &BoundaryMask, argmin: &ArgminMap) -> Result<VectorField> {
    mask.grid.same_dims(&PixelGrid::filled(argmin.width(), argmin.height(), ()))?;
    let (w, h) = mask.dims();
    let mut field = VectorField::from_fn(w, h, |x, y| {
        if mask.is_boundary(x, y) {
            [0.0, 0.0]
        } else {
            direction_to(argmin.target(x, y), x, y)
        }
    });
    for (x, y) in mask.points() {
        let donor = NEIGHBOR_ORDER.iter().find_map(|&(dx, dy)| {
            let nx = x as isize + dx;
            let ny = y as isize + dy;
            match mask.grid.get_signed(nx, ny) {
                Some(false) => Some((nx as usize, ny as usize)),
                _ => None,
            }
        });
        let Some((nx, ny)) = donor else {
            log::warn!("thick boundary: pixel ({x}, {y}) has no non-boundary 8-neighbour");
            return Err(VtError::NoNonBoundaryNeighbor { x, y });
        };
        let v = field.at(nx, ny);
        field.set(x, y, v);
    }
    Ok(field)
}

/// For every pixel, the nearest pixel carrying a different label.
pub fn label_argmin(labels: &LabelMask) -> Result<ArgminMap> {
    let distinct = labels.distinct_labels();
    if distinct.len() < 2 {
        return Err(VtError::SingleLabel);
    }
    let g = &labels.grid;
    let (w, h) = g.dims();

    // Bounding box of every label, expanded by one pixel and clipped. The
    // nearest different-label pixel of any pixel in the box lies inside it.
    let mut boxes: Vec<[usize; 4]> = vec![[usize::MAX, usize::MAX, 0, 0]; distinct.len()];
    let slot = |l: u32| distinct.binary_search(&l).expect("label from the map");
    for y in 0..h {
        for x in 0..w {
            let b = &mut boxes[slot(g[(x, y)])];
            b[0] = b[0].min(x);
            b[1] = b[1].min(y);
            b[2] = b[2].max(x);
            b[3] = b[3].max(y);
        }
    }

    let per_label: Vec<Vec<(usize, u64)>> = par::map_range(distinct.len(), |i| {
        let label = distinct[i];
        let [x0, y0, x1, y1] = boxes[i];
        let cx0 = x0.saturating_sub(1);
        let cy0 = y0.saturating_sub(1);
        let cx1 = (x1 + 1).min(w - 1);
        let cy1 = (y1 + 1).min(h - 1);
        let cw = cx1 - cx0 + 1;
        let ch = cy1 - cy0 + 1;
        let sites: Vec<bool> = (0..cw * ch)
            .map(|c| g[(cx0 + c % cw, cy0 + c / cw)] != label)
            .collect();
        let ft = edt::feature_transform(cw, ch, &sites)
            .expect("a second label exists inside the expanded box");
        (0..cw * ch)
            .filter(|&c| !sites[c])
            .map(|c| {
                let (x, y) = (cx0 + c % cw, cy0 + c / cw);
                (y * w + x, ft.sq_dist[c])
            })
            .collect()
    });
    let mut sq_dist = vec![0u64; w * h];
    for list in per_label {
        for (p, d) in list {
            sq_dist[p] = d;
        }
    }
    let data = g.data();
    Ok(argmin_from_distances(w, h, sq_dist, |p, q| data[q] != data[p]))
}

/// Vector transform of a segmentation: every pixel, boundary pixels
/// included, points at its nearest pixel of another label.
///
/// Also returns the induced 2-px boundary band.
pub fn vt_from_labels(labels: &LabelMask) -> Result<(VectorField, BoundaryMask)> {
    let argmin = label_argmin(labels)?;
    let (w, h) = labels.dims();
    let field = VectorField::from_fn(w, h, |x, y| direction_to(argmin.target(x, y), x, y));
    Ok((field, labels.induced_boundary()))
}
