//! Superpixels by advecting every pixel against the field.
//!
//! Sources of the field (positive divergence, the medial axis of each
//! region) become centroid regions. Each pixel follows `-v` until it stalls
//! and is assigned to the nearest centroid region; pixels that leave the
//! image are grouped by DBSCAN on their exit positions.

use crate::derived::dbscan::dbscan;
use crate::edt::feature_transform;
use crate::error::{Result, VtError};
use crate::grid::{BoundaryMask, PixelGrid, VectorField};
use crate::inverse::{divergence, upsample_support};
use crate::morph::connected_components;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpixelParams {
    /// Support-lattice divergence above which a pixel is a source.
    pub source_threshold: f64,
    /// Advection step in pixels.
    pub step_size: f64,
    pub max_steps: usize,
    /// Advection stops once a step moves less than this.
    pub convergence: f64,
    pub eps: f64,
    pub min_samples: usize,
}

impl Default for SuperpixelParams {
    fn default() -> Self {
        Self {
            source_threshold: 1.0,
            step_size: 0.5,
            max_steps: 500,
            convergence: 1e-3,
            eps: 2.0,
            min_samples: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpixelMap {
    /// Ids `0..centroid_regions.len()` are centroid regions, the rest
    /// DBSCAN clusters of exited pixels.
    pub labels: PixelGrid<u32>,
    pub centroid_regions: Vec<Vec<(usize, usize)>>,
    pub exit_clusters: usize,
}

impl SuperpixelMap {
    pub fn count(&self) -> usize {
        self.centroid_regions.len() + self.exit_clusters
    }
}

/// Pixels adjacent to a support pixel whose divergence exceeds `threshold`.
pub fn source_mask(field: &VectorField, threshold: f64) -> BoundaryMask {
    let div = divergence(&upsample_support(field)).grid;
    let (w, h) = field.dims();
    let (sw, sh) = (2 * w as isize, 2 * h as isize);
    BoundaryMask::from_fn(w, h, |x, y| {
        (-1isize..=1).any(|dy| {
            (-1isize..=1).any(|dx| {
                let sx = 2 * x as isize + dx;
                let sy = 2 * y as isize + dy;
                (dx, dy) != (0, 0)
                    && sx >= 0
                    && sy >= 0
                    && sx < sw
                    && sy < sh
                    && div[(sx as usize, sy as usize)] > threshold
            })
        })
    })
}

/// Bilinear sample with coordinates clamped to the pixel centres.
pub fn sample_bilinear(field: &VectorField, p: [f64; 2]) -> [f64; 2] {
    let (w, h) = field.dims();
    let x = p[0].clamp(0.0, (w - 1) as f64);
    let y = p[1].clamp(0.0, (h - 1) as f64);
    let x0 = (x.floor() as usize).min(w.saturating_sub(2));
    let y0 = (y.floor() as usize).min(h.saturating_sub(2));
    let x1 = (x0 + 1).min(w - 1);
    let y1 = (y0 + 1).min(h - 1);
    let fx = x - x0 as f64;
    let fy = y - y0 as f64;
    let mut out = [0.0; 2];
    for (c, g) in [&field.vx, &field.vy].into_iter().enumerate() {
        let top = g[(x0, y0)] * (1.0 - fx) + g[(x1, y0)] * fx;
        let bottom = g[(x0, y1)] * (1.0 - fx) + g[(x1, y1)] * fx;
        out[c] = top * (1.0 - fy) + bottom * fy;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Advected {
    Inside([f64; 2]),
    /// Left `[-0.5, W - 0.5) x [-0.5, H - 0.5)`; holds the first outside
    /// position.
    Exited([f64; 2]),
}

fn inside(p: [f64; 2], w: usize, h: usize) -> bool {
    p[0] >= -0.5 && p[1] >= -0.5 && p[0] < w as f64 - 0.5 && p[1] < h as f64 - 0.5
}

/// Follows `-v` from `start`. Steps are `step_size` times the sampled
/// vector, whose norm is capped at 1.
pub fn advect(field: &VectorField, start: [f64; 2], params: &SuperpixelParams) -> Advected {
    let (w, h) = field.dims();
    let mut p = start;
    for _ in 0..params.max_steps {
        let v = sample_bilinear(field, p);
        let norm = v[0].hypot(v[1]);
        let scale = params.step_size / norm.max(1.0);
        let step = [-v[0] * scale, -v[1] * scale];
        p = [p[0] + step[0], p[1] + step[1]];
        if !inside(p, w, h) {
            return Advected::Exited(p);
        }
        if step[0].hypot(step[1]) < params.convergence {
            break;
        }
    }
    Advected::Inside(p)
}

/// Nearest-region lookup: exact Euclidean distance from a real point to the
/// closest region pixel, ties to the lower region id.
struct RegionLocator<'a> {
    width: usize,
    height: usize,
    region_of: &'a PixelGrid<Option<u32>>,
    sq_dist: Vec<u64>,
}

impl<'a> RegionLocator<'a> {
    fn new(region_of: &'a PixelGrid<Option<u32>>) -> Self {
        let (w, h) = region_of.dims();
        let sites: Vec<bool> = region_of.data().iter().map(Option::is_some).collect();
        let ft = feature_transform(w, h, &sites).expect("at least one region pixel");
        Self {
            width: w,
            height: h,
            region_of,
            sq_dist: ft.sq_dist,
        }
    }

    fn nearest(&self, p: [f64; 2]) -> u32 {
        let qx = p[0].round().clamp(0.0, (self.width - 1) as f64) as isize;
        let qy = p[1].round().clamp(0.0, (self.height - 1) as f64) as isize;
        let d0 = (self.sq_dist[qy as usize * self.width + qx as usize] as f64).sqrt();
        let offset = (p[0] - qx as f64).hypot(p[1] - qy as f64);
        // Any closer region pixel lies within d0 + 2|p - q| of q.
        let reach = d0 + 2.0 * offset + 1e-9;
        let r = reach.ceil() as isize;
        let mut best = (f64::INFINITY, u32::MAX);
        for y in (qy - r).max(0)..=(qy + r).min(self.height as isize - 1) {
            for x in (qx - r).max(0)..=(qx + r).min(self.width as isize - 1) {
                if let Some(id) = self.region_of[(x as usize, y as usize)] {
                    let d = (x as f64 - p[0]).powi(2) + (y as f64 - p[1]).powi(2);
                    if d < best.0 || (d == best.0 && id < best.1) {
                        best = (d, id);
                    }
                }
            }
        }
        best.1
    }
}

/// Three-stage segmentation: sources, advection, assignment.
///
/// Pixels of a centroid region belong to it directly. Exited pixels are
/// clustered with DBSCAN; noise joins the cluster of its nearest core point
/// and, if no cluster forms, all exited pixels make one superpixel.
pub fn superpixels(field: &VectorField, params: &SuperpixelParams) -> Result<SuperpixelMap> {
    if !(params.step_size > 0.0) || !(params.eps > 0.0) || params.min_samples == 0 {
        return Err(VtError::InvalidParameter(
            "step size and eps must be positive, min_samples at least 1".into(),
        ));
    }
    let (w, h) = field.dims();
    let sources = source_mask(field, params.source_threshold);
    if sources.is_blank() {
        return Err(VtError::NoSource {
            threshold: params.source_threshold,
        });
    }
    let (region_of, regions) = connected_components(&sources);
    let locator = RegionLocator::new(&region_of);

    let outcomes = par::map_range(w * h, |i| {
        let (x, y) = (i % w, i / w);
        if let Some(id) = region_of[(x, y)] {
            return Ok(id);
        }
        match advect(field, [x as f64, y as f64], params) {
            Advected::Inside(p) => Ok(locator.nearest(p)),
            Advected::Exited(p) => Err(p),
        }
    });

    let exited: Vec<[f64; 2]> = outcomes.iter().filter_map(|o| o.err()).collect();
    let (mut cluster_of, mut clusters) = dbscan(&exited, params.eps, params.min_samples);
    if !exited.is_empty() {
        if clusters == 0 {
            cluster_of.iter_mut().for_each(|c| *c = Some(0));
            clusters = 1;
        } else {
            assign_noise(&exited, &mut cluster_of, params);
        }
    }

    let base = regions.len() as u32;
    let mut next_exit = 0;
    let labels: Vec<u32> = outcomes
        .iter()
        .map(|o| match o {
            Ok(id) => *id,
            Err(_) => {
                let c = cluster_of[next_exit].expect("every exited point is clustered");
                next_exit += 1;
                base + c as u32
            }
        })
        .collect();
    Ok(SuperpixelMap {
        labels: PixelGrid::new(w, h, labels)?,
        centroid_regions: regions,
        exit_clusters: if exited.is_empty() { 0 } else { clusters },
    })
}

/// Gives each noise point the cluster of its nearest core point (lowest
/// index on ties).
fn assign_noise(points: &[[f64; 2]], cluster_of: &mut [Option<usize>], params: &SuperpixelParams) {
    let e2 = params.eps * params.eps;
    let core: Vec<usize> = (0..points.len())
        .filter(|&i| {
            cluster_of[i].is_some()
                && points
                    .iter()
                    .filter(|q| (points[i][0] - q[0]).powi(2) + (points[i][1] - q[1]).powi(2) <= e2)
                    .count()
                    >= params.min_samples
        })
        .collect();
    for i in 0..points.len() {
        if cluster_of[i].is_some() {
            continue;
        }
        let p = points[i];
        let nearest = core
            .iter()
            .copied()
            .min_by(|&a, &b| {
                let da = (p[0] - points[a][0]).powi(2) + (p[1] - points[a][1]).powi(2);
                let db = (p[0] - points[b][0]).powi(2) + (p[1] - points[b][1]).powi(2);
                da.total_cmp(&db).then(a.cmp(&b))
            })
            .expect("at least one cluster exists");
        cluster_of[i] = cluster_of[nearest];
    }
}
