//! Exact Euclidean feature transform.
//!
//! Two separable passes: a per-column scan for the nearest site in the same
//! column, then a per-row lower envelope of parabolas `(x - x')^2 + g(x')^2`.
//! All arithmetic is on integer squared distances, so the result is exact.
//! Equidistant sites are recovered afterwards by enumerating the lattice
//! points on the circle of the exact squared radius.

use std::collections::HashMap;

use crate::par;

const NO_SITE: u32 = u32::MAX;

/// Squared distance to, and flat index of, one nearest site per pixel.
#[derive(Debug, Clone)]
pub(crate) struct FeatureTransform {
    pub sq_dist: Vec<u64>,
    #[allow(dead_code)]
    pub site: Vec<u32>,
}

/// Returns `None` when `is_site` has no `true` entry.
pub(crate) fn feature_transform(
    width: usize,
    height: usize,
    is_site: &[bool],
) -> Option<FeatureTransform> {
    debug_assert_eq!(is_site.len(), width * height);
    if !is_site.iter().any(|&s| s) {
        return None;
    }

    // Column pass, stored column-major: nearest site row for every (x, y).
    let columns: Vec<Vec<u32>> = par::map_range(width, |x| {
        let mut nearest = vec![NO_SITE; height];
        let mut last = NO_SITE;
        for y in 0..height {
            if is_site[y * width + x] {
                last = y as u32;
            }
            nearest[y] = last;
        }
        let mut next = NO_SITE;
        for y in (0..height).rev() {
            if is_site[y * width + x] {
                next = y as u32;
            }
            let up = nearest[y];
            let pick = match (up, next) {
                (NO_SITE, n) => n,
                (u, NO_SITE) => u,
                (u, n) => {
                    if y as u32 - u <= n - y as u32 {
                        u
                    } else {
                        n
                    }
                }
            };
            nearest[y] = pick;
        }
        nearest
    });

    let mut sq_dist = vec![0u64; width * height];
    let mut site = vec![0u32; width * height];
    {
        let rows: Vec<(Vec<u64>, Vec<u32>)> = par::map_range(height, |y| {
            let mut envelope = Envelope::with_capacity(width);
            for (x, col) in columns.iter().enumerate() {
                let r = col[y];
                if r != NO_SITE {
                    let dy = (r as i64 - y as i64).unsigned_abs();
                    envelope.push(x as i64, (dy * dy) as i64);
                }
            }
            let mut d = vec![0u64; width];
            let mut s = vec![0u32; width];
            envelope.evaluate(|x, vertex, value| {
                d[x] = value as u64;
                let col = vertex as usize;
                s[x] = (columns[col][y] as usize * width + col) as u32;
            }, width);
            (d, s)
        });
        for (y, (d, s)) in rows.into_iter().enumerate() {
            sq_dist[y * width..(y + 1) * width].copy_from_slice(&d);
            site[y * width..(y + 1) * width].copy_from_slice(&s);
        }
    }
    Some(FeatureTransform { sq_dist, site })
}

/// Lower envelope of unit parabolas `(x - p)^2 + h`.
struct Envelope {
    vertex: Vec<i64>,
    height: Vec<i64>,
    // Left end of each parabola's interval as `num / den`, `den > 0`.
    // The first entry is unused (minus infinity).
    start: Vec<(i128, i128)>,
}

impl Envelope {
    fn with_capacity(n: usize) -> Self {
        Self {
            vertex: Vec::with_capacity(n),
            height: Vec::with_capacity(n),
            start: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, q: i64, hq: i64) {
        loop {
            let Some(&p) = self.vertex.last() else {
                self.vertex.push(q);
                self.height.push(hq);
                self.start.push((0, 1));
                return;
            };
            let hp = *self.height.last().unwrap();
            // Intersection abscissa of parabolas p and q (p < q).
            let num = (hq as i128 + (q as i128) * (q as i128))
                - (hp as i128 + (p as i128) * (p as i128));
            let den = 2 * (q as i128 - p as i128);
            let k = self.vertex.len() - 1;
            if k > 0 {
                let (zn, zd) = self.start[k];
                if num * zd <= zn * den {
                    self.vertex.pop();
                    self.height.pop();
                    self.start.pop();
                    continue;
                }
            }
            self.vertex.push(q);
            self.height.push(hq);
            self.start.push((num, den));
            return;
        }
    }

    fn evaluate(&self, mut emit: impl FnMut(usize, i64, i64), width: usize) {
        let value = |k: usize, x: i64| {
            let d = x - self.vertex[k];
            d * d + self.height[k]
        };
        let mut k = 0;
        for x in 0..width as i64 {
            while k + 1 < self.vertex.len() && value(k + 1, x) <= value(k, x) {
                k += 1;
            }
            emit(x as usize, self.vertex[k], value(k, x));
        }
    }
}

/// All `(a, b)` with `a^2 + b^2 = d`, for every requested `d`.
pub(crate) struct CircleTable {
    offsets: HashMap<u64, Vec<(i64, i64)>>,
}

impl CircleTable {
    pub fn new(sq_dists: &[u64]) -> Self {
        let mut keys: Vec<u64> = sq_dists.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let lists = par::map_slice(&keys, |&d| lattice_circle(d));
        Self {
            offsets: keys.into_iter().zip(lists).collect(),
        }
    }

    pub fn get(&self, d: u64) -> &[(i64, i64)] {
        self.offsets.get(&d).map_or(&[], Vec::as_slice)
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn lattice_circle(d: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let max = isqrt(d);
    for a in 0..=max {
        let rest = d - a * a;
        let b = isqrt(rest);
        if b * b != rest {
            continue;
        }
        let (a, b) = (a as i64, b as i64);
        for sa in [1, -1] {
            if a == 0 && sa == -1 {
                continue;
            }
            for sb in [1, -1] {
                if b == 0 && sb == -1 {
                    continue;
                }
                out.push((sa * a, sb * b));
            }
        }
    }
    out
}

/// Nearest-boundary information for every pixel.
///
/// `nearest` is a true minimiser (the equidistant pixel with smallest
/// `(y, x)`); `target` is the point the transform's direction aims at: the
/// mean of the equidistant set when that mean differs from the pixel itself,
/// else `nearest`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgminMap {
    width: usize,
    height: usize,
    sq_dist: Vec<u64>,
    nearest: Vec<[u32; 2]>,
    target: Vec<[f64; 2]>,
    tie_count: Vec<u32>,
}

impl ArgminMap {
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn squared_distance(&self, x: usize, y: usize) -> u64 {
        self.sq_dist[y * self.width + x]
    }

    #[inline]
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        (self.squared_distance(x, y) as f64).sqrt()
    }

    #[inline]
    pub fn nearest(&self, x: usize, y: usize) -> (usize, usize) {
        let [nx, ny] = self.nearest[y * self.width + x];
        (nx as usize, ny as usize)
    }

    #[inline]
    pub fn target(&self, x: usize, y: usize) -> [f64; 2] {
        self.target[y * self.width + x]
    }

    #[inline]
    pub fn tie_count(&self, x: usize, y: usize) -> u32 {
        self.tie_count[y * self.width + x]
    }

    pub fn squared_distances(&self) -> &[u64] {
        &self.sq_dist
    }

    pub(crate) fn from_parts(
        width: usize,
        height: usize,
        sq_dist: Vec<u64>,
        nearest: Vec<[u32; 2]>,
        target: Vec<[f64; 2]>,
        tie_count: Vec<u32>,
    ) -> Self {
        Self {
            width,
            height,
            sq_dist,
            nearest,
            target,
            tie_count,
        }
    }
}

/// Summary of the equidistant set of one pixel.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TieSet {
    pub nearest: [u32; 2],
    pub target: [f64; 2],
    pub count: u32,
}

/// Collapses an equidistant set (given as offsets from pixel `(x, y)`) into
/// the representative pixel and the direction target.
pub(crate) fn resolve_ties(x: usize, y: usize, offsets: &[(i64, i64)]) -> TieSet {
    debug_assert!(!offsets.is_empty());
    let (mut best_dx, mut best_dy) = offsets[0];
    let (mut sx, mut sy) = (0i64, 0i64);
    for &(dx, dy) in offsets {
        sx += dx;
        sy += dy;
        if (dy, dx) < (best_dy, best_dx) {
            best_dx = dx;
            best_dy = dy;
        }
    }
    let nearest = [(x as i64 + best_dx) as u32, (y as i64 + best_dy) as u32];
    let count = offsets.len() as u32;
    let target = if sx == 0 && sy == 0 {
        [nearest[0] as f64, nearest[1] as f64]
    } else {
        let n = count as f64;
        [x as f64 + sx as f64 / n, y as f64 + sy as f64 / n]
    };
    TieSet {
        nearest,
        target,
        count,
    }
}

/// Builds the full [`ArgminMap`] from exact squared distances.
///
/// `is_site(p, q)` tells whether flat pixel `q` is a valid site for pixel `p`.
pub(crate) fn argmin_from_distances<F>(
    width: usize,
    height: usize,
    sq_dist: Vec<u64>,
    is_site: F,
) -> ArgminMap
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let table = CircleTable::new(&sq_dist);
    let sets: Vec<TieSet> = par::map_range(width * height, |p| {
        let (x, y) = (p % width, p / width);
        let mut offsets: Vec<(i64, i64)> = Vec::with_capacity(4);
        for &(dx, dy) in table.get(sq_dist[p]) {
            let qx = x as i64 + dx;
            let qy = y as i64 + dy;
            if qx < 0 || qy < 0 || qx >= width as i64 || qy >= height as i64 {
                continue;
            }
            if is_site(p, qy as usize * width + qx as usize) {
                offsets.push((dx, dy));
            }
        }
        resolve_ties(x, y, &offsets)
    });
    let mut nearest = Vec::with_capacity(sets.len());
    let mut target = Vec::with_capacity(sets.len());
    let mut tie_count = Vec::with_capacity(sets.len());
    for s in sets {
        nearest.push(s.nearest);
        target.push(s.target);
        tie_count.push(s.count);
    }
    ArgminMap::from_parts(width, height, sq_dist, nearest, target, tie_count)
}
