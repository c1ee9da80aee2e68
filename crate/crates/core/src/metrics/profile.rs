//! Value profiles against distance to the ground-truth boundary.

use crate::error::Result;
use crate::field::dt_from_mask;
use crate::grid::{BoundaryMask, PixelGrid};

/// Mean and spread of a raster per integer distance bin.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    /// Bin centres in pixels, strictly increasing.
    pub distances: Vec<f64>,
    pub mean: Vec<f64>,
    /// Population standard deviation.
    pub stddev: Vec<f64>,
    pub count: Vec<usize>,
}

impl ProfileCurve {
    /// Least-squares slope of `mean` against `distances` over bins with
    /// centre in `[from, to]`. `None` with fewer than two bins.
    pub fn slope(&self, from: f64, to: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .distances
            .iter()
            .zip(&self.mean)
            .filter(|(&d, _)| d >= from && d <= to)
            .map(|(&d, &m)| (d, m))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }
}

/// Groups pixels by exact distance to `gt_boundary`, rounded to the nearest
/// integer (bin `k` holds distances in `[k - 0.5, k + 0.5)`), and reports
/// per-bin statistics of `values` for `k <= max_distance`. Empty bins are
/// omitted.
pub fn prediction_profile(
    values: &PixelGrid<f64>,
    gt_boundary: &BoundaryMask,
    max_distance: f64,
) -> Result<ProfileCurve> {
    values.same_dims(&gt_boundary.grid)?;
    let dt = dt_from_mask(gt_boundary)?;
    let bins = max_distance.max(0.0).floor() as usize + 1;
    let mut sum = vec![0.0; bins];
    let mut count = vec![0usize; bins];
    let mut members: Vec<Vec<f64>> = vec![Vec::new(); bins];
    for (&v, &d) in values.data().iter().zip(dt.grid.data()) {
        let k = (d + 0.5).floor() as usize;
        if k < bins {
            sum[k] += v;
            count[k] += 1;
            members[k].push(v);
        }
    }
    let mut curve = ProfileCurve {
        distances: Vec::new(),
        mean: Vec::new(),
        stddev: Vec::new(),
        count: Vec::new(),
    };
    for k in 0..bins {
        if count[k] == 0 {
            continue;
        }
        let mean = sum[k] / count[k] as f64;
        let var = members[k].iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count[k] as f64;
        curve.distances.push(k as f64);
        curve.mean.push(mean);
        curve.stddev.push(var.sqrt());
        curve.count.push(count[k]);
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_values() {
        let gt = BoundaryMask::from_fn(20, 10, |x, _| x == 3);
        let values = PixelGrid::filled(20, 10, 2.5);
        let p = prediction_profile(&values, &gt, 50.0).unwrap();
        assert_eq!(p.distances, (0..=16).map(f64::from).collect::<Vec<_>>());
        assert!(p.mean.iter().all(|&m| m == 2.5));
        assert!(p.stddev.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn distance_profiles_itself() {
        let gt = BoundaryMask::from_fn(30, 30, |x, y| x == 10 && y == 12);
        let dt = dt_from_mask(&gt).unwrap();
        let p = prediction_profile(&dt.grid, &gt, 12.0).unwrap();
        for (d, (&m, &s)) in p.distances.iter().zip(p.mean.iter().zip(&p.stddev)) {
            assert!((m - d).abs() <= 0.5, "bin {d}: mean {m}");
            assert!(s <= 0.5);
        }
        let slope = p.slope(1.0, 12.0).unwrap();
        assert!((slope - 1.0).abs() < 0.05, "slope {slope}");
    }
}
