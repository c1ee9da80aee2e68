//! How boundary thickness moves fixed-threshold F against assd.
//!
//! Three configurations are scored: the original pair, a thickened
//! prediction and a thickened ground truth. Thickening is one pass of 3x3
//! dilation.

use crate::error::{Result, VtError};
use crate::grid::BoundaryMask;
use crate::metrics::matching::{f_measure, match_boundaries, ratio};
use crate::metrics::ods::Counts;
use crate::metrics::surface::surface_distances;
use crate::morph::dilate;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessPoint {
    pub assd: f64,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessReport {
    pub original: ThicknessPoint,
    pub thick_pred: ThicknessPoint,
    pub thick_gt: ThicknessPoint,
}

fn relative(base: f64, changed: f64) -> Option<f64> {
    (base != 0.0).then(|| ((changed - base) / base).abs())
}

impl ThicknessReport {
    /// `|F' - F| / F` for the thickened prediction; `None` when `F = 0`.
    pub fn rel_f_pred(&self) -> Option<f64> {
        relative(self.original.f, self.thick_pred.f)
    }

    /// `|assd' - assd| / assd` for the thickened prediction; `None` when the
    /// original assd is 0.
    pub fn rel_assd_pred(&self) -> Option<f64> {
        relative(self.original.assd, self.thick_pred.assd)
    }

    pub fn rel_f_gt(&self) -> Option<f64> {
        relative(self.original.f, self.thick_gt.f)
    }

    pub fn rel_assd_gt(&self) -> Option<f64> {
        relative(self.original.assd, self.thick_gt.assd)
    }
}

struct Sample {
    counts: Counts,
    assd: f64,
}

fn sample(pred: &BoundaryMask, gt: &BoundaryMask, tolerance: f64) -> Result<Sample> {
    let m = match_boundaries(pred, gt, tolerance)?;
    let s = surface_distances(pred, gt)?;
    Ok(Sample {
        counts: Counts {
            matched: m.true_positives,
            predicted: m.predicted(),
            ground_truth: m.ground_truth(),
        },
        assd: s.assd,
    })
}

fn point(counts: Counts, assd: f64) -> ThicknessPoint {
    let precision = ratio(counts.matched, counts.predicted);
    let recall = ratio(counts.matched, counts.ground_truth);
    ThicknessPoint {
        assd,
        precision,
        recall,
        f: f_measure(precision, recall),
    }
}

/// Scores one pair under the three configurations at a fixed matching
/// `tolerance` in pixels.
pub fn thickness_sensitivity(
    pred: &BoundaryMask,
    gt: &BoundaryMask,
    tolerance: f64,
) -> Result<ThicknessReport> {
    thickness_suite(&[(pred.clone(), gt.clone())], tolerance)
}

/// Suite version: matching counts are summed over pairs before R/P/F, assd
/// is the mean over pairs.
pub fn thickness_suite(pairs: &[(BoundaryMask, BoundaryMask)], tolerance: f64) -> Result<ThicknessReport> {
    if pairs.is_empty() {
        return Err(VtError::InvalidParameter("no pairs to evaluate".into()));
    }
    let mut acc = [(Counts::default(), 0.0); 3];
    for (pred, gt) in pairs {
        let configs = [
            (pred.clone(), gt.clone()),
            (dilate(pred), gt.clone()),
            (pred.clone(), dilate(gt)),
        ];
        for (slot, (p, g)) in acc.iter_mut().zip(&configs) {
            let s = sample(p, g, tolerance)?;
            slot.0 = slot.0 + s.counts;
            slot.1 += s.assd;
        }
    }
    let n = pairs.len() as f64;
    let [op, tp, tg] = acc.map(|(c, a)| point(c, a / n));
    Ok(ThicknessReport {
        original: op,
        thick_pred: tp,
        thick_gt: tg,
    })
}
