//! Optimal dataset scale (ODS) and optimal image scale (OIS) evaluation.

use crate::error::{Result, VtError};
use crate::grid::BoundaryMask;
use crate::inverse::BoundaryImage;
use crate::metrics::matching::{f_measure, match_boundaries, ratio};
use crate::par;

/// Evenly spaced thresholds `k / (n + 1)`, `k = 1..=n`, strictly inside (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdLadder {
    thresholds: Vec<f64>,
}

impl ThresholdLadder {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(VtError::InvalidParameter("ladder size must be >= 1".into()));
        }
        let n = size as f64 + 1.0;
        Ok(Self {
            thresholds: (1..=size).map(|k| k as f64 / n).collect(),
        })
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }
}

impl Default for ThresholdLadder {
    fn default() -> Self {
        Self::new(99).expect("non-empty")
    }
}

/// Correspondence counts at one threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub matched: usize,
    pub predicted: usize,
    pub ground_truth: usize,
}

impl Counts {
    pub fn prf(&self) -> Prf {
        let precision = ratio(self.matched, self.predicted);
        let recall = ratio(self.matched, self.ground_truth);
        Prf {
            recall,
            precision,
            f: f_measure(precision, recall),
        }
    }
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            matched: self.matched + o.matched,
            predicted: self.predicted + o.predicted,
            ground_truth: self.ground_truth + o.ground_truth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub recall: f64,
    pub precision: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdsBlock {
    pub threshold: f64,
    pub prf: Prf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdsOis {
    pub ods: OdsBlock,
    /// Computed from the counts at each image's best threshold, summed.
    pub ois: Prf,
    pub ois_thresholds: Vec<f64>,
    /// `counts[image][threshold]`.
    pub counts: Vec<Vec<Counts>>,
}

/// Binary prediction at `threshold` (`strength >= threshold`).
pub fn threshold_mask(b: &BoundaryImage, threshold: f64) -> BoundaryMask {
    BoundaryMask::new(b.strength.map(|&s| s >= threshold))
}

/// Counts of one image over the whole ladder.
pub fn image_counts(
    pred: &BoundaryImage,
    gt: &BoundaryMask,
    tolerance_fraction: f64,
    ladder: &ThresholdLadder,
) -> Result<Vec<Counts>> {
    pred.strength.same_dims(&gt.grid)?;
    let (w, h) = gt.dims();
    let tolerance = tolerance_fraction * ((w * w + h * h) as f64).sqrt();
    ladder
        .thresholds()
        .iter()
        .map(|&t| {
            let m = match_boundaries(&threshold_mask(pred, t), gt, tolerance)?;
            Ok(Counts {
                matched: m.true_positives,
                predicted: m.predicted(),
                ground_truth: m.ground_truth(),
            })
        })
        .collect()
}

fn best_index(scores: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, f) in scores.enumerate() {
        if f > best.1 {
            best = (i, f);
        }
    }
    best.0
}

/// Reduces a per-image count table to ODS and OIS.
pub fn summarize(counts: Vec<Vec<Counts>>, ladder: &ThresholdLadder) -> OdsOis {
    let thresholds = ladder.thresholds();
    let totals: Vec<Counts> = (0..thresholds.len())
        .map(|t| {
            counts
                .iter()
                .fold(Counts::default(), |acc, img| acc + img[t])
        })
        .collect();
    let k = best_index(totals.iter().map(|c| c.prf().f));
    let ods = OdsBlock {
        threshold: thresholds[k],
        prf: totals[k].prf(),
    };

    let mut ois_total = Counts::default();
    let mut ois_thresholds = Vec::with_capacity(counts.len());
    for img in &counts {
        let i = best_index(img.iter().map(|c| c.prf().f));
        ois_total = ois_total + img[i];
        ois_thresholds.push(thresholds[i]);
    }
    OdsOis {
        ods,
        ois: ois_total.prf(),
        ois_thresholds,
        counts,
    }
}

/// ODS/OIS over a set of images; the matching tolerance of each image is
/// `tolerance_fraction` times its diagonal.
pub fn ods_ois(
    preds: &[BoundaryImage],
    gts: &[BoundaryMask],
    tolerance_fraction: f64,
    ladder: &ThresholdLadder,
) -> Result<OdsOis> {
    if preds.len() != gts.len() {
        return Err(VtError::LengthMismatch {
            preds: preds.len(),
            gts: gts.len(),
        });
    }
    if preds.is_empty() {
        return Err(VtError::InvalidParameter("no images to evaluate".into()));
    }
    if !(tolerance_fraction > 0.0) {
        return Err(VtError::InvalidParameter(format!(
            "tolerance fraction must be positive, got {tolerance_fraction}"
        )));
    }
    let counts = par::map_range(preds.len(), |i| {
        image_counts(&preds[i], &gts[i], tolerance_fraction, ladder)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(summarize(counts, ladder))
}
