//! Full evaluation of boundary predictions and its text serialisations.

use std::fmt::Write as _;

use crate::error::{Result, VtError};
use crate::grid::BoundaryMask;
use crate::inverse::{binarize, BoundaryImage};
use crate::metrics::matching::SOLVER;
use crate::metrics::ods::{ods_ois, OdsBlock, Prf, ThresholdLadder};
use crate::metrics::surface::{surface_distances, SurfaceDistances};
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Matching tolerance as a fraction of the image diagonal.
    pub tolerance_fraction: f64,
    pub ladder: ThresholdLadder,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tolerance_fraction: 0.0025,
            ladder: ThresholdLadder::default(),
        }
    }
}

/// One row of an evaluation. Surface distances are `None` when the binarised
/// prediction is empty, which leaves them undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub name: String,
    pub surface: Option<SurfaceDistances>,
    pub ods: OdsBlock,
    pub ois: Prf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub images: Vec<MetricReport>,
    pub overall: MetricReport,
    pub config: EvalConfig,
}

const HEADER: &str = "image,asd_R,asd_P,assd,ods_threshold,ods_R,ods_P,ods_F,ois_R,ois_P,ois_F";

fn num(v: f64) -> String {
    format!("{v:.6}")
}

impl MetricReport {
    fn fields(&self) -> [(&'static str, String); 10] {
        let s = |f: fn(&SurfaceDistances) -> f64| {
            self.surface.as_ref().map_or_else(|| "undefined".to_string(), |s| num(f(s)))
        };
        [
            ("asd_R", s(|s| s.asd_r)),
            ("asd_P", s(|s| s.asd_p)),
            ("assd", s(|s| s.assd)),
            ("ods_threshold", num(self.ods.threshold)),
            ("ods_R", num(self.ods.prf.recall)),
            ("ods_P", num(self.ods.prf.precision)),
            ("ods_F", num(self.ods.prf.f)),
            ("ois_R", num(self.ois.recall)),
            ("ois_P", num(self.ois.precision)),
            ("ois_F", num(self.ois.f)),
        ]
    }
}

impl Evaluation {
    /// Header, one row per image and a final `ALL` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        for r in self.images.iter().chain(std::iter::once(&self.overall)) {
            let row: Vec<String> = r.fields().into_iter().map(|(_, v)| v).collect();
            let _ = writeln!(out, "{},{}", csv_escape(&r.name), row.join(","));
        }
        out
    }

    /// `key=value` lines: run metadata, then the overall metrics.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "solver={SOLVER}");
        let _ = writeln!(out, "tolerance_fraction={}", self.config.tolerance_fraction);
        let _ = writeln!(out, "ladder_size={}", self.config.ladder.len());
        let _ = writeln!(out, "images={}", self.images.len());
        for (k, v) in self.overall.fields() {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn surface(pred: &BoundaryImage, gt: &BoundaryMask) -> Result<Option<SurfaceDistances>> {
    match surface_distances(&binarize(pred), gt) {
        Ok(s) => Ok(Some(s)),
        Err(VtError::EmptyMask { which: "prediction" }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Scores every `(name, prediction, ground truth)` triple and the set as a
/// whole. Surface distances use the fixed binarisation (`strength > 0`);
/// the overall row averages them over images and is undefined if any image
/// is.
pub fn evaluate(
    names: &[String],
    preds: &[BoundaryImage],
    gts: &[BoundaryMask],
    config: &EvalConfig,
) -> Result<Evaluation> {
    if preds.len() != gts.len() || names.len() != preds.len() {
        return Err(VtError::LengthMismatch {
            preds: preds.len(),
            gts: gts.len(),
        });
    }
    let all = ods_ois(preds, gts, config.tolerance_fraction, &config.ladder)?;
    let surfaces = par::map_range(preds.len(), |i| surface(&preds[i], &gts[i]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let images = all
        .counts
        .iter()
        .zip(&surfaces)
        .zip(names)
        .map(|((counts, s), name)| {
            let single = crate::metrics::ods::summarize(vec![counts.clone()], &config.ladder);
            MetricReport {
                name: name.clone(),
                surface: *s,
                ods: single.ods,
                ois: single.ois,
            }
        })
        .collect();

    let overall_surface = surfaces
        .iter()
        .copied()
        .collect::<Option<Vec<_>>>()
        .map(|v| {
            let n = v.len() as f64;
            let asd_r = v.iter().map(|s| s.asd_r).sum::<f64>() / n;
            let asd_p = v.iter().map(|s| s.asd_p).sum::<f64>() / n;
            SurfaceDistances {
                asd_r,
                asd_p,
                assd: 0.5 * (asd_r + asd_p),
            }
        });
    Ok(Evaluation {
        images,
        overall: MetricReport {
            name: "ALL".into(),
            surface: overall_surface,
            ods: all.ods,
            ois: all.ois,
        },
        config: config.clone(),
    })
}
