//! Evaluation: surface distances, correspondence-based R/P/F, ODS/OIS,
//! field MSE, distance profiles and the thickness-sensitivity protocol.

pub mod matching;
pub mod ods;
pub mod profile;
pub mod report;
pub mod surface;
pub mod thickness;

pub use matching::{f_measure, match_boundaries, max_bipartite_matching, MatchResult, SOLVER};
pub use ods::{ods_ois, Counts, OdsBlock, OdsOis, Prf, ThresholdLadder};
pub use profile::{prediction_profile, ProfileCurve};
pub use report::{evaluate, EvalConfig, Evaluation, MetricReport};
pub use surface::{directed_hausdorff, hausdorff, surface_distances, SurfaceDistances};
pub use thickness::{thickness_sensitivity, thickness_suite, ThicknessPoint, ThicknessReport};

use crate::error::Result;
use crate::grid::VectorField;

/// Mean over pixels of the squared Euclidean difference of the vectors.
pub fn field_mse(gt: &VectorField, pred: &VectorField) -> Result<f64> {
    gt.vx.same_dims(&pred.vx)?;
    let sum: f64 = gt
        .vx
        .data()
        .iter()
        .zip(gt.vy.data())
        .zip(pred.vx.data().iter().zip(pred.vy.data()))
        .map(|((gx, gy), (px, py))| (gx - px).powi(2) + (gy - py).powi(2))
        .sum();
    Ok(sum / gt.vx.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::vt_from_mask;
    use crate::grid::BoundaryMask;

    #[test]
    fn mse_identity_and_antipode() {
        let m = BoundaryMask::from_fn(9, 7, |x, y| x == 4 && y == 3);
        let v = vt_from_mask(&m).unwrap();
        assert_eq!(field_mse(&v, &v).unwrap(), 0.0);
        let mse = field_mse(&v, &v.negated()).unwrap();
        assert!((mse - 4.0).abs() < 1e-12);
    }

    #[test]
    fn mse_dimension_mismatch() {
        let a = VectorField::constant(3, 3, [1.0, 0.0]);
        let b = VectorField::constant(3, 4, [1.0, 0.0]);
        assert!(field_mse(&a, &b).is_err());
    }
}
