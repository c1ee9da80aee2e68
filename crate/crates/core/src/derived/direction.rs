use std::f64::consts::PI;

use crate::error::{Result, VtError};
use crate::grid::{BoundaryMask, PixelGrid, VectorField};

/// Angles in `(-pi, pi]`, meaningful only where `defined` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    pub angles: PixelGrid<f64>,
    pub defined: BoundaryMask,
}

/// `atan2(vy, vx)` at every boundary pixel; `0` elsewhere.
pub fn direction_angles(field: &VectorField, boundary: &BoundaryMask) -> Result<AngleGrid> {
    field.vx.same_dims(&boundary.grid)?;
    let (w, h) = field.dims();
    let angles = PixelGrid::from_fn(w, h, |x, y| {
        if boundary.is_boundary(x, y) {
            let [vx, vy] = field.at(x, y);
            vy.atan2(vx)
        } else {
            0.0
        }
    });
    Ok(AngleGrid {
        angles,
        defined: boundary.clone(),
    })
}

/// Shortest signed arc from `b` to `a`, in `[-pi, pi]`.
pub fn wrap_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleError {
    pub rmse_degrees: f64,
    /// Pixels defined in both grids.
    pub compared: usize,
    /// `compared` over the pixels defined in either grid.
    pub coverage: f64,
}

/// RMSE of the wrapped angular difference over pixels defined in both grids.
pub fn angle_rmse(pred: &AngleGrid, gt: &AngleGrid) -> Result<AngleError> {
    pred.angles.same_dims(&gt.angles)?;
    let (mut sum, mut both, mut either) = (0.0, 0usize, 0usize);
    for (i, (&a, &b)) in pred.angles.data().iter().zip(gt.angles.data()).enumerate() {
        let (pa, ga) = (pred.defined.grid.data()[i], gt.defined.grid.data()[i]);
        if pa || ga {
            either += 1;
        }
        if pa && ga {
            both += 1;
            sum += wrap_difference(a, b).powi(2);
        }
    }
    if both == 0 {
        return Err(VtError::EmptyIntersection);
    }
    Ok(AngleError {
        rmse_degrees: (sum / both as f64).sqrt().to_degrees(),
        compared: both,
        coverage: both as f64 / either as f64,
    })
}
