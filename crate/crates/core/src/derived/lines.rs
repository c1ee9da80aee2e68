//! Straight-line proposals from the orientation of the field.
//!
//! Taking absolute values of both channels removes the sign of the normal,
//! so opposite sides of a boundary agree. Along a straight boundary the
//! result is locally constant and its derivatives vanish.

use crate::error::Result;
use crate::grid::{BoundaryMask, PixelGrid, VectorField};
use crate::kernel::{correlate3, DERIVATIVE_SCALE, SOBEL_X, SOBEL_Y};

pub const LINE_THRESHOLD: f64 = 0.05;

/// Sum of the absolute Sobel responses of `|vx|` and `|vy|` along x and y.
pub fn line_response(field: &VectorField) -> PixelGrid<f64> {
    let ax = field.vx.map(|v| v.abs());
    let ay = field.vy.map(|v| v.abs());
    let parts = [
        correlate3(&ax, &SOBEL_X, DERIVATIVE_SCALE),
        correlate3(&ax, &SOBEL_Y, DERIVATIVE_SCALE),
        correlate3(&ay, &SOBEL_X, DERIVATIVE_SCALE),
        correlate3(&ay, &SOBEL_Y, DERIVATIVE_SCALE),
    ];
    let (w, h) = field.dims();
    PixelGrid::from_fn(w, h, |x, y| parts.iter().map(|p| p[(x, y)].abs()).sum())
}

/// Boundary pixels whose response is below `t`.
pub fn line_proposals(field: &VectorField, boundary: &BoundaryMask, t: f64) -> Result<BoundaryMask> {
    field.vx.same_dims(&boundary.grid)?;
    let r = line_response(field);
    let (w, h) = boundary.dims();
    Ok(BoundaryMask::from_fn(w, h, |x, y| {
        boundary.is_boundary(x, y) && r[(x, y)] < t
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::vt_from_mask;

    #[test]
    fn vertical_line_is_fully_flagged() {
        let m = BoundaryMask::from_fn(16, 16, |x, _| x == 7);
        let v = vt_from_mask(&m).unwrap();
        assert_eq!(line_proposals(&v, &m, LINE_THRESHOLD).unwrap(), m);
    }

    #[test]
    fn subset_of_input() {
        let m = BoundaryMask::from_fn(20, 20, |x, y| (x as i32 - 10).pow(2) + (y as i32 - 9).pow(2) == 25);
        let v = vt_from_mask(&m).unwrap();
        let p = line_proposals(&v, &m, 10.0).unwrap();
        assert!(p.is_subset_of(&m));
    }
}
