use crate::error::{Result, VtError};
use crate::field::dt_from_mask;
use crate::grid::BoundaryMask;

/// Average surface distances in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceDistances {
    /// Mean distance from predicted pixels to the ground truth.
    pub asd_p: f64,
    /// Mean distance from ground-truth pixels to the prediction.
    pub asd_r: f64,
    pub assd: f64,
}

fn check(pred: &BoundaryMask, gt: &BoundaryMask) -> Result<()> {
    pred.grid.same_dims(&gt.grid)?;
    if pred.is_blank() {
        return Err(VtError::EmptyMask { which: "prediction" });
    }
    if gt.is_blank() {
        return Err(VtError::EmptyMask { which: "ground-truth" });
    }
    Ok(())
}

fn mean_distance(from: &BoundaryMask, to: &BoundaryMask) -> Result<f64> {
    let dt = dt_from_mask(to)?;
    let (sum, n) = from
        .grid
        .data()
        .iter()
        .zip(dt.grid.data())
        .filter(|(&b, _)| b)
        .fold((0.0, 0usize), |(s, n), (_, &d)| (s + d, n + 1));
    Ok(sum / n as f64)
}

fn max_distance(from: &BoundaryMask, to: &BoundaryMask) -> Result<f64> {
    let dt = dt_from_mask(to)?;
    Ok(from
        .grid
        .data()
        .iter()
        .zip(dt.grid.data())
        .filter(|(&b, _)| b)
        .fold(0.0, |m: f64, (_, &d)| m.max(d)))
}

/// `asd_P`, `asd_R` and their mean. Empty masks are an error, never zero.
pub fn surface_distances(pred: &BoundaryMask, gt: &BoundaryMask) -> Result<SurfaceDistances> {
    check(pred, gt)?;
    let asd_p = mean_distance(pred, gt)?;
    let asd_r = mean_distance(gt, pred)?;
    Ok(SurfaceDistances {
        asd_p,
        asd_r,
        assd: 0.5 * (asd_p + asd_r),
    })
}

/// Largest distance from a pixel of `from` to the nearest pixel of `to`.
pub fn directed_hausdorff(from: &BoundaryMask, to: &BoundaryMask) -> Result<f64> {
    check(from, to)?;
    max_distance(from, to)
}

pub fn hausdorff(a: &BoundaryMask, b: &BoundaryMask) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_masks() {
        let m = BoundaryMask::from_fn(10, 10, |x, y| x == y);
        let s = surface_distances(&m, &m).unwrap();
        assert_eq!((s.asd_p, s.asd_r, s.assd), (0.0, 0.0, 0.0));
    }

    #[test]
    fn uniform_shift() {
        let gt = BoundaryMask::from_fn(12, 10, |x, _| x == 4);
        let pred = BoundaryMask::from_fn(12, 10, |x, _| x == 6);
        let s = surface_distances(&pred, &gt).unwrap();
        assert_eq!((s.asd_p, s.asd_r, s.assd), (2.0, 2.0, 2.0));
    }

    #[test]
    fn isolated_false_detection() {
        let gt = BoundaryMask::from_fn(20, 100, |x, _| x == 2);
        let mut pred = gt.clone();
        pred.set(12, 50, true);
        let s = surface_distances(&pred, &gt).unwrap();
        assert_eq!(s.asd_r, 0.0);
        assert!((s.asd_p - 10.0 / 101.0).abs() < 1e-12);
    }

    #[test]
    fn empty_is_an_error() {
        let gt = BoundaryMask::from_fn(5, 5, |x, _| x == 2);
        let empty = BoundaryMask::empty(5, 5);
        assert!(matches!(
            surface_distances(&empty, &gt),
            Err(VtError::EmptyMask { which: "prediction" })
        ));
        assert!(matches!(
            surface_distances(&gt, &empty),
            Err(VtError::EmptyMask { which: "ground-truth" })
        ));
    }

    #[test]
    fn hausdorff_of_shift() {
        let a = BoundaryMask::from_fn(12, 10, |x, _| x == 4);
        let b = BoundaryMask::from_fn(12, 10, |x, y| x == 7 || (x == 5 && y == 0));
        assert_eq!(directed_hausdorff(&a, &b).unwrap(), 3.0);
        assert_eq!(hausdorff(&a, &b).unwrap(), 3.0);
    }
}
