//! Field to boundary: support image, divergence, ReLU extraction, collapse.
//!
//! The field is copied onto the even-even pixels of a raster at twice the
//! resolution. Odd support positions sit between original pixels, and only
//! there can the divergence be non-zero, so boundaries come out on the
//! inter-pixel lattice. A boundary between two opposed unit vectors yields a
//! divergence of `-2`; `ReLU(-(div + 1))` keeps anything below `-1`.

use crate::error::{Result, VtError};
use crate::grid::{BoundaryMask, PixelGrid, VectorField};
use crate::kernel::{self, DERIVATIVE_SCALE, SUPPORT_DIVERGENCE_SCALE};
use crate::par;

/// Which lattice a raster lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// `2W x 2H` support lattice.
    Support,
    /// `W x H` source lattice.
    Original,
}

/// A vector field at support resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportField {
    pub field: VectorField,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceImage {
    pub grid: PixelGrid<f64>,
    pub resolution: Resolution,
}

/// Non-negative boundary strength.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryImage {
    pub strength: PixelGrid<f64>,
    pub resolution: Resolution,
}

impl BoundaryImage {
    pub fn original(strength: PixelGrid<f64>) -> Self {
        Self {
            strength,
            resolution: Resolution::Original,
        }
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.strength.dims()
    }
}

/// Copies the field onto the even-even pixels of a `2W x 2H` raster.
pub fn upsample_support(field: &VectorField) -> SupportField {
    let (w, h) = field.dims();
    let f = VectorField::from_fn(2 * w, 2 * h, |x, y| {
        if x % 2 == 0 && y % 2 == 0 {
            field.at(x / 2, y / 2)
        } else {
            [0.0, 0.0]
        }
    });
    SupportField { field: f }
}

/// Calibrated Sobel divergence of a support field.
pub fn divergence(support: &SupportField) -> DivergenceImage {
    let f = &support.field;
    DivergenceImage {
        grid: kernel::sobel_divergence(&f.vx, &f.vy, SUPPORT_DIVERGENCE_SCALE),
        resolution: Resolution::Support,
    }
}

/// Sobel divergence on the source lattice, in units of 1/pixel.
///
/// A flip between two adjacent unit vectors spreads `-2` over the two
/// pixels, `-1` each.
pub fn divergence_original(field: &VectorField) -> DivergenceImage {
    DivergenceImage {
        grid: kernel::sobel_divergence(&field.vx, &field.vy, DERIVATIVE_SCALE),
        resolution: Resolution::Original,
    }
}

/// `ReLU(-(div + 1))`.
pub fn extract_boundary(div: &DivergenceImage) -> BoundaryImage {
    BoundaryImage {
        strength: div.grid.map(|&d| (-(d + 1.0)).max(0.0)),
        resolution: div.resolution,
    }
}

/// Moves support-lattice responses onto the source lattice.
///
/// Every non-zero support pixel with at least one odd coordinate hands its
/// value to its adjacent even-even (source) pixels; a source pixel receiving
/// several values takes their mean. Even-even responses are ignored: they
/// are structurally zero for the 3x3 stencil on a zero-filled support image
/// and carry no inter-pixel information otherwise.
pub fn collapse_to_original(b: &BoundaryImage) -> Result<BoundaryImage> {
    if b.resolution != Resolution::Support {
        return Err(VtError::InvalidParameter(
            "collapse expects a support-resolution image".into(),
        ));
    }
    let (sw, sh) = b.dims();
    if sw % 2 != 0 || sh % 2 != 0 {
        return Err(VtError::InvalidParameter(format!(
            "support image must have even dimensions, got {sw}x{sh}"
        )));
    }
    let (w, h) = (sw / 2, sh / 2);
    let src = b.strength.data();
    let data = par::fill_rows(w, h, |y, row| {
        for (x, out) in row.iter_mut().enumerate() {
            let (mut sum, mut n) = (0.0, 0u32);
            for dy in -1isize..=1 {
                for dx in -1isize..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let sx = 2 * x as isize + dx;
                    let sy = 2 * y as isize + dy;
                    if sx < 0 || sy < 0 || sx >= sw as isize || sy >= sh as isize {
                        continue;
                    }
                    let v = src[sy as usize * sw + sx as usize];
                    if v > 0.0 {
                        sum += v;
                        n += 1;
                    }
                }
            }
            *out = if n > 0 { sum / n as f64 } else { 0.0 };
        }
    });
    Ok(BoundaryImage::original(PixelGrid::new(w, h, data)?))
}

/// `strength > 0`; equivalently divergence below `-1`. There is no tunable
/// threshold.
pub fn binarize(b: &BoundaryImage) -> BoundaryMask {
    BoundaryMask::new(b.strength.map(|&s| s > 0.0))
}

/// Every stage of the inverse transform.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub support_divergence: DivergenceImage,
    pub support_boundary: BoundaryImage,
    pub boundary: BoundaryImage,
    pub mask: BoundaryMask,
}

/// Runs upsample, divergence, extraction, collapse and binarisation.
pub fn invert_field(field: &VectorField) -> Inversion {
    let support_divergence = divergence(&upsample_support(field));
    let support_boundary = extract_boundary(&support_divergence);
    let boundary = collapse_to_original(&support_boundary).expect("support image has even size");
    let mask = binarize(&boundary);
    Inversion {
        support_divergence,
        support_boundary,
        boundary,
        mask,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_planes(w: usize, h: usize, split: usize) -> VectorField {
        VectorField::from_fn(w, h, |x, _| if x < split { [1.0, 0.0] } else { [-1.0, 0.0] })
    }

    #[test]
    fn support_of_single_pixel() {
        let s = upsample_support(&VectorField::constant(1, 1, [1.0, 0.0]));
        assert_eq!(s.field.dims(), (2, 2));
        assert_eq!(s.field.at(0, 0), [1.0, 0.0]);
        for (x, y) in [(1, 0), (0, 1), (1, 1)] {
            assert_eq!(s.field.at(x, y), [0.0, 0.0]);
        }
    }

    #[test]
    fn support_nonzero_positions() {
        let f = VectorField::from_fn(2, 2, |x, y| [1.0 + x as f64, 1.0 + y as f64]);
        let s = upsample_support(&f);
        let mut nonzero = vec![];
        for y in 0..4 {
            for x in 0..4 {
                if s.field.at(x, y) != [0.0, 0.0] {
                    nonzero.push((x, y));
                }
            }
        }
        assert_eq!(nonzero, vec![(0, 0), (2, 0), (0, 2), (2, 2)]);
    }

    #[test]
    fn constant_field_has_no_divergence() {
        let d = divergence(&upsample_support(&VectorField::constant(8, 8, [1.0, 0.0])));
        assert!(d.grid.data().iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn ideal_boundary_chain() {
        let inv = invert_field(&half_planes(8, 8, 4));
        let d = &inv.support_divergence.grid;
        for sy in 0..16 {
            for sx in 0..16 {
                let expected = if sx == 7 { -2.0 } else { 0.0 };
                assert!((d[(sx, sy)] - expected).abs() < 1e-12, "({sx},{sy}) {}", d[(sx, sy)]);
                let b = inv.support_boundary.strength[(sx, sy)];
                assert_eq!(b, if sx == 7 { 1.0 } else { 0.0 });
            }
        }
        for y in 0..8 {
            for x in 0..8 {
                let on = x == 3 || x == 4;
                assert_eq!(inv.boundary.strength[(x, y)], if on { 1.0 } else { 0.0 });
                assert_eq!(inv.mask.is_boundary(x, y), on);
            }
        }
    }

    #[test]
    fn extraction_arithmetic() {
        let div = DivergenceImage {
            grid: PixelGrid::new(3, 1, vec![-2.0, 0.0, -3.0]).unwrap(),
            resolution: Resolution::Support,
        };
        let b = extract_boundary(&div);
        assert_eq!(b.strength.data(), &[1.0, 0.0, 2.0]);
    }

    #[test]
    fn collapse_single_odd_pixel() {
        let mut s = PixelGrid::filled(4, 2, 0.0);
        s[(1, 0)] = 1.0;
        let b = collapse_to_original(&BoundaryImage {
            strength: s,
            resolution: Resolution::Support,
        })
        .unwrap();
        assert_eq!(b.dims(), (2, 1));
        assert_eq!(b.strength.data(), &[1.0, 1.0]);
    }

    #[test]
    fn collapse_averages() {
        let mut s = PixelGrid::filled(4, 4, 0.0);
        s[(1, 0)] = 1.0;
        s[(1, 1)] = 0.5;
        let b = collapse_to_original(&BoundaryImage {
            strength: s,
            resolution: Resolution::Support,
        })
        .unwrap();
        assert_eq!(b.strength[(0, 0)], 0.75);
        assert_eq!(b.strength[(0, 1)], 0.5);
        assert_eq!(b.strength[(1, 1)], 0.5);
    }

    #[test]
    fn collapse_rejects_original() {
        let b = BoundaryImage::original(PixelGrid::filled(2, 2, 0.0));
        assert!(collapse_to_original(&b).is_err());
    }

    #[test]
    fn binarize_is_strict() {
        let b = BoundaryImage::original(PixelGrid::new(3, 1, vec![0.0, 0.9, 1.1]).unwrap());
        assert_eq!(binarize(&b).grid.data(), &[false, true, true]);
        let z = BoundaryImage::original(PixelGrid::filled(3, 3, 0.0));
        assert!(binarize(&z).is_blank());
    }

    #[test]
    fn original_divergence_of_flip() {
        let d = divergence_original(&half_planes(8, 4, 4));
        for y in 0..4 {
            assert_eq!(d.grid[(3, y)], -1.0);
            assert_eq!(d.grid[(4, y)], -1.0);
            assert_eq!(d.grid[(1, y)], 0.0);
        }
    }
}
