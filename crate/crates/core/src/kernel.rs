//! 3x3 Sobel stencils with reflect-101 borders.

use crate::grid::PixelGrid;
use crate::par;

/// Integer Sobel kernel for `d/dx`, indexed `[row][col]`.
pub const SOBEL_X: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];

/// Integer Sobel kernel for `d/dy` (y grows downward).
pub const SOBEL_Y: [[f64; 3]; 3] = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];

/// Scale turning the integer kernel into a per-pixel derivative on a dense
/// raster.
pub const DERIVATIVE_SCALE: f64 = 1.0 / 8.0;

/// Scale applied to the integer kernel on the zero-filled support image.
///
/// Fixed so that two opposed unit vectors on adjacent source pixels give a
/// divergence of exactly `-2` on the support pixels between them. The
/// integer stencil returns `-4` there (see `tests::support_calibration`).
pub const SUPPORT_DIVERGENCE_SCALE: f64 = 0.5;

/// Mirror index without repeating the edge sample (`-1 -> 1`, `n -> n-2`).
#[inline]
pub fn reflect101(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m >= n as isize {
        (period - m) as usize
    } else {
        m as usize
    }
}

/// Correlates `grid` with a 3x3 kernel.
pub fn correlate3(grid: &PixelGrid<f64>, kernel: &[[f64; 3]; 3], scale: f64) -> PixelGrid<f64> {
    let (w, h) = grid.dims();
    let src = grid.data();
    let data = par::fill_rows(w, h, |y, row| {
        let rows = [
            reflect101(y as isize - 1, h),
            y,
            reflect101(y as isize + 1, h),
        ];
        for (x, out) in row.iter_mut().enumerate() {
            let cols = [
                reflect101(x as isize - 1, w),
                x,
                reflect101(x as isize + 1, w),
            ];
            let mut acc = 0.0;
            for (kr, &r) in rows.iter().enumerate() {
                for (kc, &c) in cols.iter().enumerate() {
                    acc += kernel[kr][kc] * src[r * w + c];
                }
            }
            *out = scale * acc;
        }
    });
    PixelGrid::new(w, h, data).expect("same shape as input")
}

/// `scale * (Sx * vx + Sy * vy)` in a single sweep.
pub fn sobel_divergence(vx: &PixelGrid<f64>, vy: &PixelGrid<f64>, scale: f64) -> PixelGrid<f64> {
    let (w, h) = vx.dims();
    let (ax, ay) = (vx.data(), vy.data());
    let data = par::fill_rows(w, h, |y, row| {
        let rows = [
            reflect101(y as isize - 1, h),
            y,
            reflect101(y as isize + 1, h),
        ];
        for (x, out) in row.iter_mut().enumerate() {
            let cols = [
                reflect101(x as isize - 1, w),
                x,
                reflect101(x as isize + 1, w),
            ];
            let mut acc = 0.0;
            for kr in 0..3 {
                for kc in 0..3 {
                    let i = rows[kr] * w + cols[kc];
                    acc += SOBEL_X[kr][kc] * ax[i] + SOBEL_Y[kr][kc] * ay[i];
                }
            }
            *out = scale * acc;
        }
    });
    PixelGrid::new(w, h, data).expect("same shape as input")
}
