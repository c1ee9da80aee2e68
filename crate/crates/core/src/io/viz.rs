//! False-colour renderings of fields, divergence and boundary strength.

use image::{GrayImage, Luma, Rgb, RgbImage};

use crate::grid::{PixelGrid, VectorField};

/// HSV to RGB with `h` in degrees.
pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h = h.rem_euclid(360.0) / 60.0;
    let c = v * s;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [r, g, b].map(|u| ((u + m) * 255.0).round().clamp(0.0, 255.0) as u8)
}

/// Hue of a vector in degrees, `[0, 360)`.
pub fn hue_of(v: [f64; 2]) -> f64 {
    v[1].atan2(v[0]).to_degrees().rem_euclid(360.0)
}

/// Colour wheel: hue from the angle, full saturation, value from the norm
/// (capped at 1). With `quiver_stride = Some(s)`, black arrows of length
/// `0.4 s` are drawn from every `s`-th pixel.
pub fn field_to_rgb(field: &VectorField, quiver_stride: Option<usize>) -> RgbImage {
    let (w, h) = field.dims();
    let mut img = RgbImage::from_fn(w as u32, h as u32, |x, y| {
        let v = field.at(x as usize, y as usize);
        Rgb(hsv_to_rgb(hue_of(v), 1.0, v[0].hypot(v[1]).min(1.0)))
    });
    if let Some(stride) = quiver_stride.filter(|&s| s > 0) {
        let len = 0.4 * stride as f64;
        for y in (stride / 2..h).step_by(stride) {
            for x in (stride / 2..w).step_by(stride) {
                let v = field.at(x, y);
                let steps = (len * 2.0).ceil() as usize;
                for k in 0..=steps {
                    let t = len * k as f64 / steps as f64;
                    let px = (x as f64 + v[0] * t).round();
                    let py = (y as f64 + v[1] * t).round();
                    if px >= 0.0 && py >= 0.0 && (px as usize) < w && (py as usize) < h {
                        img.put_pixel(px as u32, py as u32, Rgb([0, 0, 0]));
                    }
                }
            }
        }
    }
    img
}

/// Blue (negative) through white (zero) to red (positive). `scale` is the
/// magnitude mapped to full colour; by default the largest `|value|`.
pub fn diverging_to_rgb(grid: &PixelGrid<f64>, scale: Option<f64>) -> RgbImage {
    let scale = scale
        .unwrap_or_else(|| grid.data().iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .max(f64::MIN_POSITIVE);
    let (w, h) = grid.dims();
    RgbImage::from_fn(w as u32, h as u32, |x, y| {
        let t = (grid[(x as usize, y as usize)] / scale).clamp(-1.0, 1.0);
        let fade = |a: f64| (255.0 * (1.0 - a)).round() as u8;
        Rgb(if t >= 0.0 {
            [255, fade(t), fade(t)]
        } else {
            [fade(-t), fade(-t), 255]
        })
    })
}

/// Strength clamped to `[0, 1]` as 8-bit grey.
pub fn strength_to_gray(grid: &PixelGrid<f64>) -> GrayImage {
    let (w, h) = grid.dims();
    GrayImage::from_fn(w as u32, h as u32, |x, y| {
        Luma([(grid[(x as usize, y as usize)].clamp(0.0, 1.0) * 255.0).round() as u8])
    })
}
