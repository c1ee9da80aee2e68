//! Binary morphology and connected components.

use crate::grid::{BoundaryMask, PixelGrid};

/// One pass of dilation with a 3x3 square structuring element.
pub fn dilate(mask: &BoundaryMask) -> BoundaryMask {
    let (w, h) = mask.dims();
    BoundaryMask::from_fn(w, h, |x, y| {
        let x0 = x.saturating_sub(1);
        let y0 = y.saturating_sub(1);
        let x1 = (x + 1).min(w - 1);
        let y1 = (y + 1).min(h - 1);
        (y0..=y1).any(|yy| (x0..=x1).any(|xx| mask.is_boundary(xx, yy)))
    })
}

/// 8-connected components of the `true` pixels, numbered from 0 in raster
/// order of their first pixel. Returns the label grid (`None` off-mask) and
/// the member pixels of every component.
#[allow(clippy::type_complexity)]
pub fn connected_components(
    mask: &BoundaryMask,
) -> (PixelGrid<Option<u32>>, Vec<Vec<(usize, usize)>>) {
    let (w, h) = mask.dims();
    let mut labels: PixelGrid<Option<u32>> = PixelGrid::filled(w, h, None);
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut stack = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if !mask.is_boundary(x, y) || labels[(x, y)].is_some() {
                continue;
            }
            let id = members.len() as u32;
            let mut pixels = Vec::new();
            labels[(x, y)] = Some(id);
            stack.push((x, y));
            while let Some((cx, cy)) = stack.pop() {
                pixels.push((cx, cy));
                for dy in -1isize..=1 {
                    for dx in -1isize..=1 {
                        let nx = cx as isize + dx;
                        let ny = cy as isize + dy;
                        if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if mask.is_boundary(nx, ny) && labels[(nx, ny)].is_none() {
                            labels[(nx, ny)] = Some(id);
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            pixels.sort_unstable_by_key(|&(px, py)| (py, px));
            members.push(pixels);
        }
    }
    (labels, members)
}
