//! Raster and field files.
//!
//! Masks and label maps are read from binary PGM (P5) or grayscale PNG,
//! chosen by content; writers choose by extension (`.pgm` or `.png`).
//! Non-zero samples are boundary pixels. Vector fields, angle grids and
//! float rasters use the [`field_file`] format.

pub mod field_file;
pub mod pgm;
pub mod viz;

use std::fs;
use std::path::Path;

use image::{DynamicImage, ImageBuffer, ImageFormat, Luma};

use crate::error::{Result, VtError};
use crate::grid::{BoundaryMask, LabelMask, PixelGrid, VectorField};
use crate::inverse::BoundaryImage;

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

/// Samples of a grayscale raster together with their full-scale value.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayRaster {
    pub grid: PixelGrid<u16>,
    pub maxval: u16,
}

pub fn decode_gray(bytes: &[u8]) -> Result<GrayRaster> {
    if bytes.starts_with(b"P5") {
        let p = pgm::decode(bytes)?;
        return Ok(GrayRaster {
            grid: PixelGrid::new(p.width, p.height, p.samples)?,
            maxval: p.maxval,
        });
    }
    if bytes.starts_with(PNG_SIGNATURE) {
        let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)?;
        let (w, h) = (img.width() as usize, img.height() as usize);
        return match img {
            DynamicImage::ImageLuma8(b) => Ok(GrayRaster {
                grid: PixelGrid::new(w, h, b.into_raw().into_iter().map(u16::from).collect())?,
                maxval: 255,
            }),
            DynamicImage::ImageLuma16(b) => Ok(GrayRaster {
                grid: PixelGrid::new(w, h, b.into_raw())?,
                maxval: 65535,
            }),
            other => Err(VtError::UnsupportedImage(format!(
                "PNG colour type {:?}, expected grayscale",
                other.color()
            ))),
        };
    }
    Err(VtError::UnsupportedImage("neither PGM (P5) nor PNG".into()))
}

pub fn read_gray(path: impl AsRef<Path>) -> Result<GrayRaster> {
    decode_gray(&fs::read(path)?)
}

enum Kind {
    Pgm,
    Png,
}

fn kind_of(path: &Path) -> Result<Kind> {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("pgm") => Ok(Kind::Pgm),
        Some("png") => Ok(Kind::Png),
        _ => Err(VtError::UnsupportedImage(format!(
            "cannot infer raster format of {}",
            path.display()
        ))),
    }
}

/// Writes 8-bit samples when every value fits, 16-bit otherwise.
pub fn write_gray(path: impl AsRef<Path>, grid: &PixelGrid<u16>, sixteen_bit: bool) -> Result<()> {
    let path = path.as_ref();
    let (w, h) = grid.dims();
    match kind_of(path)? {
        Kind::Pgm => {
            let maxval = if sixteen_bit { 65535 } else { 255 };
            let bytes = pgm::encode(&pgm::Pgm {
                width: w,
                height: h,
                maxval,
                samples: grid.data().to_vec(),
            });
            fs::write(path, bytes)?;
        }
        Kind::Png => {
            if sixteen_bit {
                let buf: ImageBuffer<Luma<u16>, Vec<u16>> =
                    ImageBuffer::from_raw(w as u32, h as u32, grid.data().to_vec()).expect("sized");
                buf.save_with_format(path, ImageFormat::Png)?;
            } else {
                let data = grid.data().iter().map(|&v| v as u8).collect();
                let buf: ImageBuffer<Luma<u8>, Vec<u8>> =
                    ImageBuffer::from_raw(w as u32, h as u32, data).expect("sized");
                buf.save_with_format(path, ImageFormat::Png)?;
            }
        }
    }
    Ok(())
}

pub fn read_mask(path: impl AsRef<Path>) -> Result<BoundaryMask> {
    let g = read_gray(path)?;
    Ok(BoundaryMask::new(g.grid.map(|&v| v != 0)))
}

/// Boundary pixels as 255, background as 0, 8-bit.
pub fn write_mask(path: impl AsRef<Path>, mask: &BoundaryMask) -> Result<()> {
    write_gray(path, &mask.grid.map(|&b| if b { 255 } else { 0 }), false)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelMask> {
    let g = read_gray(path)?;
    Ok(LabelMask::new(g.grid.map(|&v| u32::from(v))))
}

/// Label maps are always written with 16-bit samples.
pub fn write_labels(path: impl AsRef<Path>, labels: &PixelGrid<u32>) -> Result<()> {
    if let Some(&l) = labels.data().iter().find(|&&l| l > u32::from(u16::MAX)) {
        return Err(VtError::InvalidParameter(format!(
            "label {l} does not fit in 16 bits"
        )));
    }
    write_gray(path, &labels.map(|&l| l as u16), true)
}

pub fn read_field(path: impl AsRef<Path>) -> Result<VectorField> {
    field_file::decode(&fs::read(path)?)?.into_field()
}

pub fn write_field(path: impl AsRef<Path>, field: &VectorField) -> Result<()> {
    fs::write(path, field_file::encode(&[&field.vx, &field.vy])?)?;
    Ok(())
}

pub fn read_scalar(path: impl AsRef<Path>) -> Result<PixelGrid<f64>> {
    field_file::decode(&fs::read(path)?)?.into_scalar()
}

pub fn write_scalar(path: impl AsRef<Path>, grid: &PixelGrid<f64>) -> Result<()> {
    fs::write(path, field_file::encode(&[grid])?)?;
    Ok(())
}

/// Boundary strength from a one-channel field file (values as stored) or a
/// grayscale raster (scaled by its full-scale value into `[0, 1]`).
pub fn read_strength(path: impl AsRef<Path>) -> Result<BoundaryImage> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(&field_file::MAGIC) {
        let grid = field_file::decode(&bytes)?.into_scalar()?;
        return Ok(BoundaryImage::original(grid));
    }
    let g = decode_gray(&bytes)?;
    let max = f64::from(g.maxval);
    Ok(BoundaryImage::original(g.grid.map(|&v| f64::from(v) / max)))
}
