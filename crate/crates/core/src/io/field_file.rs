//! `VTF1` raster file: a 16-byte header followed by float planes.
//!
//! | offset | size | content                          |
//! |--------|------|----------------------------------|
//! | 0      | 4    | ASCII `VTF1`                     |
//! | 4      | 4    | channel count, u32 LE            |
//! | 8      | 4    | width, u32 LE                    |
//! | 12     | 4    | height, u32 LE                   |
//! | 16     | ...  | planes of f32 LE, row-major      |
//!
//! Fields store `vx` then `vy`; angle grids and boundary strengths use a
//! single plane. Pixel centres sit at integer coordinates, x to the right,
//! y downward.

use crate::error::{Result, VtError};
use crate::grid::{PixelGrid, VectorField};
use crate::io::pgm::MAX_PIXELS;

pub const MAGIC: [u8; 4] = *b"VTF1";
const HEADER_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldFile {
    pub width: usize,
    pub height: usize,
    pub planes: Vec<PixelGrid<f64>>,
}

pub fn encode(planes: &[&PixelGrid<f64>]) -> Result<Vec<u8>> {
    let first = planes
        .first()
        .ok_or_else(|| VtError::InvalidParameter("at least one plane is required".into()))?;
    for p in planes {
        first.same_dims(p)?;
    }
    let (w, h) = first.dims();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * w * h * planes.len());
    out.extend_from_slice(&MAGIC);
    for v in [planes.len(), w, h] {
        let v = u32::try_from(v).map_err(|_| VtError::DimensionOverflow {
            width: w as u64,
            height: h as u64,
        })?;
        out.extend_from_slice(&v.to_le_bytes());
    }
    for p in planes {
        out.extend(p.data().iter().flat_map(|&v| (v as f32).to_le_bytes()));
    }
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<FieldFile> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            return Err(VtError::BadMagic(bytes[..4].try_into().expect("4 bytes")));
        }
        return Err(VtError::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let magic: [u8; 4] = bytes[..4].try_into().expect("4 bytes");
    if magic != MAGIC {
        return Err(VtError::BadMagic(magic));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 * i..4 * i + 4].try_into().expect("4 bytes"));
    let (channels, width, height) = (word(1) as u64, word(2) as u64, word(3) as u64);
    if channels == 0 || width == 0 || height == 0 {
        return Err(VtError::MalformedHeader(format!(
            "{channels} channel(s) of {width}x{height}"
        )));
    }
    if width * height > MAX_PIXELS || channels > 16 {
        return Err(VtError::DimensionOverflow { width, height });
    }
    let (w, h, c) = (width as usize, height as usize, channels as usize);
    let expected = HEADER_LEN + 4 * w * h * c;
    if bytes.len() < expected {
        return Err(VtError::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(VtError::MalformedHeader(format!(
            "{} trailing bytes after payload",
            bytes.len() - expected
        )));
    }
    let values: Vec<f32> = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(VtError::NonFinite { index });
    }
    let planes = values
        .chunks_exact(w * h)
        .map(|p| PixelGrid::new(w, h, p.iter().map(|&v| f64::from(v)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldFile {
        width: w,
        height: h,
        planes,
    })
}

impl FieldFile {
    /// Two-plane file as a field; components must lie in `[-1, 1]`.
    pub fn into_field(self) -> Result<VectorField> {
        if self.planes.len() != 2 {
            return Err(VtError::InvalidParameter(format!(
                "a vector field needs 2 channels, file has {}",
                self.planes.len()
            )));
        }
        let mut planes = self.planes.into_iter();
        let vx = planes.next().expect("two planes");
        let vy = planes.next().expect("two planes");
        if let Some(i) = vx.data().iter().chain(vy.data()).position(|v| v.abs() > 1.0) {
            return Err(VtError::InvalidParameter(format!(
                "component {i} outside [-1, 1]"
            )));
        }
        VectorField::new(vx, vy)
    }

    /// Single-plane file as a scalar raster.
    pub fn into_scalar(self) -> Result<PixelGrid<f64>> {
        if self.planes.len() != 1 {
            return Err(VtError::InvalidParameter(format!(
                "expected 1 channel, file has {}",
                self.planes.len()
            )));
        }
        Ok(self.planes.into_iter().next().expect("one plane"))
    }
}
