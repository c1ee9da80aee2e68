//! Binary PGM (P5) codec, 8- and 16-bit.

use crate::error::{Result, VtError};

/// Largest accepted pixel count.
pub const MAX_PIXELS: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    /// Row-major samples.
    pub samples: Vec<u16>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(VtError::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| VtError::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Pgm> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(VtError::MalformedHeader("expected P5 magic".into()));
    }
    let mut c = Cursor { bytes, pos: 2 };
    if !c.bytes.get(2).is_some_and(u8::is_ascii_whitespace) {
        return Err(VtError::MalformedHeader("no whitespace after magic".into()));
    }
    let width = c.number("width")?;
    let height = c.number("height")?;
    let maxval = c.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(VtError::MalformedHeader(format!("zero dimension {width}x{height}")));
    }
    if width.checked_mul(height).is_none_or(|n| n > MAX_PIXELS) {
        return Err(VtError::DimensionOverflow { width, height });
    }
    if maxval == 0 || maxval > 65535 {
        return Err(VtError::MalformedHeader(format!("maxval {maxval} not in 1..=65535")));
    }
    if !c.bytes.get(c.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(VtError::MalformedHeader("no whitespace after maxval".into()));
    }
    let payload = &bytes[c.pos + 1..];
    let n = (width * height) as usize;
    let wide = maxval > 255;
    let expected = if wide { 2 * n } else { n };
    if payload.len() != expected {
        return Err(VtError::MalformedHeader(format!(
            "header declares {expected} payload bytes, found {}",
            payload.len()
        )));
    }
    let samples: Vec<u16> = if wide {
        payload.chunks_exact(2).map(|b| u16::from_be_bytes([b[0], b[1]])).collect()
    } else {
        payload.iter().map(|&b| u16::from(b)).collect()
    };
    if let Some(i) = samples.iter().position(|&s| u64::from(s) > maxval) {
        return Err(VtError::MalformedHeader(format!("sample {i} exceeds maxval {maxval}")));
    }
    Ok(Pgm {
        width: width as usize,
        height: height as usize,
        maxval: maxval as u16,
        samples,
    })
}

pub fn encode(pgm: &Pgm) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", pgm.width, pgm.height, pgm.maxval).into_bytes();
    if pgm.maxval > 255 {
        out.extend(pgm.samples.iter().flat_map(|s| s.to_be_bytes()));
    } else {
        out.extend(pgm.samples.iter().map(|&s| s as u8));
    }
    out
}
