use thiserror::Error;

pub type Result<T, E = VtError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum VtError {
    #[error("grid must be at least 1x1, got {width}x{height}")]
    EmptyGrid { width: usize, height: usize },

    #[error("data length {len} does not match a {width}x{height} grid")]
    DataLength {
        width: usize,
        height: usize,
        len: usize,
    },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("boundary mask contains no boundary pixel")]
    EmptyBoundary,

    #[error("boundary pixel ({x}, {y}) has no non-boundary neighbour")]
    NoNonBoundaryNeighbor { x: usize, y: usize },

    #[error("label map holds a single label, no boundary is induced")]
    SingleLabel,

    #[error("{which} mask is empty, surface distance is undefined")]
    EmptyMask { which: &'static str },

    #[error("got {preds} predictions but {gts} ground truths")]
    LengthMismatch { preds: usize, gts: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no pixel exceeds the source threshold {threshold}")]
    NoSource { threshold: f64 },

    #[error("angle grids share no defined pixel")]
    EmptyIntersection,

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("image dimensions {width}x{height} overflow the supported size")]
    DimensionOverflow { width: u64, height: u64 },

    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("non-finite value at sample {index}")]
    NonFinite { index: usize },

    #[error("vector at ({x}, {y}) has norm {norm}, expected 1")]
    NotUnitNorm { x: usize, y: usize, norm: f64 },

    #[error("unsupported image: {0}")]
    UnsupportedImage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl VtError {
    /// True for errors raised while reading, decoding or writing files.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            VtError::Io(_)
                | VtError::Image(_)
                | VtError::MalformedHeader(_)
                | VtError::DimensionOverflow { .. }
                | VtError::BadMagic(_)
                | VtError::Truncated { .. }
                | VtError::UnsupportedImage(_)
        )
    }
}
