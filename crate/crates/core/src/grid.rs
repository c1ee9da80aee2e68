//! Raster containers shared by every stage of the pipeline.
//!
//! Pixel centres sit at integer coordinates, `x` grows to the right and `y`
//! grows downward. Storage is row-major.

use std::ops::{Index, IndexMut};

use crate::error::{Result, VtError};

/// A row-major `width x height` raster.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelGrid<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T> PixelGrid<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(VtError::EmptyGrid { width, height });
        }
        if data.len() != width * height {
            return Err(VtError::DataLength {
                width,
                height,
                len: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds a grid by evaluating `f(x, y)` at every pixel.
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(width > 0 && height > 0, "grid must be at least 1x1");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn index_of(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.width && y < self.height);
        y * self.width + x
    }

    #[inline]
    pub fn coords_of(&self, index: usize) -> (usize, usize) {
        (index % self.width, index / self.width)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<&T> {
        (x < self.width && y < self.height).then(|| &self.data[y * self.width + x])
    }

    /// Signed lookup, `None` outside the raster.
    #[inline]
    pub fn get_signed(&self, x: isize, y: isize) -> Option<&T> {
        if x < 0 || y < 0 {
            return None;
        }
        self.get(x as usize, y as usize)
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> PixelGrid<U> {
        PixelGrid {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn same_dims<U>(&self, other: &PixelGrid<U>) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(VtError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }
}

impl<T: Clone> PixelGrid<T> {
    /// Panics if either dimension is zero.
    pub fn filled(width: usize, height: usize, value: T) -> Self {
        assert!(width > 0 && height > 0, "grid must be at least 1x1");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }
}

impl<T> Index<(usize, usize)> for PixelGrid<T> {
    type Output = T;

    #[inline]
    fn index(&self, (x, y): (usize, usize)) -> &T {
        &self.data[y * self.width + x]
    }
}

impl<T> IndexMut<(usize, usize)> for PixelGrid<T> {
    #[inline]
    fn index_mut(&mut self, (x, y): (usize, usize)) -> &mut T {
        &mut self.data[y * self.width + x]
    }
}

/// Binary boundary raster, `true` marks a boundary pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMask {
    pub grid: PixelGrid<bool>,
}

impl BoundaryMask {
    pub fn new(grid: PixelGrid<bool>) -> Self {
        Self { grid }
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self::new(PixelGrid::filled(width, height, false))
    }

    pub fn from_fn(width: usize, height: usize, f: impl FnMut(usize, usize) -> bool) -> Self {
        Self::new(PixelGrid::from_fn(width, height, f))
    }

    /// Parses rows of `#`/`1` (boundary) and `.`/`0` (background).
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(width * height);
        for row in rows {
            if row.len() != width {
                return Err(VtError::InvalidParameter(
                    "ragged ascii mask".to_string(),
                ));
            }
            data.extend(row.bytes().map(|b| b == b'#' || b == b'1'));
        }
        Ok(Self::new(PixelGrid::new(width, height, data)?))
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.grid.width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.grid.height()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.grid.dims()
    }

    #[inline]
    pub fn is_boundary(&self, x: usize, y: usize) -> bool {
        self.grid[(x, y)]
    }

    pub fn count(&self) -> usize {
        self.grid.data().iter().filter(|&&b| b).count()
    }

    pub fn is_blank(&self) -> bool {
        !self.grid.data().iter().any(|&b| b)
    }

    /// Coordinates of the boundary pixels in raster order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.grid
            .data()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.grid.coords_of(i))
            .collect()
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.grid[(x, y)] = value;
    }

    pub fn is_subset_of(&self, other: &BoundaryMask) -> bool {
        self.dims() == other.dims()
            && self
                .grid
                .data()
                .iter()
                .zip(other.grid.data())
                .all(|(&a, &b)| !a || b)
    }
}

/// Non-negative class or instance identifiers per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMask {
    pub grid: PixelGrid<u32>,
}

impl LabelMask {
    pub fn new(grid: PixelGrid<u32>) -> Self {
        Self { grid }
    }

    pub fn from_fn(width: usize, height: usize, f: impl FnMut(usize, usize) -> u32) -> Self {
        Self::new(PixelGrid::from_fn(width, height, f))
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.grid.dims()
    }

    /// Sorted distinct labels.
    pub fn distinct_labels(&self) -> Vec<u32> {
        let mut labels = self.grid.data().to_vec();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Pixels with at least one 4-neighbour of a different label.
    ///
    /// Both sides of every inter-class edge are marked, giving a 2-px band.
    pub fn induced_boundary(&self) -> BoundaryMask {
        let g = &self.grid;
        let (w, h) = g.dims();
        BoundaryMask::from_fn(w, h, |x, y| {
            let l = g[(x, y)];
            (x > 0 && g[(x - 1, y)] != l)
                || (y > 0 && g[(x, y - 1)] != l)
                || (x + 1 < w && g[(x + 1, y)] != l)
                || (y + 1 < h && g[(x, y + 1)] != l)
        })
    }

    /// Boolean mask of the pixels carrying `label`.
    pub fn region(&self, label: u32) -> BoundaryMask {
        BoundaryMask::new(self.grid.map(|&l| l == label))
    }
}

/// Per-pixel 2-vectors stored as two planes.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub vx: PixelGrid<f64>,
    pub vy: PixelGrid<f64>,
}

impl VectorField {
    pub fn new(vx: PixelGrid<f64>, vy: PixelGrid<f64>) -> Result<Self> {
        vx.same_dims(&vy)?;
        Ok(Self { vx, vy })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 2],
    ) -> Self {
        let mut vy = Vec::with_capacity(width * height);
        let vx = PixelGrid::from_fn(width, height, |x, y| {
            let [a, b] = f(x, y);
            vy.push(b);
            a
        });
        let vy = PixelGrid::new(width, height, vy).expect("same shape as vx");
        Self { vx, vy }
    }

    pub fn constant(width: usize, height: usize, v: [f64; 2]) -> Self {
        Self {
            vx: PixelGrid::filled(width, height, v[0]),
            vy: PixelGrid::filled(width, height, v[1]),
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.vx.width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.vx.height()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.vx.dims()
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> [f64; 2] {
        [self.vx[(x, y)], self.vy[(x, y)]]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: [f64; 2]) {
        self.vx[(x, y)] = v[0];
        self.vy[(x, y)] = v[1];
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &VectorField, b: f64) -> Result<VectorField> {
        self.vx.same_dims(&other.vx)?;
        let (w, h) = self.dims();
        Ok(VectorField::from_fn(w, h, |x, y| {
            let p = self.at(x, y);
            let q = other.at(x, y);
            [a * p[0] + b * q[0], a * p[1] + b * q[1]]
        }))
    }

    pub fn negated(&self) -> VectorField {
        VectorField {
            vx: self.vx.map(|v| -v),
            vy: self.vy.map(|v| -v),
        }
    }

    /// Fails on the first vector whose norm is off by more than `tolerance`.
    pub fn check_unit_norm(&self, tolerance: f64) -> Result<()> {
        let (w, h) = self.dims();
        for y in 0..h {
            for x in 0..w {
                let [a, b] = self.at(x, y);
                let norm = a.hypot(b);
                if !((norm - 1.0).abs() < tolerance) {
                    return Err(VtError::NotUnitNorm { x, y, norm });
                }
            }
        }
        Ok(())
    }
}

/// Euclidean distance (in pixels) to the nearest boundary pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceField {
    pub grid: PixelGrid<f64>,
}

impl DistanceField {
    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.grid[(x, y)]
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.grid.dims()
    }
}
