//! Vector-transform (VT) boundary representation.
//!
//! A boundary is encoded as a dense field of unit vectors, each pointing at
//! the closest boundary point. This crate provides
//!
//! * the exact forward transform from boundary masks and label maps
//!   ([`field`]), backed by an exact Euclidean feature transform;
//! * the inverse: a support image at twice the resolution, a calibrated
//!   Sobel divergence and a fixed `-1` threshold that recover inter-pixel
//!   ("zero-pixel") boundaries ([`inverse`]);
//! * surface-distance metrics, one-to-one correspondence ODS/OIS, the field
//!   MSE and distance profiles ([`metrics`]);
//! * direction estimation, straight-line proposals and field-advection
//!   superpixels ([`derived`]);
//! * PGM/PNG/field-file codecs and visualisation ([`io`]).
//!
//! Inner loops run on rayon when the `parallel` feature is enabled (the
//! default); outputs are bit-identical with the feature off.

// `!(x > 0.0)` is used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod derived;
pub mod edt;
pub mod error;
pub mod field;
pub mod grid;
pub mod inverse;
pub mod io;
pub mod kernel;
pub mod metrics;
pub mod morph;
pub mod par;
pub mod synth;

pub use edt::ArgminMap;
pub use error::{Result, VtError};
pub use field::{
    brute_force_nearest, dt_from_mask, label_argmin, nearest_boundary_map, vt_from_labels,
    vt_from_mask,
};
pub use grid::{BoundaryMask, DistanceField, LabelMask, PixelGrid, VectorField};
pub use inverse::{
    binarize, collapse_to_original, divergence, extract_boundary, invert_field, upsample_support,
    BoundaryImage, DivergenceImage, Resolution, SupportField,
};
