//! Applications built on the field: boundary direction, straight-line
//! proposals and field-advection superpixels.

pub mod dbscan;
pub mod direction;
pub mod lines;
pub mod superpixels;

pub use dbscan::dbscan;
pub use direction::{angle_rmse, direction_angles, wrap_difference, AngleError, AngleGrid};
pub use lines::{line_proposals, line_response, LINE_THRESHOLD};
pub use superpixels::{advect, source_mask, superpixels, Advected, SuperpixelMap, SuperpixelParams};
