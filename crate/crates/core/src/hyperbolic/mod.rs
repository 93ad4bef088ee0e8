//! PSL(2,ℝ) model of the unit tangent bundle of a hyperbolic surface.

pub mod frames;
pub mod group;
pub mod minkowski;
pub mod surface;

pub use frames::{bracket, frame_flow, FrameGenerator};
pub use group::{classify_and_length, Classification, GroupElement, Mat2};
pub use surface::{build_genus2_surface, FuchsianSurface};
