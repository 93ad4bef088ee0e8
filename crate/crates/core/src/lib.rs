//! Numerical laboratory for contact Dehn surgery on the unit tangent bundle of
//! a hyperbolic surface.
//!
//! * [`hyperbolic`]: PSL(2,ℝ) frames, structure equations and the genus-2 octagon group.
//! * [`surgery`]: flow-box surgery data, gluing identities, the Reeb time change and
//!   the fiber-flow form `β₀`.
//! * [`cocycle`]: return-map cocycle at the surgery annulus, cone certificates,
//!   cone flips for negative twists and Lyapunov estimates.
//! * [`census`]: periodic-orbit censuses (geodesics, disjoint classes, Farey tori).
//! * [`entropy`]: Abramov transfer, Pesin consistency, growth-type classification
//!   and the bound-sequence calculator.

pub mod census;
pub mod cocycle;
pub mod entropy;
pub mod error;
pub mod hyperbolic;
pub mod quadrature;
pub mod surgery;

pub use error::{LabError, Result};
