//! Homogeneous Lorentzian plane waves in dimension three.
//!
//! A derivation `A` of the Heisenberg algebra defines the extension
//! `G = ℝ ⋉ Heis` and the homogeneous space `G/I`. This crate decides when
//! that space carries an invariant Lorentz metric, classifies it by the
//! invariant `b`, realizes it in Brinkmann and Rosen charts and checks the
//! geometric claims (curvature, Killing fields, geodesic completeness,
//! compact models) numerically and in closed form.

pub mod classify;
pub mod cli;
pub mod error;
pub mod euler;
pub mod geodesic;
pub mod geometry;
pub mod lie;
pub mod metric;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use lie::{Derivation, ExtensionAlgebra, IsotropyChoice};
pub use rational::Q;
