//! Propagators on multiply-connected configuration spaces.
//!
//! A propagator on a space with nontrivial fundamental group decomposes into
//! a sum over homotopy classes, each class partial weighted by a character of
//! a one-dimensional unitary representation of the group. This crate builds
//! that machinery concretely for several classical settings:
//!
//! - free kernels in d dimensions with imaginary- or regularized real-time
//!   evolution ([`kernel`]);
//! - winding numbers of polyline loops in the punctured plane and abstract
//!   class relabelings ([`homotopy`]);
//! - characters of the integers, Z2, symmetric groups, and abelianized braid
//!   phases ([`characters`]);
//! - the particle on a circle, with its winding-image and spectral forms
//!   related by Poisson summation ([`circle`]);
//! - rigid-rotor propagators on SU(2) and SO(3) via Wigner D-matrices,
//!   including the two-class split on SO(3) ([`spin`]);
//! - identical particles with Bose, Fermi, or abelian anyon statistics
//!   ([`many_body`]);
//! - ring-idealized Aharonov-Bohm interference scans ([`aharonov_bohm`]).
//!
//! The [`verify`] module re-derives a battery of identities at runtime and is
//! exposed through the CLI's `verify` subcommand.

pub mod aharonov_bohm;
pub mod characters;
pub mod circle;
pub mod error;
pub mod homotopy;
pub mod kernel;
pub mod many_body;
pub mod scan;
pub mod spin;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{PhysicalConstants, TimeMode, TimeParameter};
