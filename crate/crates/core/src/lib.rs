//! Dirac–Kepler bound states in a space with deformed Heisenberg algebra
//! `[x, P] = iħ(1 + νr)` and position-dependent mass `m(1 + a/r)`.
//!
//! The crate has two independent routes to every energy level:
//!
//! * [`closed_form`] evaluates the analytic spectrum, its `ν → 0` and
//!   `c → ∞` limits and the first relativistic corrections.
//! * [`radial`] maps the radial equation onto an Eckart-type hyperbolic
//!   potential and solves it numerically (finite differences, shooting and a
//!   self-consistent root search in the energy).
//!
//! [`algebra`] checks the operator-level identities the construction rests on
//! (deformed commutator, the 2×2 `Λ` operator, separability conditions) on
//! grids and small matrices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod algebra;
pub mod closed_form;
pub mod fit;
pub mod params;
pub mod radial;

pub use crate::error::{Error, Result};
pub use crate::params::{
    Branch, Couplings, DeformationParams, PhysicalConstants, QuantumState,
};
