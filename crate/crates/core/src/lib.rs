//! Modal resolvent estimates, scattering resonances, and frequency
//! exclusion sets for radially symmetric Helmholtz scatterers.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! special  ->  modal  ->  resonance  ->  exclusion
//!                 \->  bounds / quasimode
//! layer (boundary integral operators, 2-d curves)
//! ```
//!
//! * [`special`] — complex-argument cylindrical and spherical
//!   Bessel/Hankel functions and Airy-function negative zeros.
//! * [`scatterer`] — declarative scattering configurations (free space,
//!   impenetrable Dirichlet/Neumann ball, penetrable ball/disc).
//! * [`modal`] — per-angular-mode radial determinants and a discretised
//!   radial resolvent with the exact modal outgoing condition.
//! * [`resonance`] — argument-principle search for modal-determinant
//!   zeros in a strip below the real axis, with Newton refinement.
//! * [`exclusion`] — frequency exclusion sets: per-window partitions,
//!   resonance flagging, dilation, dyadic assembly, measure accounting.
//! * [`bounds`] — box-image containment under semiclassical scaling,
//!   log-log envelope fitting, quasimode lower bounds.
//! * [`quasimode`] — lower-bound certificates built from near-real
//!   catalog resonances.
//! * [`layer`] — Nyström single/double/adjoint-double layer operators
//!   and combined-field operators on smooth 2-d curves.

pub mod bounds;
pub mod dd;
pub mod exclusion;
pub mod layer;
pub mod modal;
pub mod quasimode;
pub mod resonance;
pub mod scatterer;
pub mod special;

pub use num_complex::Complex64;
