//! Exact invariants of moduli spaces of semistable quiver representations.
//!
//! The crate computes, with arbitrary-precision rational arithmetic:
//!
//! * the Euler form, slopes, coprimality and kernel symmetry ([`quiver`]);
//! * generic deformations of a stability ([`deform`]);
//! * Harder–Narasimhan sums `p_d(q)`, Betti polynomials in the coprime case,
//!   q-Donaldson–Thomas invariants and intersection Poincaré polynomials
//!   ([`invariants`]);
//! * Luna decomposition types, local quivers, and smallness certificates for
//!   the resolution given by a deformed stability ([`strata`]);
//! * builders for a catalog of worked families ([`catalog`]).
//!
//! No floating point is used anywhere.

pub mod catalog;
pub mod deform;
pub mod error;
pub mod halfq;
pub mod invariants;
pub mod lattice;
pub mod quiver;
pub mod strata;

pub use error::{Error, ErrorKind, Result};
pub use halfq::{HalfLaurent, RatFunc, SlopeSeries};
pub use lattice::Limits;
pub use quiver::{DimVector, Quiver, Stability};
