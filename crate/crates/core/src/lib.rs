//! Exact combinatorial invariants of non-degenerate functions on affine toric varieties.
//!
//! The crate is organised bottom-up: [`exact_linalg`] supplies integer normal
//! forms and lattice bases, [`cones`] the face lattice of σ̌, [`polytopes`] hulls
//! and (mixed) volumes, [`newton`] Newton polygons restricted to faces, and
//! [`invariants`] / [`family`] the Euler characteristics, Brasselet numbers and
//! Morse counts built from them. [`io`] holds the problem-file format and the
//! command runner used by the `toric` binary.

pub mod cones;
pub mod error;
pub mod exact_linalg;
pub mod family;
pub mod invariants;
pub mod io;
pub mod newton;
pub mod oracle;
pub mod polytopes;

pub use error::{Result, ToricError};
