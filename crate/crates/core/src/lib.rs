//! Colourful polytopes built from properly edge-coloured regular graphs.
//!
//! The crate constructs the hemi-hypercube `P` from the direction colouring of
//! the projective `K_{4,4}`, the chiral polytope `Q` obtained from the same
//! graph by a different colouring, and the double cover `Qhat` of `Q` sitting
//! in 4-space with vertices `{-1, +1}^4`. It computes face lattices, flags,
//! Schläfli types, Petrie polygons, symmetry groups and flag orbits, and
//! [`classify::verify_paper`] runs every structural check and collects the results into one report.
//!
//! ```
//! use chiral_polytope::classify::{construct, ObjectName};
//! use chiral_polytope::polytope::{f_vector, schlafli_type};
//!
//! let qhat = construct(ObjectName::Qhat).unwrap();
//! assert_eq!(f_vector(&qhat.polytope), vec![16, 32, 12, 4]);
//! assert_eq!(schlafli_type(&qhat.polytope), Some(vec![8, 3, 3]));
//! ```
//!
//! Combinatorics is integer-only. Linear algebra in [`geometry::linalg`] is
//! generic over the scalar; the aliases below fix the defaults.

pub mod classify;
pub mod cli;
pub mod geometry;
pub mod graph;
pub mod group;
pub mod polytope;

/// Exact scalar for ranks and determinants of integer coordinates.
pub type Exact = i64;

/// Rotation angles in double precision.
pub type RotationProfile = geometry::RotationProfile<f64>;

pub use classify::{verify_paper, VerificationReport};
