//! Exact-arithmetic toolkit for equivariant sheaves on toric varieties.
//!
//! The crate is organized around the data a torus action leaves behind:
//!
//! - [`lattice`] — dual lattices M and N, integer matrices, Smith normal
//!   form, and the Chow group presented as a cokernel;
//! - [`fan`] — cones and fans with exact duality, faces, the semigroup
//!   preorder and separating characters;
//! - [`families`] — subspace arithmetic over the rationals, filtrations
//!   and multifiltrations, degree windows and the bundle-compatibility
//!   decision;
//! - [`coxring`] — the fine grading of the homogeneous coordinate ring,
//!   monomial ideals and Fitting-minor support;
//! - [`euler`] — Euler-type resolutions of rank-2 equivariant bundles on
//!   smooth complete toric surfaces.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! values are immutable and the operations are pure functions, so
//! everything can be shared freely across threads.

pub mod coxring;
pub mod euler;
pub mod families;
pub mod fan;
pub mod lattice;
