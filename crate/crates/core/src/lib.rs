//! Exact-arithmetic toolkit for modified Rota-Baxter Lie algebras with
//! derivations.
//!
//! The crate represents finite-dimensional pairs `(A, R, d)` — a Lie algebra
//! with a modified Rota-Baxter operator of some rational weight and a
//! commuting derivation — together with their representations, entirely by
//! rational data. On top of that it provides:
//!
//! - validators for every defining identity, reporting exact counterexamples;
//! - the alternating cochain complexes attached to such a pair and all of
//!   their coboundary operators;
//! - cohomology groups computed by exact rank/nullity linear algebra;
//! - formal one-parameter deformations truncated at finite order, their
//!   infinitesimals and equivalences;
//! - abelian extensions, their classifying cocycle triples, and the
//!   second-cohomology classification.
//!
//! All arithmetic is exact; every test in the crate asserts equality, not
//! closeness. Every value is immutable after construction and every
//! operation is a pure function, so everything here is safe to share
//! across threads. See the `book/` directory of the repository for a
//! guided tour.

pub mod algebra;
pub mod calibration;
pub mod claims;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod extension;
pub mod json;
pub mod linalg;
pub mod operators;
pub mod rng;
pub mod sampling;

#[cfg(doctest)]
mod book;
