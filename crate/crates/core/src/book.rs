//! The guide's chapters, compiled as doctests.
//!
//! mdbook cannot run a book's code blocks against the crate by itself, so
//! each chapter is also included here as a doc comment; `cargo test`
//! compiles and runs every Rust block in the book. If a snippet drifts
//! from the crate's API, the build breaks.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/pairs.md")]
mod pairs {}

#[doc = include_str!("../../../book/src/cochains.md")]
mod cochains {}

#[doc = include_str!("../../../book/src/calibration.md")]
mod calibration {}

#[doc = include_str!("../../../book/src/cohomology.md")]
mod cohomology {}

#[doc = include_str!("../../../book/src/deformations.md")]
mod deformations {}

#[doc = include_str!("../../../book/src/extensions.md")]
mod extensions {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
