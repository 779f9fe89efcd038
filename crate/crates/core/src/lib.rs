//! Exact computation of the rational Kontsevich integral of torus knots
//! through three loop degrees, with branched-cover lifts and the resulting
//! invariants of Brieskorn homology spheres.
//!
//! Everything is exact: coefficients are big rationals, edge labels are
//! factored rational functions in the knot variable, and power series are
//! truncated only at explicitly tracked caps. No floating point anywhere.

pub mod cover;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod glue;
pub mod pipeline;
pub mod series;
pub mod verify;
pub mod wheels;

pub use error::{Error, Result};
