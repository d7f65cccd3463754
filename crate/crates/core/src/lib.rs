//! Exact arithmetic for real quadratic fields `ℚ(√d)`.
//!
//! Continued fractions of `ω_d`, fundamental units, canonical ideal bases,
//! the quadratic progressions of radicands representing a fixed norm, and
//! sweeps across many fields. Every number-theoretic decision is made with
//! arbitrary-precision integers; floating point only appears in reported
//! logarithms and densities.

pub mod arith;
pub mod contfrac;
pub mod error;
pub mod ideals;
pub mod progressions;
pub mod quadfield;
pub mod sieve;
pub mod survey;

pub use contfrac::{expand_omega, fundamental_unit, CFExpansion, QuadIrr};
pub use error::{Error, Result};
pub use quadfield::{BasisKind, FieldContext, QuadInt, Surd};
