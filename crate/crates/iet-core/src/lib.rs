//! Exact arithmetic for interval exchange transformations (IETs).
//!
//! Everything in this crate is computed over the rationals: real numbers are
//! rational coordinate vectors over a declared basis (`scalar`), IETs carry
//! exact interval lengths and translation constants (`iet`), and the SAF
//! (scissors congruence) invariant lives in wedge coordinates (`saf`).
//! On top of that sit constructive membership tests for the subgroup
//! generated by periodic IETs and for the subgroup generated by periodic
//! IETs together with rotations, rotation factorization, and first-return
//! induction on subintervals (`induction`).
//!
//! There are no floating point fast paths. Sign decisions on symbolic bases
//! use certified interval enclosures with escalating precision and fail
//! loudly (`Error::AmbiguousSign`) instead of guessing.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the CLI live
//! in the companion `iet-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod iet;
pub mod induction;
pub mod linalg;
pub mod oracle;
pub mod saf;
pub mod scalar;

pub use error::{Error, Result};
// pub use iet::{Iet, OrderResult, PointLocation};
pub use scalar::{BasisContext, BasisEntry, ContextKind, ExternalReal, Rational, Scalar, Sign};

pub use num_bigint::BigInt;
