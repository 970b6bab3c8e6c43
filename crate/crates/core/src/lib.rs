//! Finite commutative *-semigroups and the shift operators their positive
//! definite functions induce.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function of
//! its inputs; the companion `pontryagin` crate carries file formats, reports
//! and the command-line front end.
//!
//! Layout, bottom-up:
//!
//! - [`semigroup`]: table-backed *-semigroups, validation, constructors,
//!   amalgams and quotients by congruences.
//! - [`characters`]: exact enumeration of the dual semigroup and the greatest
//!   *-separative quotient.
//! - [`structure`]: *-archimedean components and their semilattice.
//! - [`linalg`]: small dense complex matrices and a Hermitian Jacobi solver.
//! - [`pdfun`]: moment functions of finitely supported dual measures and the
//!   positive-definiteness gate.
//! - [`rkhs`]: Gram realizations, shift matrices, kernel dimensions, negative
//!   squares, and the independent dual-space realization.
//! - [`analysis`]: symmetry reports, transfer checks along homomorphisms, and
//!   the fuzzing harness.
//! - [`catalog`]: the named instances used throughout the test suites.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod catalog;
pub mod characters;
mod error;
pub mod linalg;
pub mod pdfun;
pub mod rkhs;
pub mod semigroup;
pub mod structure;

pub use error::{CongruenceWitness, Error, Result};
pub use semigroup::{ElementId, Homomorphism, StarSemigroup, MAX_ELEMENTS};
