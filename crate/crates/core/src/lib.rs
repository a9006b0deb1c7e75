//! Exact-arithmetic analysis of p-ary functions over GF(p^n), odd p.
//!
//! * [`gf`] builds the field: validated modulus, a fixed primitive element,
//!   and log/Zech tables for O(1) multiplicative arithmetic.
//! * [`cyc`] is the ring Z[w] of cyclotomic integers, where Walsh
//!   coefficients and character sums live with zero rounding error.
//! * [`walsh`] computes spectra and classifies bentness and regularity.
//! * [`family`], [`expsums`], [`units`], [`niho`] hold the binomial bent
//!   family, the C(a) sums, the order-(p^2k + 1) subgroup, and the
//!   T-polynomials, each with an exhaustive verifier that reports
//!   counterexamples instead of panicking.
//!
//! The crate is no_std + alloc; everything is deterministic and pure, so
//! contexts can be shared freely across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cyc;
pub mod expsums;
pub mod family;
pub mod gf;
pub mod niho;
pub mod units;
pub mod verify;
pub mod walsh;
