//! Exact census of primary cyclic matrices in the irreducible subalgebra
//! `M(c, q^b)` of `M(bc, q)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: finite fields `GF(p^m)`, the extension `GF(q^b) / GF(q)`,
//!   polynomials, irreducibility and factorisation.
//! - [`matrixlab`]: matrices over a finite field, characteristic and minimal
//!   polynomials, partition types `λ(X, h)`, the blow-up embedding and the two
//!   primary-cyclicity criteria.
//! - [`series`]: truncated power series with exact rational coefficients,
//!   the named generating functions and rigorous rational intervals.
//! - [`cycleindex`]: partitions, centralizer orders and both sides of the
//!   generalised cycle index identity.
//! - [`census`]: exact, brute-force, Monte Carlo and limiting proportions,
//!   tail-bound verification and reports.

pub mod algebra;
pub mod census;
pub mod cycleindex;
pub mod error;
pub mod matrixlab;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
