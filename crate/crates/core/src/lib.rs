//! Coded schemes for multi-user linearly-separable distributed computing.
//!
//! A demand matrix `F` (K users x L subfunctions) over GF(q) is factorized
//! as `F = D E`, where the decoding matrix `D` (K x N) is the parity-check
//! matrix of a covering or partial-covering code and each column of the
//! encoding matrix `E` (N x L) is a minimum-weight coset leader. Column
//! weights of `E` set the computation cost, the weight of `D` the
//! communication cost.

pub mod bounds;
pub mod code;
pub mod covering;
pub mod error;
pub mod fq;
pub mod io;
pub mod multishot;
pub mod scheme;
pub mod sim;

pub use error::{Error, Result};
