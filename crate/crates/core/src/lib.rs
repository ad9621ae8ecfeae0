//! Bound-state energies of anharmonic oscillators from an exactly evaluated
//! Wronskian quantization condition.
//!
//! - [`anharmonic`]: coefficient recurrences and the quantization function
//!   `F(E)` for `V(x) = g x^2 + x^(2N)`, `N >= 4`.
//! - [`spectrum`]: bracketing, root refinement, lowest levels and table sweeps.
//! - [`solvable`]: Pöschl-Teller, modified Pöschl-Teller and Morse checks.
//! - [`numerov`]: independent shooting solver used as a cross-check.
//! - [`cli`]: the `spectra` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anharmonic;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod numerov;
pub mod scaled;
pub mod solvable;
pub mod spectrum;
pub mod summation;

pub use error::{Error, Result};
