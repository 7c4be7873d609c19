//! Exact construction of `n` distinct perfect squares such that the sum of
//! any `n - 1` of them is again a perfect square.
//!
//! The crate works through the equivalent chain problem
//!
//! ```text
//! s = x_1^2 + y_1^2 = x_2^2 + y_2^2 = ... = x_n^2 + y_n^2 = x_1^2 + ... + x_n^2
//! ```
//!
//! and offers two routes to solutions in distinct integers:
//!
//! * [`seeds`] + [`evolve`]: start from a repeated-square family and break the
//!   repeated pairs with sign flips and the quadratic-form transform.
//! * [`identities`] + [`derive`]: build the chain from multi-way two-square
//!   representations and solve the residual quadratic for the parameters.
//!
//! Every construction is re-checked by [`verify`], which only uses exact
//! integer square roots.

pub mod catalog;
pub mod derive;
mod error;
pub mod evolve;
pub mod exactmath;
pub mod identities;
pub mod polyfield;
pub mod seeds;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{BigInt, Rational};
pub use seeds::{ChainSolution, SquareSystem};
