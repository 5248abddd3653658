//! Exact solver, effective-bound calculator and certificate checker for the
//! ternary purely exponential equation `a^x + b^y = c^z` with pairwise coprime
//! bases `a, b, c > 1`.
//!
//! - [`bounds`] evaluates the explicit solution caps and threshold functions
//!   with outward-rounded interval arithmetic.
//! - [`enumerate`] finds every solution below a cap with a residue sieve and
//!   exact big-integer confirmation.
//! - [`lemma_lab`] rewrites an instance in canonical form `A^X + λB^Y = C^Z`
//!   and recomputes the counting argument's congruence and gcd chain.
//! - [`survey`] scans ranges of instances with resumable JSON-lines output.

pub mod arith;
pub mod bounds;
pub mod enumerate;
mod error;
pub mod interval;
pub mod lemma_lab;
mod model;
pub mod survey;

pub use error::{Error, Result};
pub use model::{Decimal, Instance, Solution};
