//! Exact rational homotopy computations for simply connected four-manifolds.
//!
//! The crate is `no_std` (it only needs `alloc`) and carries no IO. It
//! provides:
//!
//! - [`series`]: truncated power series over the rationals, the Möbius
//!   function, Newton power sums and the Witt/PBW dimension bookkeeping
//!   between a graded Lie algebra and its universal enveloping algebra.
//! - [`freelie`]: free graded Lie algebras realised inside the tensor algebra,
//!   derivation differentials, degreewise bases and homology ranks.
//! - [`fourfold`]: the Lie model of a four-manifold with a given diagonal
//!   intersection form and three independent routes to its rational homotopy
//!   ranks.
//! - [`gauge`]: rational cohomology and loop-space Pontrjagin ring
//!   presentations for gauge groups and spaces of connections.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fourfold;
pub mod freelie;
pub mod gauge;
pub mod series;

pub use error::{Error, Result};

/// Arbitrary-precision rational number used for every coefficient.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(n))
}
