//! Exact arithmetic for plane curves carrying a Galois point.
//!
//! Everything here works over explicit number fields `Q[z]/(m(z))` and their
//! rational function fields, with no floating point anywhere. The crate is
//! `no_std` (it allocates, but does no IO); the companion `galpt-cli` crate
//! carries the parser, file formats, and command-line front end.
//!
//! The main pipeline:
//!
//! 1. [`curve`] — move a marked point of a plane curve to the origin, project
//!    from it, and extract the fiber polynomial `h(X)` of the projection.
//! 2. [`galois`] — decide whether a degree-3 projection is Galois, construct a
//!    generating automorphism from the square root of the discriminant, and
//!    collapse it to a radical (Kummer) presentation via the Lagrange
//!    resolvent.
//! 3. [`kummer`] — radical presentations `x = c0 + c1*w + ... + c_{n-1}*w^{n-1}`
//!    with `w = q^(1/n)`, their minimal polynomials, and the fractional-linear
//!    expression of the automorphism when the coefficients form a geometric
//!    sequence.
//! 4. [`cremona`] — lift the fractional-linear action to a de Jonquières
//!    transformation of the plane and verify it is birational, has the right
//!    order, and preserves the curve.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod cremona;
pub mod curve;
pub mod error;
pub mod galois;
pub mod kummer;
pub mod linalg;
pub mod poly;

pub use arith::numfield::{NfElem, NumberField};
pub use arith::ratfunc::RatFunc;
pub use arith::Rat;
pub use error::{CoreError, CoreResult};
pub use poly::{FieldElem, RingElem, UniPoly};

