//! Exact arithmetic for the Z/3-graded Lie algebra e8 = g(-1) + sl9 + g(1),
//! where g(1) is the third exterior power of C^9, together with orbit
//! classification tools for the action of SL(9) on trivectors.

pub mod cartan;
pub mod catalog;
pub mod classify;
pub mod e8;
pub mod field;
pub mod galois;
pub mod modular;
pub mod realform;
pub mod scalar;
pub mod trivector;

pub use field::{Field, Mat};
pub use scalar::{parse_scalar, CycScalar, ScalarError};
pub use trivector::{parse_trivector, Trivector};

pub type Scalar = CycScalar;
pub type Rational = num_rational::BigRational;
