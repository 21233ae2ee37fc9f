//! Exact computations with the braided Lie algebra of U_q(sl(2)), its almost
//! representations, and reflection-equation algebras for sl(n).
//!
//! Scalars live in the field Q(q) ([`QScalar`]); all identities are checked
//! exactly, either symbolically or at rational values of `q`.

pub mod braided;
pub mod brmod;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod qscalar;
pub mod realg;
pub mod selftest;
pub mod strategy;
pub mod uqmod;

pub use error::{Error, QError, Result};
pub use linalg::{Field, Matrix};
pub use qscalar::{qint, rat, QScalar, Rational};
pub use strategy::{Limits, Strategy};
pub use uqmod::WeightModule;
