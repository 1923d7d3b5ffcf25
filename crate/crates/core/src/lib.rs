//! Exact computations with non-semisimple monomial Hopf algebras `A(𝔾)`,
//! their Galois objects `A_{σ,a}(𝔾)`, Hopf 2-cocycles and polynomial
//! H-identities.

pub mod cyclo;
pub mod error;
pub mod fingroup;
pub mod frontend;
pub mod galois;
pub mod hopf;
pub mod identity;
pub mod instances;
pub mod linalg;
pub mod monomial;
pub mod qplane;
pub mod rational;
pub mod snf;
pub mod twist;
pub mod zcocycle;

pub use cyclo::{CycNumber, CycloField};
pub use error::{Error, Result};
pub use rational::Rational;
