//! Noncommutative Yang–Mills–scalar–matter theory on matrix algebras.
//!
//! The base space is `M_N(ℂ)` with the differential calculus generated by
//! the inner derivations `i[S_k, −]`. On top of it sit the quantum Hodge
//! operators ([`qriemann`]), the trivial quantum principal `U(1)`-bundle
//! with its connections and charged sections ([`qbundle`]), and the
//! Yang–Mills, scalar-matter and coupled actions with their field
//! equations and a stationary-point solver ([`fields`]).
//!
//! All algebra is generic over [`Scalar`], so identities can be checked
//! either in floating point ([`C64`]) or exactly ([`GaussRat`]).

pub mod error;
pub mod fields;
pub mod io;
pub mod matforms;
pub mod matrix;
pub mod qbundle;
pub mod qriemann;
pub mod random;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{FieldConfiguration, PolynomialPotential};
pub use matforms::{Calculus, ConventionLedger, DiffForm};
pub use matrix::Matrix;
pub use qbundle::{ChargedSection, GaugeConnection, QvbForm};
pub use qriemann::Side;
pub use scalar::{Scalar, C64, GaussRat};
