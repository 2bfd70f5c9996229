//! Exact algebra for Artinian Gorenstein algebras of socle degree three:
//! inverse systems, the Gamma criterion for the weak Lefschetz property,
//! normal forms, a symbolic identity registry, and finite-field censuses.

#![allow(clippy::needless_range_loop)]

pub mod apolarity;
pub mod coeffring;
pub mod error;
pub mod expr;
pub mod gamma;
pub mod harness;
pub mod linalg;
pub mod normalform;
pub mod par;
pub mod polyspace;
pub mod verify;

pub use coeffring::{Domain, Scalar};
pub use error::{Error, Result};
