//! Core library for computing indexes of seaweed-type subalgebras attached to
//! ad-nilpotent ideals of a Borel subalgebra in a simple Lie algebra.

pub mod error;
pub mod exactlin;
pub mod hseq;
pub mod ideals;
pub mod oracle;
pub mod quotients;
pub mod rootsys;

pub use error::{Error, Result};
