//! Exact computer algebra for linear difference-differential (σδ) systems:
//! integrability checks, dependence testing over the shift-differential
//! constants, sequence-space solutions, and Galois-group computations for
//! the second-order family that includes the Chebyshev polynomial system.

pub mod dependence;
pub mod error;
pub mod expr;
pub mod galois;
pub mod matrix;
pub mod poly;
pub mod quadext;
pub mod quotient;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod ring;
pub mod sequence;
pub mod sysfile;
pub mod system;
pub mod theta;
pub mod tower;

pub use error::{Error, Result};
