//! Finite and affine Coxeter groups, folding subgroups and their unfolding
//! series, checked against closed product formulas.

pub mod cli;
pub mod closed_forms;
pub mod coxeter;
pub mod error;
pub mod folding;
pub mod qseries;
pub mod ring;
pub mod verifier;

pub use error::{Error, Result};
