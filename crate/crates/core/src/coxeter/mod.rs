//! Coxeter systems, exact elements and enumeration.

pub mod bruhat;
pub mod element;
pub mod enumerate;
pub mod matrix;
pub mod system;

pub use bruhat::{bruhat_leq, hasse_edges};
pub use element::{Element, ElementKey, Word};
pub use enumerate::{
    enumerate_all, enumerate_parabolic, enumerate_up_to, for_each_layer, is_minimal_coset_rep, length_histogram,
    longest_element, minimal_coset_reps, parabolic_decompose, EnumOptions, DEFAULT_BUDGET,
};
pub use matrix::CoxeterMatrix;
pub use system::{build_system, CoxeterSystem, Side, SystemType};
