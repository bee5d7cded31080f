//! Workbench for the symbolic dynamics of full shifts: density spectra of
//! integer sets, constructions of orbit pairs with prescribed distributional
//! behavior, approach-time analysis and pair classification, type-class
//! counting with entropy bounds, and cylinder-cover dimension estimation.

pub mod acceptance;
pub mod combinatorics;
pub mod construct;
pub mod density;
pub mod dimension;
pub mod distributional;
pub mod error;
pub mod report;
pub mod symbolic;

pub use error::{Error, Result};
