//! Exact tools for Hilbert functions of ideals containing regular sequences:
//! monomial ideals, lex-plus-powers compression and growth bounds, liaison,
//! slice constructions, and a small Gröbner engine over prime fields.

pub mod error;
pub mod monom;
pub mod mideal;
pub mod lpp;
pub mod egh;
pub mod polyfp;
pub mod campaign;

pub use error::{Error, Result};
