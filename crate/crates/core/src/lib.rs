//! Bruhat intervals of Coxeter groups, Kazhdan-Lusztig polynomials, and the
//! search for spanning cubical lattices inside Bruhat graphs.

pub mod bitset;
pub mod bruhat;
pub mod constructions;
pub mod coxeter;
pub mod error;
pub mod growth;
pub mod kl;
pub mod lattice;
pub mod poly;
pub mod search;

pub use coxeter::{CoxeterSystem, Element};
pub use error::{Error, Result};
