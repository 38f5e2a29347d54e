//! Exact, finite-scale computations with dg-categories and their bimodules.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod complex;
pub mod gen;
pub mod dgcat;
pub mod validate;
pub mod library;
pub mod module;
pub mod bimodule;
pub mod derived;
pub mod quotient;
pub mod io;
