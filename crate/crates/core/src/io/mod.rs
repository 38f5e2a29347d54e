//! The line-oriented text format for categories, modules, functors, bimodules and cell plans.

mod bundled;
mod document;
mod syntax;

pub use bundled::{bundled, bundled_examples};
pub use document::{load, parse, parse_element, serialize, write_element, write_vector, CellPlan, Document, FORMAT};
