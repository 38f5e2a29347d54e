//! Derived functors computed through truncated bar resolutions.

pub mod bar;
pub mod cell;
pub mod hochschild;
pub mod homotopy;
pub mod picard;
pub mod rhom;
pub mod semifree;
pub mod tensor;

pub use bar::{bar_resolution, diagonal_bar, BarResolution, DiagonalBar, Reduced, TruncationReport};
pub use cell::{build_cell_module, CellStep};
pub use hochschild::{hochschild, Hochschild};
pub use homotopy::{map_homotopy_endo, map_homotopy_unit, Automorphisms, EndoGroup, HomotopyGroup};
pub use picard::{picard_verify, PicardReport, PicardSide, PicardWitness};
pub use rhom::{rhom, rhom_dims, Rhom};
pub use semifree::{Coefficient, Cochains, Generator, SemiFree};
pub use tensor::{derived_tensor, tensor_over};
