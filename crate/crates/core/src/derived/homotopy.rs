//! Homotopy groups of mapping spaces, read off hom complexes and Hochschild cohomology.

use std::fmt;

use crate::dgcat::{iso_in_h0, DgCategory, IsoSearch};
use crate::error::{Error, Result};
use crate::linalg::SVec;

use super::bar::TruncationReport;
use super::hochschild::hochschild;

/// `Aut_[C](x)`: the units of the algebra `H⁰ C(x, x)`.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub object: usize,
    /// Dimension of `H⁰ C(x, x)`.
    pub algebra_dim: usize,
    /// Identity class coordinates.
    pub identity: SVec,
    h0: crate::dgcat::H0Category,
}

impl Automorphisms {
    /// Whether the class with coordinates `a` is invertible: left multiplication by it is a
    /// bijection of the finite-dimensional algebra.
    pub fn is_unit(&self, a: &SVec) -> bool {
        let x = self.object;
        self.h0.left_mult_matrix(x, x, x, a).rank() == self.algebra_dim
    }
}

#[derive(Clone, Debug)]
pub enum HomotopyGroup {
    /// `π_1`, non-abelian in general.
    Automorphisms(Automorphisms),
    /// `π_i` for `i > 1`: the additive group of `H^degree`, of dimension `dim`.
    Vector { degree: i32, dim: usize },
}

impl HomotopyGroup {
    pub fn dim(&self) -> Option<usize> {
        match self {
            HomotopyGroup::Vector { dim, .. } => Some(*dim),
            HomotopyGroup::Automorphisms(_) => None,
        }
    }
}

impl fmt::Display for HomotopyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyGroup::Automorphisms(a) => {
                write!(f, "units of the {}-dimensional algebra H^0 End", a.algebra_dim)
            }
            HomotopyGroup::Vector { degree, dim } => write!(f, "H^{degree}, dimension {dim}"),
        }
    }
}

/// `π_i(Map(𝟏, C), x)`: `Aut_[C](x)` for `i = 1`, `H^{1−i} C(x, x)` for `i > 1`.
pub fn map_homotopy_unit(c: &DgCategory, x: usize, i: u32) -> Result<HomotopyGroup> {
    if x >= c.n_objects() {
        return Err(Error::OutOfRange(format!("object {x}")));
    }
    match i {
        0 => Err(Error::Invalid("homotopy groups start at i = 1".into())),
        1 => {
            let h0 = c.h0();
            let identity = h0.units[x].clone();
            Ok(HomotopyGroup::Automorphisms(Automorphisms { object: x, algebra_dim: h0.dim(x, x), identity, h0 }))
        }
        _ => {
            let degree = 1 - i as i32;
            Ok(HomotopyGroup::Vector { degree, dim: c.hom(x, x).cohomology_dim(degree) })
        }
    }
}

/// Whether `x ≅ y` in `[C]`, the component question behind `π_0`.
pub fn same_component(c: &DgCategory, x: usize, y: usize, seed: u64, trials: usize) -> IsoSearch {
    iso_in_h0(c, x, y, seed, trials)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoGroup {
    /// `π_1 = HH⁰(C)^*`, the units of an algebra of this dimension.
    Units { hh0_dim: usize },
    /// `π_i = HH^{1−i}(C)` for `i ≥ 2`.
    Vector { degree: i32, dim: usize },
}

/// `π_i(Map(C, C), Id)` through `HH^{1−i}(C)`, with the truncation report of the
/// Hochschild computation. Fails if the degree lies outside the exact window.
pub fn map_homotopy_endo(c: &DgCategory, i: u32, len: usize) -> Result<(EndoGroup, TruncationReport)> {
    if i == 0 {
        return Err(Error::Invalid("homotopy groups start at i = 1".into()));
    }
    let degree = 1 - i as i32;
    let hh = hochschild(c, degree, degree, len)?;
    let dim = hh.dim(degree).ok_or_else(|| {
        Error::Invalid(format!("HH^{degree} lies outside the exact window ({})", hh.report))
    })?;
    let group = if i == 1 { EndoGroup::Units { hh0_dim: dim } } else { EndoGroup::Vector { degree, dim } };
    Ok((group, hh.report))
}
