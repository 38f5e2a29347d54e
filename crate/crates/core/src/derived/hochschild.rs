//! Hochschild cohomology through the diagonal two-sided bar construction.

use crate::bimodule::diagonal;
use crate::dgcat::DgCategory;
use crate::error::{Error, Result};

use super::bar::{diagonal_bar, hom_window, TruncationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hochschild {
    /// `(n, dim HH^n)` for the requested degrees inside the exact window.
    pub dims: Vec<(i32, usize)>,
    pub report: TruncationReport,
}

impl Hochschild {
    pub fn dim(&self, n: i32) -> Option<usize> {
        self.dims.iter().find(|p| p.0 == n).map(|p| p.1)
    }
}

fn lowest_degree(c: &DgCategory) -> Option<i32> {
    (0..c.n_objects())
        .flat_map(|x| (0..c.n_objects()).map(move |y| (x, y)))
        .filter_map(|(x, y)| c.hom(x, y).min_degree())
        .min()
}

fn at_length(c: &DgCategory, lo: i32, hi: i32, len: usize) -> Result<Hochschild> {
    let bar = diagonal_bar(c, len)?;
    let report = hom_window(len, bar.complete, 0, bar.amax, lowest_degree(c));
    let degrees = report.clip(lo, hi);
    let (Some(&a), Some(&b)) = (degrees.first(), degrees.last()) else {
        return Ok(Hochschild { dims: Vec::new(), report });
    };
    let delta = diagonal(c);
    let cochains = bar.semifree.hom_into(delta.module(), Some((a - 1, b + 1)))?;
    let dims = degrees.iter().map(|&n| (n, cochains.complex.cohomology_dim(n))).collect();
    Ok(Hochschild { dims, report })
}

/// `dim HH^n(C)` for `n` in `lo..=hi` that the length-`len` truncation computes exactly,
/// checked against length `len + 1`.
pub fn hochschild(c: &DgCategory, lo: i32, hi: i32, len: usize) -> Result<Hochschild> {
    if len == 0 {
        return Err(Error::Invalid("bar length must be at least 1".into()));
    }
    let mut out = at_length(c, lo, hi, len)?;
    let next = at_length(c, lo, hi, len + 1)?;
    out.report.stabilized = Some(out.dims.iter().all(|p| next.dims.contains(p)));
    Ok(out)
}
