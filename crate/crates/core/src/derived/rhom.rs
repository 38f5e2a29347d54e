//! Derived Hom of modules through the one-sided bar resolution.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::module::DgModule;

use super::bar::{bar_resolution, TruncationReport};

/// `RHom(F, G)` computed as `Hom(B(F), G)` with words of length `< len`.
#[derive(Clone, Debug)]
pub struct Rhom {
    pub complex: Complex,
    pub report: TruncationReport,
}

impl Rhom {
    /// Cohomology dimensions over `lo..=hi`, `None` outside the exact window.
    pub fn dims(&self, lo: i32, hi: i32) -> Vec<(i32, Option<usize>)> {
        (lo..=hi)
            .map(|n| (n, self.report.contains(n).then(|| self.complex.cohomology_dim(n))))
            .collect()
    }
}

pub(crate) fn lowest_degree(m: &DgModule) -> Option<i32> {
    m.values().iter().filter_map(|v| v.min_degree()).min()
}

pub fn rhom(f: &DgModule, g: &DgModule, len: usize) -> Result<Rhom> {
    if f.base() != g.base() {
        return Err(Error::Invalid("RHom between modules over different categories".into()));
    }
    if len == 0 {
        return Err(Error::Invalid("bar length must be at least 1".into()));
    }
    let bar = bar_resolution(f, len)?;
    let report = bar.hom_report(lowest_degree(g));
    let cochains = bar.semifree.hom_into(g, None)?;
    Ok(Rhom { complex: cochains.complex, report })
}

/// `dim H^n RHom(F, G)` for the window degrees in `lo..=hi`, with a stabilization check
/// against length `len + 1`.
pub fn rhom_dims(f: &DgModule, g: &DgModule, len: usize, lo: i32, hi: i32) -> Result<(Vec<(i32, usize)>, TruncationReport)> {
    let at = |len: usize| -> Result<(Vec<(i32, usize)>, TruncationReport)> {
        let bar = bar_resolution(f, len)?;
        let report = bar.hom_report(lowest_degree(g));
        let degrees = report.clip(lo, hi);
        let (Some(&a), Some(&b)) = (degrees.first(), degrees.last()) else {
            return Ok((Vec::new(), report));
        };
        let cochains = bar.semifree.hom_into(g, Some((a - 1, b + 1)))?;
        Ok((degrees.iter().map(|&n| (n, cochains.complex.cohomology_dim(n))).collect(), report))
    };
    if f.base() != g.base() {
        return Err(Error::Invalid("RHom between modules over different categories".into()));
    }
    let (dims, mut report) = at(len.max(1))?;
    let (next, _) = at(len.max(1) + 1)?;
    report.stabilized = Some(dims.iter().all(|p| next.contains(p)));
    Ok((dims, report))
}
