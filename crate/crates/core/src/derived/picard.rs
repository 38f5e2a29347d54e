//! Verification of derived invertibility of bimodules over a dg-algebra.

use crate::bimodule::DgBimodule;
use crate::complex::{ChainMap, Complex};
use crate::dgcat::{DgCategory, RATIONAL_SAMPLE};
use crate::error::{Error, Result};
use crate::gen;
use crate::linalg::{Matrix, SVec};

use super::bar::{diagonal_bar, TruncationReport};
use super::tensor::derived_tensor;

/// A class `Φ ∈ H⁰ Hom(B(A, A, A), T)` whose value `c = Φ([])` makes `a ↦ c · a` a
/// quasi-isomorphism `A → T` in degrees `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardWitness {
    pub cocycle: SVec,
    pub element: SVec,
    pub lo: i32,
    pub hi: i32,
}

impl PicardWitness {
    /// Deterministic re-check against `T = P ⊗^L Q` built at bar length `len`.
    pub fn verify(&self, t: &DgBimodule, len: usize) -> bool {
        let a = t.left();
        let Ok(bar) = diagonal_bar(a, len) else { return false };
        let Ok(cochains) = bar.semifree.hom_into(t.module(), Some((-1, 1))) else { return false };
        let cx = &cochains.complex;
        if self.cocycle.max_index().is_some_and(|m| m >= cx.total_dim()) || !cx.is_homogeneous(&self.cocycle, 0) {
            return false;
        }
        if !cx.apply_d(&self.cocycle).is_zero() || cochains.value_on(&self.cocycle, 0) != self.element {
            return false;
        }
        multiplication_is_quasi_iso(t, &self.element, self.lo, self.hi)
    }
}

fn multiplication_map(t: &DgBimodule, c: &SVec) -> Option<ChainMap> {
    let a = t.left();
    let f = a.field();
    let cols = (0..a.hom_dim(0, 0)).map(|i| t.ract(0, 0, 0, c, &SVec::unit(i, f))).collect();
    let m = Matrix::from_columns(t.value(0, 0).total_dim(), f, cols).ok()?;
    ChainMap::new(a.hom(0, 0).clone(), t.value(0, 0).clone(), 0, m).ok()
}

fn multiplication_is_quasi_iso(t: &DgBimodule, c: &SVec, lo: i32, hi: i32) -> bool {
    let Some(map) = multiplication_map(t, c) else { return false };
    (lo..=hi).all(|n| {
        let (hs, ht) = (map.source.cohomology_dim(n), map.target.cohomology_dim(n));
        hs == ht && map.induced_map(n).rank() == hs
    })
}

/// One direction of the check: `T = P ⊗^L Q` against the diagonal.
#[derive(Clone, Debug)]
pub struct PicardSide {
    pub report: TruncationReport,
    /// Degrees checked, with `(dim H^n(A), dim H^n(T))`.
    pub dims: Vec<(i32, usize, usize)>,
    pub obstruction: Option<String>,
    pub witness: Option<PicardWitness>,
    pub tensor: DgBimodule,
}

impl PicardSide {
    pub fn verified(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct PicardReport {
    pub pq: PicardSide,
    pub qp: PicardSide,
}

impl PicardReport {
    /// Both tensors admit a verified quasi-isomorphism from the diagonal. `false` means
    /// "not verified", never "not invertible".
    pub fn verified(&self) -> bool {
        self.pq.verified() && self.qp.verified()
    }
}

fn degree_range(a: &Complex, t: &Complex, report: &TruncationReport) -> Option<(i32, i32)> {
    let lo = a.min_degree().into_iter().chain(t.min_degree()).min()?;
    let hi = a.max_degree().into_iter().chain(t.max_degree()).max()?;
    let lo = report.lo.map_or(lo, |w| w.max(lo));
    let hi = report.hi.map_or(hi, |w| w.min(hi));
    (lo <= hi).then_some((lo, hi))
}

fn side(a: &DgCategory, p: &DgBimodule, q: &DgBimodule, len: usize, seed: u64, trials: usize) -> Result<PicardSide> {
    let (t, report) = derived_tensor(p, q, len)?;
    let (end, value) = (a.hom(0, 0), t.value(0, 0));
    let Some((lo, hi)) = degree_range(end, value, &report) else {
        let obstruction = Some(format!("empty exact window ({report})"));
        return Ok(PicardSide { report, dims: Vec::new(), obstruction, witness: None, tensor: t });
    };
    let dims: Vec<(i32, usize, usize)> = (lo..=hi).map(|n| (n, end.cohomology_dim(n), value.cohomology_dim(n))).collect();
    if let Some(&(n, da, dt)) = dims.iter().find(|d| d.1 != d.2) {
        let obstruction = Some(format!("dim H^{n}: diagonal {da}, tensor {dt}"));
        return Ok(PicardSide { report, dims, obstruction, witness: None, tensor: t });
    }
    let bar = diagonal_bar(a, len)?;
    let cochains = bar.semifree.hom_into(t.module(), Some((-1, 1)))?;
    let h = cochains.complex.cohomology(0);
    let f = a.field();
    let mut rng = gen::derived_rng(seed, 0x70ca);
    let basis: Vec<SVec> = (0..h.dim()).map(|i| SVec::unit(i, f)).collect();
    let random = (0..trials).map(|_| gen::random_combination(&mut rng, f, &basis, RATIONAL_SAMPLE).0);
    for coords in basis.clone().into_iter().chain(random) {
        let cocycle = h.representative(&coords);
        let element = cochains.value_on(&cocycle, 0);
        if multiplication_is_quasi_iso(&t, &element, lo, hi) {
            let witness = PicardWitness { cocycle, element, lo, hi };
            return Ok(PicardSide { report, dims, obstruction: None, witness: Some(witness), tensor: t });
        }
    }
    let obstruction = Some(format!("no quasi-isomorphism from the diagonal found in {} basis and {trials} random classes", h.dim()));
    Ok(PicardSide { report, dims, obstruction, witness: None, tensor: t })
}

/// Semi-decision of `P ⊗^L Q ≃ A ≃ Q ⊗^L P` over a one-object category `A`.
pub fn picard_verify(a: &DgCategory, p: &DgBimodule, q: &DgBimodule, len: usize, seed: u64, trials: usize) -> Result<PicardReport> {
    if a.n_objects() != 1 {
        return Err(Error::Invalid("derived Picard verification needs a one-object category".into()));
    }
    for m in [p, q] {
        if m.left() != a || m.right() != a {
            return Err(Error::Invalid("bimodules must be over (A, A)".into()));
        }
    }
    Ok(PicardReport { pq: side(a, p, q, len, seed, trials)?, qp: side(a, q, p, len, seed, trials)? })
}
