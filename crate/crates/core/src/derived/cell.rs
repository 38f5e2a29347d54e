//! Finite cell modules over `C^op`, built by attaching cells `k[−d] ⊗ h_x` one at a time.

use crate::dgcat::DgCategory;
use crate::error::{Error, Result};
use crate::linalg::SVec;
use crate::module::DgModule;

use super::semifree::{Coefficient, SemiFree};

/// Attach a cell at `object` in `degree`, glued along `d(cell) = Σ earlier_j · α_j` with
/// `α_j ∈ C(object, x_j)`, a morphism `h_object → h_{x_j}` of degree `degree + 1 − |earlier_j|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStep {
    pub name: String,
    pub object: usize,
    pub degree: i32,
    pub boundary: Vec<(usize, SVec)>,
}

/// The cell module of a plan, as a module over `C^op`. Each boundary must be a cycle of the
/// module built so far.
pub fn build_cell_module(c: &DgCategory, plan: &[CellStep]) -> Result<DgModule> {
    let cop = c.opposite();
    let mut sf = SemiFree::new(cop);
    for (k, step) in plan.iter().enumerate() {
        if step.object >= c.n_objects() {
            return Err(Error::OutOfRange(format!("cell {} sits at unknown object {}", step.name, step.object)));
        }
        if let Some((j, _)) = step.boundary.iter().find(|(j, _)| *j >= k) {
            return Err(Error::Invalid(format!("cell {} is attached along a later cell {j}", step.name)));
        }
        sf.push(step.object, step.degree, step.name.clone());
        let terms = step.boundary.iter().map(|(j, a)| (*j, Coefficient::Morphism(a.clone()))).collect();
        sf.set_differential(k, terms)?;
        // d² = 0 on the new cell: its boundary must be a cycle
        let m = sf.materialize().map_err(|e| match e {
            Error::Invalid(msg) => Error::Invalid(format!("the attaching map of cell {} is not a cycle: {msg}", step.name)),
            other => other,
        })?;
        let v = m.validate();
        if !v.passed() {
            return Err(Error::Invalid(format!("cell {}: {}", step.name, v)));
        }
    }
    sf.materialize()
}
