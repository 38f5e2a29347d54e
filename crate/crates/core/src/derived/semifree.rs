//! Semi-free modules: free on homogeneous generators, with a differential on generators.

use std::collections::HashMap;

use crate::complex::{is_odd, sign, Complex};
use crate::dgcat::DgCategory;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SVec, Scalar};
use crate::module::DgModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub object: usize,
    pub degree: i32,
    pub label: String,
}

/// Coefficient of a generator in a differential: a scalar multiple of the unit, or a
/// general morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Scalar(Scalar),
    Morphism(SVec),
}

/// `F = ⊕_k ξ_k · C(o_k, −)` with `d ξ_k = Σ ξ_j · α_jk`, `α_jk ∈ C(o_j, o_k)`.
#[derive(Clone, Debug)]
pub struct SemiFree {
    base: DgCategory,
    gens: Vec<Generator>,
    diff: Vec<Vec<(usize, Coefficient)>>,
}

impl SemiFree {
    pub fn new(base: DgCategory) -> SemiFree {
        SemiFree { base, gens: Vec::new(), diff: Vec::new() }
    }

    pub fn base(&self) -> &DgCategory {
        &self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn differential(&self, k: usize) -> &[(usize, Coefficient)] {
        &self.diff[k]
    }

    /// Adds a generator whose differential is filled in later with [`SemiFree::set_differential`].
    pub fn push(&mut self, object: usize, degree: i32, label: String) -> usize {
        self.gens.push(Generator { object, degree, label });
        self.diff.push(Vec::new());
        self.gens.len() - 1
    }

    pub fn set_differential(&mut self, k: usize, terms: Vec<(usize, Coefficient)>) -> Result<()> {
        let g = &self.gens[k];
        for (j, c) in &terms {
            let h = self.gens.get(*j).ok_or_else(|| Error::OutOfRange(format!("generator {j}")))?;
            let want = g.degree + 1 - h.degree;
            match c {
                Coefficient::Scalar(_) => {
                    if h.object != g.object || want != 0 {
                        return Err(Error::Invalid(format!(
                            "d({}) has a scalar term on {} of the wrong object or degree",
                            g.label, h.label
                        )));
                    }
                }
                Coefficient::Morphism(a) => {
                    let hom = self.base.hom(h.object, g.object);
                    if a.max_index().is_some_and(|m| m >= hom.total_dim()) || !hom.is_homogeneous(a, want) {
                        return Err(Error::Invalid(format!(
                            "d({}) has a term on {} that is not a morphism of degree {want}",
                            g.label, h.label
                        )));
                    }
                }
            }
        }
        self.diff[k] = terms;
        Ok(())
    }

    /// The underlying module: `F(y) = ⊕_k ξ_k · C(o_k, y)`, basis sorted by degree.
    pub fn materialize(&self) -> Result<DgModule> {
        Ok(self.materialize_with_layout()?.0)
    }

    /// [`SemiFree::materialize`] together with `layout[y][i] = (k, a)`: basis element `i` of
    /// `F(y)` is `ξ_k · a`.
    pub fn materialize_with_layout(&self) -> Result<(DgModule, Vec<Vec<(usize, usize)>>)> {
        let c = &self.base;
        let f = c.field();
        let n = c.n_objects();
        let mut values = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        let mut position: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(n);
        let mut layout: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
        for y in 0..n {
            let mut cells: Vec<(i32, usize, usize)> = Vec::new();
            for (k, g) in self.gens.iter().enumerate() {
                for a in 0..c.hom_dim(g.object, y) {
                    cells.push((g.degree + c.basis_degree(g.object, y, a), k, a));
                }
            }
            cells.sort();
            let pos: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(p, &(_, k, a))| ((k, a), p)).collect();
            let mut cols = Vec::with_capacity(cells.len());
            for &(_, k, a) in &cells {
                let g = &self.gens[k];
                let ea = SVec::unit(a, f);
                let mut terms: Vec<(usize, Scalar)> = Vec::new();
                for (j, coeff) in &self.diff[k] {
                    let oj = self.gens[*j].object;
                    let img = match coeff {
                        Coefficient::Scalar(s) => ea.scale(s),
                        Coefficient::Morphism(alpha) => c.compose(oj, g.object, y, alpha, &ea),
                    };
                    for (b, v) in img.iter() {
                        terms.push((pos[&(*j, b)], v.clone()));
                    }
                }
                let s = sign(is_odd(g.degree), f);
                for (b, v) in c.hom(g.object, y).d_of(a).iter() {
                    terms.push((pos[&(k, b)], v * &s));
                }
                cols.push(SVec::from_pairs(terms));
            }
            let degrees = cells.iter().map(|t| t.0).collect();
            let d = Matrix::from_columns(cells.len(), f, cols)?;
            values.push(Complex::new(f, degrees, d)?);
            names.push(
                cells
                    .iter()
                    .map(|&(_, k, a)| format!("{}·{}", self.gens[k].label, c.basis_names(self.gens[k].object, y)[a]))
                    .collect(),
            );
            position.push(pos);
            layout.push(cells.iter().map(|&(_, k, a)| (k, a)).collect());
        }
        let module = DgModule::from_fn(c.clone(), values, names, |y, z, m, b| {
            let (k, a) = layout[y][m];
            let o = self.gens[k].object;
            c.compose_basis(o, y, z, a, b).remap(|q| position[z][&(k, q)])
        })?;
        Ok((module, layout))
    }

    /// The strict hom complex `Hom(F, G)`; a cochain `(k, g)` sends `ξ_k` to basis `g` of
    /// `G(o_k)` and has degree `|g| − |ξ_k|`. With `window = Some((lo, hi))` only cochains of
    /// degree in `lo..=hi` are kept, so `H^n` is exact for `lo < n < hi`.
    pub fn hom_into(&self, g: &DgModule, window: Option<(i32, i32)>) -> Result<Cochains> {
        if g.base() != &self.base {
            return Err(Error::Invalid("hom from a semi-free module into a module over another base".into()));
        }
        let c = &self.base;
        let f = c.field();
        let keep = |d: i32| window.map(|(lo, hi)| lo <= d && d <= hi).unwrap_or(true);
        let mut cells: Vec<(i32, usize, usize)> = Vec::new();
        for (k, gen) in self.gens.iter().enumerate() {
            let v = g.value(gen.object);
            for b in 0..v.total_dim() {
                let d = v.degree_of(b) - gen.degree;
                if keep(d) {
                    cells.push((d, k, b));
                }
            }
        }
        cells.sort();
        let mut position: Vec<Vec<Option<usize>>> = self.gens.iter().map(|gen| vec![None; g.dim(gen.object)]).collect();
        for (p, &(_, k, b)) in cells.iter().enumerate() {
            position[k][b] = Some(p);
        }
        // rev[j]: (k, coefficient) with ξ_j occurring in d ξ_k
        let mut rev: Vec<Vec<(usize, &Coefficient)>> = vec![Vec::new(); self.gens.len()];
        for (k, terms) in self.diff.iter().enumerate() {
            for (j, coeff) in terms {
                rev[*j].push((k, coeff));
            }
        }
        let mut cols = Vec::with_capacity(cells.len());
        for &(deg, k, b) in &cells {
            let gen = &self.gens[k];
            let v = g.value(gen.object);
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            for (h, x) in v.d_of(b).iter() {
                if let Some(p) = position[k][h] {
                    terms.push((p, x.clone()));
                }
            }
            let s = sign(!is_odd(deg), f);
            let eb = SVec::unit(b, f);
            for &(l, coeff) in &rev[k] {
                let ol = self.gens[l].object;
                let img = match coeff {
                    Coefficient::Scalar(x) => eb.scale(x),
                    Coefficient::Morphism(alpha) => g.act(gen.object, ol, &eb, alpha),
                };
                for (h, x) in img.iter() {
                    if let Some(p) = position[l][h] {
                        terms.push((p, x * &s));
                    }
                }
            }
            cols.push(SVec::from_pairs(terms));
        }
        let degrees = cells.iter().map(|t| t.0).collect();
        let d = Matrix::from_columns(cells.len(), f, cols)?;
        let complex = Complex::new_unchecked(f, degrees, d)?;
        Ok(Cochains { complex, cells: cells.into_iter().map(|(_, k, b)| (k, b)).collect() })
    }
}

/// A (possibly degree-windowed) strict hom complex out of a semi-free module.
#[derive(Clone, Debug)]
pub struct Cochains {
    pub complex: Complex,
    /// Cochain basis element `i` sends generator `cells[i].0` to basis `cells[i].1`.
    pub cells: Vec<(usize, usize)>,
}

impl Cochains {
    /// Value of a cochain on generator `k`, in the target's basis.
    pub fn value_on(&self, v: &SVec, k: usize) -> SVec {
        SVec::from_pairs(
            v.iter()
                .filter(|(i, _)| self.cells[*i].0 == k)
                .map(|(i, c)| (self.cells[i].1, c.clone()))
                .collect(),
        )
    }
}
