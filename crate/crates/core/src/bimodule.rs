//! Bimodules as modules over `C ⊗ D^op`, and quasi-representability.
//!
//! For `F` over `(C, D)` the value `F(x, y)` carries a right `C`-action
//! `m · a = m ·(a ⊗ 1_y)` for `a ∈ C(x, x')` and a left `D`-action
//! `b · m = (−1)^{|b||m|} m ·(1_x ⊗ b)` for `b ∈ D(y', y)`.

use crate::complex::{is_odd, sign, ChainMap, Complex, TensorIndex};
use crate::dgcat::{koszul, tensor_cat, tensor_elements, tensor_hom_index, DgCategory, DgFunctor, MissBound};
use crate::error::{Error, Result};
use crate::gen;
use crate::linalg::{Field, Matrix, SVec};
use crate::module::{yoneda_right, DgModule};
use crate::validate::Validation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgBimodule {
    left: DgCategory,
    right: DgCategory,
    module: DgModule,
}

impl DgBimodule {
    /// Wraps a module over `C ⊗ D^op`.
    pub fn new(left: DgCategory, right: DgCategory, module: DgModule) -> Result<DgBimodule> {
        let expected = tensor_cat(&left, &right.opposite())?;
        if module.base() != &expected {
            return Err(Error::Invalid("module is not over C ⊗ D^op".into()));
        }
        Ok(DgBimodule { left, right, module })
    }

    /// Assembles a bimodule from its two one-sided actions.
    ///
    /// `values[x * |D| + y] = F(x, y)`; `ract(x, x2, y, m, a)` is `m · a ∈ F(x2, y)` for
    /// `a ∈ C(x, x2)`; `lact(x, y, y2, b, m)` is `b · m ∈ F(x, y2)` for `b ∈ D(y2, y)`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_actions(
        left: DgCategory,
        right: DgCategory,
        values: Vec<Complex>,
        names: Vec<Vec<String>>,
        ract: impl Fn(usize, usize, usize, usize, usize) -> SVec,
        lact: impl Fn(usize, usize, usize, usize, usize) -> SVec,
    ) -> Result<DgBimodule> {
        let f = left.field();
        let dop = right.opposite();
        let base = tensor_cat(&left, &dop)?;
        let nd = right.n_objects();
        let module = DgModule::from_fn(base, values.clone(), names, |s, t, m, k| {
            let ((x, y), (x2, y2)) = ((s / nd, s % nd), (t / nd, t % nd));
            let idx = tensor_hom_index(&left, &dop, x, y, x2, y2);
            let (a, b) = idx.pairs[k];
            let m_deg = values[s].degree_of(m);
            let a_deg = left.basis_degree(x, x2, a);
            let b_deg = right.basis_degree(y2, y, b);
            let ma = ract(x, x2, y, m, a);
            let mut out = SVec::new();
            for (i, c) in ma.iter() {
                out.axpy(c, &lact(x2, y, y2, b, i));
            }
            out.scale(&sign(is_odd(b_deg) && is_odd(m_deg + a_deg), f))
        })?;
        Ok(DgBimodule { left, right, module })
    }

    pub fn left(&self) -> &DgCategory {
        &self.left
    }

    pub fn right(&self) -> &DgCategory {
        &self.right
    }

    pub fn module(&self) -> &DgModule {
        &self.module
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.right.n_objects() + y
    }

    pub fn value(&self, x: usize, y: usize) -> &Complex {
        self.module.value(self.index(x, y))
    }

    pub fn basis_names(&self, x: usize, y: usize) -> &[String] {
        self.module.basis_names(self.index(x, y))
    }

    pub fn validate(&self) -> Validation {
        self.module.validate()
    }

    fn pair_index(&self, x: usize, y: usize, x2: usize, y2: usize) -> TensorIndex {
        tensor_hom_index(&self.left, &self.right.opposite(), x, y, x2, y2)
    }

    /// `m · a` for `m ∈ F(x, y)`, `a ∈ C(x, x2)`.
    pub fn ract(&self, x: usize, x2: usize, y: usize, m: &SVec, a: &SVec) -> SVec {
        let idx = self.pair_index(x, y, x2, y);
        let t = tensor_elements(&idx, a, self.right.unit_of(y));
        self.module.act(self.index(x, y), self.index(x2, y), m, &t)
    }

    /// `b · m` for `b ∈ D(y2, y)`, `m ∈ F(x, y)` homogeneous.
    pub fn lact(&self, x: usize, y: usize, y2: usize, b: &SVec, m: &SVec) -> SVec {
        let idx = self.pair_index(x, y, x, y2);
        let f = self.field();
        let mut out = SVec::new();
        let v = self.value(x, y);
        for (j, cb) in b.iter() {
            let bd = self.right.basis_degree(y2, y, j);
            for (i, cm) in m.iter() {
                let t = tensor_elements(&idx, self.left.unit_of(x), &SVec::unit(j, f));
                let r = self.module.act(self.index(x, y), self.index(x, y2), &SVec::unit(i, f), &t);
                let c = &(cb * cm) * &koszul(bd, v.degree_of(i), f);
                out.axpy(&c, &r);
            }
        }
        out
    }

    /// `F(x, −)` as a module over `D^op`.
    pub fn restrict_at(&self, x: usize) -> DgModule {
        let dop = self.right.opposite();
        let nd = self.right.n_objects();
        let f = self.field();
        let values = (0..nd).map(|y| self.value(x, y).clone()).collect();
        let names = (0..nd).map(|y| self.basis_names(x, y).to_vec()).collect();
        DgModule::from_fn(dop, values, names, |y, y2, m, b| {
            let idx = self.pair_index(x, y, x, y2);
            let t = tensor_elements(&idx, self.left.unit_of(x), &SVec::unit(b, f));
            self.module.act(self.index(x, y), self.index(x, y2), &SVec::unit(m, f), &t)
        })
        .expect("column of a well-formed bimodule")
    }

    /// `F(−, y)` as a module over `C`.
    pub fn restrict_right_at(&self, y: usize) -> DgModule {
        let nc = self.left.n_objects();
        let f = self.field();
        let values = (0..nc).map(|x| self.value(x, y).clone()).collect();
        let names = (0..nc).map(|x| self.basis_names(x, y).to_vec()).collect();
        DgModule::from_fn(self.left.clone(), values, names, |x, x2, m, a| {
            self.ract(x, x2, y, &SVec::unit(m, f), &SVec::unit(a, f))
        })
        .expect("row of a well-formed bimodule")
    }

    pub fn zero(left: &DgCategory, right: &DgCategory) -> Result<DgBimodule> {
        let base = tensor_cat(left, &right.opposite())?;
        Ok(DgBimodule { left: left.clone(), right: right.clone(), module: DgModule::zero(&base) })
    }

    pub fn direct_sum(&self, other: &DgBimodule) -> Result<DgBimodule> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::Invalid("direct sum of bimodules over different categories".into()));
        }
        Ok(DgBimodule { left: self.left.clone(), right: self.right.clone(), module: self.module.direct_sum(&other.module)? })
    }

    /// Cohomology dimensions `H^n(F(x, y))` for `n` in `lo..=hi`, for all pairs.
    pub fn cohomology_table(&self, lo: i32, hi: i32) -> Vec<Vec<usize>> {
        (0..self.module.values().len()).map(|k| self.module.cohomology_dims(k, lo, hi)).collect()
    }
}

/// `φ(f)(x, y) = D(y, f x)` for `f: C → D`.
pub fn phi(f: &DgFunctor) -> DgBimodule {
    let (c, d) = (&f.source, &f.target);
    let (nc, nd) = (c.n_objects(), d.n_objects());
    let field = c.field();
    let values = (0..nc * nd).map(|k| d.hom(k % nd, f.object_map[k / nd]).clone()).collect();
    let names = (0..nc * nd).map(|k| d.basis_names(k % nd, f.object_map[k / nd]).to_vec()).collect();
    DgBimodule::from_actions(
        c.clone(),
        d.clone(),
        values,
        names,
        |x, x2, y, m, a| {
            let (fx, fx2) = (f.object_map[x], f.object_map[x2]);
            d.compose(y, fx, fx2, &SVec::unit(m, field), f.component(x, x2).column(a))
        },
        |x, y, y2, b, m| d.compose_basis(y2, y, f.object_map[x], b, m).clone(),
    )
    .expect("φ of a well-formed functor")
}

/// The diagonal bimodule `C(y, x)`.
pub fn diagonal(c: &DgCategory) -> DgBimodule {
    phi(&DgFunctor::identity(c))
}

/// For each `x`, an object `y_x` of `D` and a degree-0 cocycle `c_x ∈ F(x, y_x)` such that
/// `β ↦ c_x · β` is a quasi-isomorphism `h_{y_x} → F(x, −)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrWitness {
    pub per_object: Vec<(usize, SVec)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnSearch {
    Found { y: usize, c: SVec },
    /// No candidate can work (exact obstruction or exhaustive search).
    Impossible(String),
    NotFound { bound: MissBound },
}

impl ColumnSearch {
    pub fn found(&self) -> Option<(usize, &SVec)> {
        match self {
            ColumnSearch::Found { y, c } => Some((*y, c)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrSearch {
    pub per_object: Vec<ColumnSearch>,
}

impl QrSearch {
    pub fn witness(&self) -> Option<QrWitness> {
        let per_object = self
            .per_object
            .iter()
            .map(|s| s.found().map(|(y, c)| (y, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(QrWitness { per_object })
    }
}

/// The Yoneda map `h_y → F(x, −)`, `β ↦ c · β`, at the object `y2`:
/// `D(y2, y) → F(x, y2)`.
pub fn yoneda_component(f: &DgBimodule, x: usize, y: usize, c: &SVec, y2: usize) -> Result<ChainMap> {
    let d = f.right();
    let field = f.field();
    let cols = (0..d.hom_dim(y2, y))
        .map(|b| {
            let idx = f.pair_index(x, y, x, y2);
            let t = tensor_elements(&idx, f.left.unit_of(x), &SVec::unit(b, field));
            f.module.act(f.index(x, y), f.index(x, y2), c, &t)
        })
        .collect();
    let m = Matrix::from_columns(f.value(x, y2).total_dim(), field, cols)?;
    ChainMap::new_unchecked(d.hom(y2, y).clone(), f.value(x, y2).clone(), 0, m)
}

/// Deterministic check that `c ∈ F(x, y)` induces a quasi-isomorphism `h_y → F(x, −)`.
pub fn verify_column(f: &DgBimodule, x: usize, y: usize, c: &SVec) -> bool {
    let v = f.value(x, y);
    if !v.is_homogeneous(c, 0) || !v.apply_d(c).is_zero() {
        return false;
    }
    (0..f.right().n_objects()).all(|y2| yoneda_component(f, x, y, c, y2).map(|m| m.is_quasi_iso()).unwrap_or(false))
}

impl QrWitness {
    pub fn verify(&self, f: &DgBimodule) -> bool {
        self.per_object.len() == f.left().n_objects()
            && self.per_object.iter().enumerate().all(|(x, (y, c))| verify_column(f, x, *y, c))
    }
}

fn support_dims(c: &Complex) -> Vec<(i32, usize)> {
    match (c.min_degree(), c.max_degree()) {
        (Some(lo), Some(hi)) => (lo..=hi).map(|n| (n, c.cohomology_dim(n))).filter(|p| p.1 != 0).collect(),
        _ => Vec::new(),
    }
}

/// Searches for a witness that `F` is right quasi-representable. With `candidates`, the
/// search for column `x` only considers the listed objects of `D`.
pub fn qr_test(f: &DgBimodule, seed: u64, trials: usize, candidates: Option<&[usize]>) -> QrSearch {
    let (nc, nd) = (f.left().n_objects(), f.right().n_objects());
    let d = f.right();
    let field = f.field();
    let size = match field {
        Field::Rationals => crate::dgcat::RATIONAL_SAMPLE,
        Field::Prime(p) => p,
    };
    let mut per_object = Vec::with_capacity(nc);
    for x in 0..nc {
        let column: Vec<Vec<(i32, usize)>> = (0..nd).map(|y2| support_dims(f.value(x, y2))).collect();
        let all: Vec<usize> = (0..nd).collect();
        let ys = candidates.unwrap_or(&all);
        let mut outcome: Option<ColumnSearch> = None;
        let mut best_bound: Option<MissBound> = None;
        for &y in ys {
            let rep: Vec<Vec<(i32, usize)>> = (0..nd).map(|y2| support_dims(d.hom(y2, y))).collect();
            if rep != column {
                continue;
            }
            let h = f.value(x, y).cohomology(0);
            let deg: usize = column.iter().flatten().map(|p| p.1).sum();
            let try_c = |coords: &SVec| -> Option<SVec> {
                let c = h.representative(coords);
                verify_column(f, x, y, &c).then_some(c)
            };
            let mut found = None;
            for i in 0..h.dim() {
                if let Some(c) = try_c(&SVec::unit(i, field)) {
                    found = Some(c);
                    break;
                }
            }
            if found.is_none() {
                let mut rng = gen::derived_rng(seed, (x * nd + y) as u64);
                for _ in 0..trials {
                    let coords =
                        SVec::from_pairs((0..h.dim()).map(|i| (i, gen::sample_scalar(&mut rng, field, size))).collect());
                    if let Some(c) = try_c(&coords) {
                        found = Some(c);
                        break;
                    }
                }
            }
            if let Some(c) = found {
                outcome = Some(ColumnSearch::Found { y, c });
                break;
            }
            best_bound = Some(MissBound { num: deg as u64, den: size, trials });
        }
        per_object.push(outcome.unwrap_or_else(|| match best_bound {
            Some(bound) => ColumnSearch::NotFound { bound },
            None => ColumnSearch::Impossible("no candidate object has matching cohomology dimensions".into()),
        }));
    }
    QrSearch { per_object }
}

/// The `H^0`-level functor `[C] → [D]` determined by a verified witness: objects
/// `x ↦ y_x`, and for each pair the matrix sending a class `a ∈ [C](x, x')` to the class
/// `β ∈ [D](y_x, y_x')` with `c_x' · β ≡ c_x · a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Functor {
    pub object_map: Vec<usize>,
    /// `maps[x * n + x']`, in the canonical `H^0` bases.
    pub maps: Vec<Matrix>,
}

pub fn qr_to_h0_functor(f: &DgBimodule, w: &QrWitness) -> Result<H0Functor> {
    if !w.verify(f) {
        return Err(Error::Invalid("witness does not verify".into()));
    }
    let (c, d) = (f.left(), f.right());
    let field = f.field();
    let n = c.n_objects();
    let object_map: Vec<usize> = w.per_object.iter().map(|p| p.0).collect();
    let mut maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for x2 in 0..n {
            let (y, y2) = (object_map[x], object_map[x2]);
            let (cx, cx2) = (&w.per_object[x].1, &w.per_object[x2].1);
            let hc = c.hom(x, x2).cohomology(0);
            let hd = d.hom(y, y2).cohomology(0);
            let target = f.value(x2, y).cohomology(0);
            // classes of c_x' · β for β in the H^0 basis of D(y, y2)
            let yon = yoneda_component(f, x2, y2, cx2, y)?;
            let cols: Vec<SVec> = hd
                .reps
                .iter()
                .map(|r| target.class_of(&yon.apply(r)).expect("cocycle"))
                .collect();
            let m = Matrix::from_columns(target.dim(), field, cols)?;
            let mut out = Vec::with_capacity(hc.dim());
            for r in &hc.reps {
                let img = f.ract(x, x2, y, cx, r);
                let cls = target.class_of(&img).expect("cocycle");
                let beta = m.solve(&cls)?.ok_or_else(|| Error::Invalid("witness map is not surjective on H^0".into()))?;
                out.push(beta);
            }
            maps.push(Matrix::from_columns(hd.dim(), field, out)?);
        }
    }
    Ok(H0Functor { object_map, maps })
}

/// The right Yoneda module `h_y` over `D^op` viewed as a bimodule over `(𝟏, D)`.
pub fn representable_bimodule(d: &DgCategory, y: usize) -> DgBimodule {
    let unit = DgCategory::unit(d.field());
    let m = yoneda_right(d, y);
    let nd = d.n_objects();
    let field = d.field();
    let values = (0..nd).map(|y2| m.value(y2).clone()).collect();
    let names = (0..nd).map(|y2| m.basis_names(y2).to_vec()).collect();
    DgBimodule::from_actions(
        unit,
        d.clone(),
        values,
        names,
        |_, _, _, mm, _| SVec::unit(mm, field),
        |_, y1, y2, b, mm| d.compose_basis(y2, y1, y, b, mm).clone(),
    )
    .expect("representable bimodule")
}
