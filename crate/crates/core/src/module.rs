//! dg-modules over a dg-category, stored as right actions.
//!
//! A module `F` over `C` assigns a complex `F(x)` to each object and an action
//! `F(x) ⊗ C(x, y) → F(y)`, written `m · a`, with `(m · a) · b = m · (ab)`, `m · 1 = m` and
//! `d(m · a) = dm · a + (−1)^{|m|} m · da`. This is the covariant module `C → C(k)`;
//! modules over `C^op` are the contravariant ones.

use crate::complex::{is_odd, sign, ChainMap, Complex, HomIndex};
use crate::dgcat::{render_lincomb, DgCategory, DgFunctor};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Matrix, SVec};
use crate::validate::{Axiom, Validation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    base: DgCategory,
    values: Vec<Complex>,
    names: Vec<Vec<String>>,
    /// `act[x * n + y][m * dim C(x,y) + a] = m · a`.
    act: Vec<Vec<SVec>>,
}

impl DgModule {
    pub fn from_parts(base: DgCategory, values: Vec<Complex>, names: Vec<Vec<String>>, act: Vec<Vec<SVec>>) -> Result<DgModule> {
        let n = base.n_objects();
        if values.len() != n || names.len() != n || act.len() != n * n {
            return Err(Error::Dimension(format!("module tables do not match {n} objects")));
        }
        for x in 0..n {
            if values[x].field() != base.field() {
                return Err(Error::Field("module value over a different field".into()));
            }
            if names[x].len() != values[x].total_dim() {
                return Err(Error::Dimension(format!("value at {} has the wrong number of basis names", base.object_name(x))));
            }
            for y in 0..n {
                let t = &act[x * n + y];
                if t.len() != values[x].total_dim() * base.hom_dim(x, y) {
                    return Err(Error::Dimension(format!(
                        "action table {}→{} has {} entries",
                        base.object_name(x),
                        base.object_name(y),
                        t.len()
                    )));
                }
                if t.iter().any(|v| v.max_index().is_some_and(|m| m >= values[y].total_dim())) {
                    return Err(Error::OutOfRange(format!(
                        "action {}→{} lands outside the value at {}",
                        base.object_name(x),
                        base.object_name(y),
                        base.object_name(y)
                    )));
                }
            }
        }
        Ok(DgModule { base, values, names, act })
    }

    /// Builds the action table by calling `act(x, y, m, a)` on all basis pairs.
    pub fn from_fn(
        base: DgCategory,
        values: Vec<Complex>,
        names: Vec<Vec<String>>,
        mut act: impl FnMut(usize, usize, usize, usize) -> SVec,
    ) -> Result<DgModule> {
        let n = base.n_objects();
        if values.len() != n {
            return Err(Error::Dimension(format!("expected {n} module values")));
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let da = base.hom_dim(x, y);
                let mut t = Vec::with_capacity(values[x].total_dim() * da);
                for m in 0..values[x].total_dim() {
                    for a in 0..da {
                        t.push(act(x, y, m, a));
                    }
                }
                table.push(t);
            }
        }
        DgModule::from_parts(base, values, names, table)
    }

    pub fn zero(base: &DgCategory) -> DgModule {
        let f = base.field();
        let n = base.n_objects();
        DgModule::from_fn(base.clone(), vec![Complex::zero(f); n], vec![Vec::new(); n], |_, _, _, _| SVec::new())
            .expect("zero module")
    }

    pub fn base(&self) -> &DgCategory {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn value(&self, x: usize) -> &Complex {
        &self.values[x]
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn basis_names(&self, x: usize) -> &[String] {
        &self.names[x]
    }

    pub fn dim(&self, x: usize) -> usize {
        self.values[x].total_dim()
    }

    pub fn act_basis(&self, x: usize, y: usize, m: usize, a: usize) -> &SVec {
        let n = self.base.n_objects();
        &self.act[x * n + y][m * self.base.hom_dim(x, y) + a]
    }

    /// `m · a` for `m ∈ F(x)`, `a ∈ C(x, y)`.
    pub fn act(&self, x: usize, y: usize, m: &SVec, a: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, cm) in m.iter() {
            for (j, ca) in a.iter() {
                let c = cm * ca;
                for (k, e) in self.act_basis(x, y, i, j).iter() {
                    terms.push((k, &c * e));
                }
            }
        }
        SVec::from_pairs(terms)
    }

    pub fn render(&self, x: usize, v: &SVec) -> String {
        render_lincomb(v, &self.names[x])
    }

    #[allow(clippy::type_complexity)]
    pub fn into_parts(self) -> (DgCategory, Vec<Complex>, Vec<Vec<String>>, Vec<Vec<SVec>>) {
        (self.base, self.values, self.names, self.act)
    }

    /// Same base and action with values renamed.
    pub fn with_basis_names(mut self, names: Vec<Vec<String>>) -> Result<DgModule> {
        if names.len() != self.values.len() || names.iter().zip(&self.values).any(|(ns, v)| ns.len() != v.total_dim()) {
            return Err(Error::Dimension("wrong number of basis names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn validate(&self) -> Validation {
        let mut report = Validation::new();
        let c = &self.base;
        let n = c.n_objects();
        let f = self.field();
        let obj = |x: usize| c.object_name(x).to_string();
        for x in 0..n {
            let v = &self.values[x];
            for i in 0..v.total_dim() {
                report.check(v.apply_d(v.d_of(i)).is_zero(), Axiom::DSquared, || {
                    format!("d(d({})) ≠ 0 in F({})", self.names[x][i], obj(x))
                });
            }
            for m in 0..v.total_dim() {
                let e = SVec::unit(m, f);
                report.check(self.act(x, x, &e, c.unit_of(x)) == e, Axiom::Unit, || {
                    format!("{} · 1_{} ≠ {}", self.names[x][m], obj(x), self.names[x][m])
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (fx, fy, cxy) = (&self.values[x], &self.values[y], c.hom(x, y));
                for m in 0..fx.total_dim() {
                    let em = SVec::unit(m, f);
                    let dm = fx.d_of(m);
                    for a in 0..cxy.total_dim() {
                        let ma = self.act_basis(x, y, m, a);
                        let want = fx.degree_of(m) + cxy.degree_of(a);
                        report.check(fy.is_homogeneous(ma, want), Axiom::Degree, || {
                            format!("{} · {} is not of degree {}", self.names[x][m], c.basis_names(x, y)[a], want)
                        });
                        let lhs = fy.apply_d(ma);
                        let ea = SVec::unit(a, f);
                        let rhs = self
                            .act(x, y, dm, &ea)
                            .add_scaled(&sign(is_odd(fx.degree_of(m)), f), &self.act(x, y, &em, cxy.d_of(a)));
                        report.check(lhs == rhs, Axiom::Leibniz, || {
                            format!("d({} · {}) violates Leibniz", self.names[x][m], c.basis_names(x, y)[a])
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for m in 0..self.dim(x) {
                        let em = SVec::unit(m, f);
                        for a in 0..c.hom_dim(x, y) {
                            let ma = self.act_basis(x, y, m, a);
                            for b in 0..c.hom_dim(y, z) {
                                let left = self.act(y, z, ma, &SVec::unit(b, f));
                                let right = self.act(x, z, &em, c.compose_basis(x, y, z, a, b));
                                report.check(left == right, Axiom::Associativity, || {
                                    format!(
                                        "({} · {}) · {} ≠ {} · ({} {}) at {}→{}→{}",
                                        self.names[x][m],
                                        c.basis_names(x, y)[a],
                                        c.basis_names(y, z)[b],
                                        self.names[x][m],
                                        c.basis_names(x, y)[a],
                                        c.basis_names(y, z)[b],
                                        obj(x),
                                        obj(y),
                                        obj(z)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Dimensions of `H^n(F(x))` for `n` in `lo..=hi`.
    pub fn cohomology_dims(&self, x: usize, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|n| self.values[x].cohomology_dim(n)).collect()
    }

    /// Direct sum `F ⊕ G` object-wise.
    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule> {
        if self.base != other.base {
            return Err(Error::Invalid("direct sum of modules over different bases".into()));
        }
        let n = self.base.n_objects();
        let mut values = Vec::with_capacity(n);
        let mut pos = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        for x in 0..n {
            let (s, l, r) = self.values[x].direct_sum(&other.values[x]);
            let mut nm = vec![String::new(); s.total_dim()];
            for (i, &p) in l.iter().enumerate() {
                nm[p] = format!("{}.L", self.names[x][i]);
            }
            for (i, &p) in r.iter().enumerate() {
                nm[p] = format!("{}.R", other.names[x][i]);
            }
            values.push(s);
            names.push(nm);
            pos.push((l, r));
        }
        let mut back = Vec::with_capacity(n);
        for x in 0..n {
            let mut b = vec![(0usize, 0usize); values[x].total_dim()];
            for (i, &p) in pos[x].0.iter().enumerate() {
                b[p] = (0, i);
            }
            for (i, &p) in pos[x].1.iter().enumerate() {
                b[p] = (1, i);
            }
            back.push(b);
        }
        DgModule::from_fn(self.base.clone(), values, names, |x, y, m, a| {
            let (side, i) = back[x][m];
            if side == 0 {
                self.act_basis(x, y, i, a).remap(|k| pos[y].0[k])
            } else {
                other.act_basis(x, y, i, a).remap(|k| pos[y].1[k])
            }
        })
    }

    /// The strict hom complex `Hom(F, G)` of module maps of all degrees.
    pub fn strict_hom(&self, other: &DgModule) -> Result<StrictHom> {
        StrictHom::new(self, other)
    }
}

/// `h^z = C(z, −)` with action by composition.
pub fn yoneda_left(c: &DgCategory, z: usize) -> DgModule {
    let n = c.n_objects();
    let values = (0..n).map(|x| c.hom(z, x).clone()).collect();
    let names = (0..n).map(|x| c.basis_names(z, x).to_vec()).collect();
    DgModule::from_fn(c.clone(), values, names, |x, y, m, a| c.compose_basis(z, x, y, m, a).clone())
        .expect("yoneda module")
}

/// `h_x = C(−, x)` as a module over `C^op`.
pub fn yoneda_right(c: &DgCategory, x: usize) -> DgModule {
    yoneda_left(&c.opposite(), x)
}

/// `f^* G`: the module `x ↦ G(f x)` with action through `f`.
pub fn restrict_along(f: &DgFunctor, g: &DgModule) -> Result<DgModule> {
    if g.base() != &f.target {
        return Err(Error::Invalid("module is not over the functor's target".into()));
    }
    let c = &f.source;
    let n = c.n_objects();
    let values = (0..n).map(|x| g.value(f.object_map[x]).clone()).collect();
    let names = (0..n).map(|x| g.basis_names(f.object_map[x]).to_vec()).collect();
    DgModule::from_fn(c.clone(), values, names, |x, y, m, a| {
        let (fx, fy) = (f.object_map[x], f.object_map[y]);
        g.act(fx, fy, &SVec::unit(m, c.field()), f.component(x, y).column(a))
    })
}

/// Strict induction `f_! F = F ⊗_C D`: at `d`, the quotient of `⊕_x F(x) ⊗ D(f x, d)` by
/// `(m · a) ⊗ β − m ⊗ f(a) β`.
pub fn induct_along(f: &DgFunctor, module: &DgModule) -> Result<DgModule> {
    if module.base() != &f.source {
        return Err(Error::Invalid("module is not over the functor's source".into()));
    }
    let (c, d) = (&f.source, &f.target);
    let field = c.field();
    let (nc, nd) = (c.n_objects(), d.n_objects());
    // ambient complexes V(t) = ⊕_x F(x) ⊗ D(f x, t)
    struct Ambient {
        complex: Complex,
        /// per source object x: tensor index and placement
        index: Vec<crate::complex::TensorIndex>,
        pos: Vec<Vec<usize>>,
        /// ambient basis element → (x, m, β)
        back: Vec<(usize, usize, usize)>,
    }
    let mut ambients = Vec::with_capacity(nd);
    for t in 0..nd {
        let mut parts = Vec::with_capacity(nc);
        let mut index = Vec::with_capacity(nc);
        for x in 0..nc {
            let (p, idx) = module.value(x).tensor(d.hom(f.object_map[x], t));
            parts.push(p);
            index.push(idx);
        }
        let refs: Vec<&Complex> = parts.iter().collect();
        let (complex, pos) = Complex::direct_sum_all(field, &refs);
        let mut back = vec![(0, 0, 0); complex.total_dim()];
        for x in 0..nc {
            for (k, &(m, b)) in index[x].pairs.iter().enumerate() {
                back[pos[x][k]] = (x, m, b);
            }
        }
        ambients.push(Ambient { complex, index, pos, back });
    }
    let place = |amb: &Ambient, x: usize, m: &SVec, beta: &SVec| -> SVec {
        let mut terms = Vec::new();
        for (i, cm) in m.iter() {
            for (j, cb) in beta.iter() {
                terms.push((amb.pos[x][amb.index[x].index(i, j)], cm * cb));
            }
        }
        SVec::from_pairs(terms)
    };
    let mut quotients = Vec::with_capacity(nd);
    for t in 0..nd {
        let amb = &ambients[t];
        let mut relations = Vec::new();
        for x in 0..nc {
            for y in 0..nc {
                let (fx, fy) = (f.object_map[x], f.object_map[y]);
                for m in 0..module.dim(x) {
                    let em = SVec::unit(m, field);
                    for a in 0..c.hom_dim(x, y) {
                        let ma = module.act_basis(x, y, m, a);
                        let fa = f.component(x, y).column(a);
                        for b in 0..d.hom_dim(fy, t) {
                            let eb = SVec::unit(b, field);
                            let left = place(amb, y, ma, &eb);
                            let fab = d.compose(fx, fy, t, fa, &eb);
                            let right = place(amb, x, &em, &fab);
                            let r = left.sub(&right);
                            if !r.is_zero() {
                                relations.push(r);
                            }
                        }
                    }
                }
            }
        }
        quotients.push(amb.complex.quotient(relations));
    }
    let values = quotients.iter().map(|q| q.complex.clone()).collect();
    let names = (0..nd)
        .map(|t| {
            quotients[t]
                .kept
                .iter()
                .map(|&i| {
                    let (x, m, b) = ambients[t].back[i];
                    format!("{}⊗{}", module.basis_names(x)[m], d.basis_names(f.object_map[x], t)[b])
                })
                .collect()
        })
        .collect();
    DgModule::from_fn(d.clone(), values, names, |t, u, k, g| {
        let i = quotients[t].kept[k];
        let (x, m, b) = ambients[t].back[i];
        let fx = f.object_map[x];
        let bg = d.compose_basis(fx, t, u, b, g);
        let v = place(&ambients[u], x, &SVec::unit(m, field), bg);
        quotients[u].project(&v)
    })
}

/// A degree-0 morphism of modules over the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: DgModule,
    pub target: DgModule,
    /// `components[x]`: matrix `F(x) → G(x)`.
    pub components: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(source: DgModule, target: DgModule, components: Vec<Matrix>) -> Result<ModuleMap> {
        if source.base != target.base {
            return Err(Error::Invalid("module map between different bases".into()));
        }
        let n = source.base.n_objects();
        if components.len() != n {
            return Err(Error::Dimension("one component per object expected".into()));
        }
        for (x, m) in components.iter().enumerate() {
            if m.ncols() != source.dim(x) || m.nrows() != target.dim(x) {
                return Err(Error::Dimension(format!("component at {} has the wrong shape", source.base.object_name(x))));
            }
        }
        Ok(ModuleMap { source, target, components })
    }

    pub fn component_map(&self, x: usize) -> Result<ChainMap> {
        ChainMap::new_unchecked(self.source.value(x).clone(), self.target.value(x).clone(), 0, self.components[x].clone())
    }

    pub fn validate(&self) -> Validation {
        let mut report = Validation::new();
        let c = &self.source.base;
        let n = c.n_objects();
        let f = c.field();
        for x in 0..n {
            match self.component_map(x) {
                Ok(m) => report.check(m.commutation_violation().is_none(), Axiom::ChainMap, || {
                    format!("component at {} does not commute with d", c.object_name(x))
                }),
                Err(e) => report.check(false, Axiom::Degree, || format!("component at {}: {e}", c.object_name(x))),
            }
        }
        for x in 0..n {
            for y in 0..n {
                for m in 0..self.source.dim(x) {
                    let em = SVec::unit(m, f);
                    let fm = self.components[x].column(m);
                    for a in 0..c.hom_dim(x, y) {
                        let ea = SVec::unit(a, f);
                        let lhs = self.components[y].apply(&self.source.act(x, y, &em, &ea));
                        let rhs = self.target.act(x, y, fm, &ea);
                        report.check(lhs == rhs, Axiom::Functoriality, || {
                            format!(
                                "f({} · {}) ≠ f({}) · {}",
                                self.source.names[x][m],
                                c.basis_names(x, y)[a],
                                self.source.names[x][m],
                                c.basis_names(x, y)[a]
                            )
                        });
                    }
                }
            }
        }
        report
    }

    /// Whether every component is a quasi-isomorphism.
    pub fn is_equivalence(&self) -> bool {
        (0..self.components.len()).all(|x| self.component_map(x).map(|m| m.is_quasi_iso()).unwrap_or(false))
    }
}

/// `Hom(F, G)`: the subcomplex of `⊕_x Hom(F(x), G(x))` of maps commuting with the action.
#[derive(Clone, Debug)]
pub struct StrictHom {
    pub complex: Complex,
    /// Basis of the subcomplex, in ambient coordinates.
    pub basis: Vec<SVec>,
    ambient: Complex,
    index: Vec<HomIndex>,
    back: Vec<(usize, usize)>,
    pos: Vec<Vec<usize>>,
    ech: Echelon,
    source_dims: Vec<usize>,
}

impl StrictHom {
    fn new(src: &DgModule, tgt: &DgModule) -> Result<StrictHom> {
        if src.base != tgt.base {
            return Err(Error::Invalid("hom between modules over different bases".into()));
        }
        let c = &src.base;
        let field = c.field();
        let n = c.n_objects();
        let mut parts = Vec::with_capacity(n);
        let mut index = Vec::with_capacity(n);
        for x in 0..n {
            let (h, idx) = src.value(x).hom(tgt.value(x));
            parts.push(h);
            index.push(idx);
        }
        let refs: Vec<&Complex> = parts.iter().collect();
        let (ambient, pos) = Complex::direct_sum_all(field, &refs);
        let mut back = vec![(0, 0); ambient.total_dim()];
        for x in 0..n {
            for (k, &p) in pos[x].iter().enumerate() {
                back[p] = (x, k);
            }
        }
        // Constraint rows indexed by (x, y, m, a, g).
        let mut offsets = vec![0usize; n * n];
        let mut total = 0;
        for x in 0..n {
            for y in 0..n {
                offsets[x * n + y] = total;
                total += src.dim(x) * c.hom_dim(x, y) * tgt.dim(y);
            }
        }
        let row = |x: usize, y: usize, m: usize, a: usize, g: usize| {
            offsets[x * n + y] + (m * c.hom_dim(x, y) + a) * tgt.dim(y) + g
        };
        // occurrences[y][p]: (x, m, a, coeff) with p appearing in m · a
        let mut occurrences: Vec<Vec<Vec<(usize, usize, usize, crate::linalg::Scalar)>>> =
            (0..n).map(|y| vec![Vec::new(); src.dim(y)]).collect();
        for x in 0..n {
            for y in 0..n {
                for m in 0..src.dim(x) {
                    for a in 0..c.hom_dim(x, y) {
                        for (p, coeff) in src.act_basis(x, y, m, a).iter() {
                            occurrences[y][p].push((x, m, a, coeff.clone()));
                        }
                    }
                }
            }
        }
        let mut cols = Vec::with_capacity(ambient.total_dim());
        for &(x, k) in &back {
            let (p, q) = index[x].pairs[k];
            let mut terms = Vec::new();
            // φ_x(m · a) with φ_x = E_{q,p}
            for (x2, m, a, coeff) in &occurrences[x][p] {
                terms.push((row(*x2, x, *m, *a, q), coeff.clone()));
            }
            // −φ_x(m) · a for m = p
            for z in 0..n {
                for a in 0..c.hom_dim(x, z) {
                    for (g, coeff) in tgt.act_basis(x, z, q, a).iter() {
                        terms.push((row(x, z, p, a, g), -coeff));
                    }
                }
            }
            cols.push(SVec::from_pairs(terms));
        }
        let constraint = Matrix::from_columns(total, field, cols)?;
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for deg in ambient.support() {
            let r = ambient.range(deg);
            let block = constraint.submatrix(0..total, r.clone());
            for k in block.kernel_basis().columns() {
                basis.push(k.remap(|i| i + r.start));
                degrees.push(deg);
            }
        }
        let mut ech = Echelon::tracking(field);
        for b in &basis {
            ech.insert(b.clone());
        }
        let dcols = basis
            .iter()
            .map(|b| ech.express(&ambient.apply_d(b)).expect("the equalizer is a subcomplex"))
            .collect();
        let d = Matrix::from_columns(basis.len(), field, dcols)?;
        let complex = Complex::new(field, degrees, d)?;
        let source_dims = (0..n).map(|x| src.dim(x)).collect();
        Ok(StrictHom { complex, basis, ambient, index, back, pos, ech, source_dims })
    }

    pub fn ambient(&self) -> &Complex {
        &self.ambient
    }

    /// Coordinates of the module map with the given per-object matrices, if it is one.
    pub fn coords_of(&self, components: &[Matrix]) -> Option<SVec> {
        let mut terms = Vec::new();
        for (x, m) in components.iter().enumerate() {
            for (p, col) in m.columns().iter().enumerate() {
                for (q, c) in col.iter() {
                    terms.push((self.pos[x][self.index[x].index(p, q)], c.clone()));
                }
            }
        }
        self.ech.express(&SVec::from_pairs(terms))
    }

    /// Components of a hom element (given in subcomplex coordinates) as matrices per object.
    pub fn components(&self, v: &SVec) -> Vec<Matrix> {
        let field = self.complex.field();
        let mut amb = SVec::new();
        for (i, c) in v.iter() {
            amb.axpy(c, &self.basis[i]);
        }
        let n = self.index.len();
        let mut per: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); n];
        for (i, c) in amb.iter() {
            let (x, k) = self.back[i];
            per[x].push((k, c.clone()));
        }
        per.into_iter()
            .enumerate()
            .map(|(x, terms)| self.index[x].to_matrix(&SVec::from_pairs(terms), self.source_dims[x], field))
            .collect()
    }
}

/// The dg-category whose objects are `modules` and whose homs are strict hom complexes,
/// with `μ(f, g) = (−1)^{|f||g|} g ∘ f`.
pub fn module_category(base: &DgCategory, modules: &[DgModule], names: Vec<String>) -> Result<(DgCategory, Vec<StrictHom>)> {
    let field = base.field();
    let n = modules.len();
    if names.len() != n {
        return Err(Error::Dimension("one name per module".into()));
    }
    let mut homs = Vec::with_capacity(n * n);
    for a in modules {
        for b in modules {
            homs.push(a.strict_hom(b)?);
        }
    }
    let basis_names = homs
        .iter()
        .map(|h| (0..h.complex.total_dim()).map(|i| format!("φ{i}")).collect())
        .collect();
    let mut components: Vec<Vec<Vec<Matrix>>> = Vec::with_capacity(n * n);
    for h in &homs {
        components.push((0..h.complex.total_dim()).map(|i| h.components(&SVec::unit(i, field))).collect());
    }
    let mut failure = None;
    let units = (0..n)
        .map(|x| {
            let ids: Vec<Matrix> = (0..base.n_objects()).map(|z| Matrix::identity(modules[x].dim(z), field)).collect();
            homs[x * n + x].coords_of(&ids).unwrap_or_default()
        })
        .collect();
    let cat = DgCategory::from_fn(
        field,
        names,
        homs.iter().map(|h| h.complex.clone()).collect(),
        basis_names,
        |x, y, z, i, j| {
            let (f, g) = (&components[x * n + y][i], &components[y * n + z][j]);
            let prod: Vec<Matrix> = g.iter().zip(f).map(|(g, f)| g.mul(f).expect("composable")).collect();
            let odd = is_odd(homs[x * n + y].complex.degree_of(i)) && is_odd(homs[y * n + z].complex.degree_of(j));
            match homs[x * n + z].coords_of(&prod) {
                Some(v) => v.scale(&sign(odd, field)),
                None => {
                    failure = Some((x, y, z));
                    SVec::new()
                }
            }
        },
        units,
    )?;
    if let Some((x, y, z)) = failure {
        return Err(Error::Invalid(format!("composite {x}→{y}→{z} of module maps left the strict hom")));
    }
    Ok((cat, homs))
}
