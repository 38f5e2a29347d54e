//! dg-categories with finitely many objects, stored by structure constants.
//!
//! Composition is written diagrammatically: `compose(x, y, z, a, b)` takes `a: x → y` and
//! `b: y → z` to an element of `C(x, z)`, with `d(ab) = (da)b + (−1)^{|a|} a(db)`.

use std::fmt;

use crate::complex::{is_odd, sign, ChainMap, Cohomology, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SVec, Scalar};
use crate::validate::{Axiom, Validation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategory {
    field: Field,
    objects: Vec<String>,
    /// `homs[x * n + y] = C(x, y)`.
    homs: Vec<Complex>,
    names: Vec<Vec<String>>,
    /// `comp[(x * n + y) * n + z][i * dim C(y,z) + j] = e_i · e_j`.
    comp: Vec<Vec<SVec>>,
    units: Vec<SVec>,
}

impl DgCategory {
    /// Assembles a category from raw tables, checking only shapes and index ranges.
    /// Call [`DgCategory::validate`] for the axioms.
    pub fn from_parts(
        field: Field,
        objects: Vec<String>,
        homs: Vec<Complex>,
        names: Vec<Vec<String>>,
        comp: Vec<Vec<SVec>>,
        units: Vec<SVec>,
    ) -> Result<DgCategory> {
        let n = objects.len();
        if homs.len() != n * n || names.len() != n * n || comp.len() != n * n * n || units.len() != n {
            return Err(Error::Dimension(format!("tables do not match {n} objects")));
        }
        for (k, h) in homs.iter().enumerate() {
            if h.field() != field {
                return Err(Error::Field("hom complex over a different field".into()));
            }
            if names[k].len() != h.total_dim() {
                return Err(Error::Dimension(format!(
                    "hom {}→{} has {} basis names for dimension {}",
                    objects[k / n],
                    objects[k % n],
                    names[k].len(),
                    h.total_dim()
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = &comp[(x * n + y) * n + z];
                    let (dxy, dyz, dxz) =
                        (homs[x * n + y].total_dim(), homs[y * n + z].total_dim(), homs[x * n + z].total_dim());
                    if t.len() != dxy * dyz {
                        return Err(Error::Dimension(format!(
                            "composition table {}→{}→{} has {} entries, expected {}",
                            objects[x],
                            objects[y],
                            objects[z],
                            t.len(),
                            dxy * dyz
                        )));
                    }
                    if t.iter().any(|v| v.max_index().is_some_and(|m| m >= dxz)) {
                        return Err(Error::OutOfRange(format!(
                            "composition {}→{}→{} lands outside C({}, {})",
                            objects[x], objects[y], objects[z], objects[x], objects[z]
                        )));
                    }
                }
            }
            if units[x].max_index().is_some_and(|m| m >= homs[x * n + x].total_dim()) {
                return Err(Error::OutOfRange(format!("unit of {} out of range", objects[x])));
            }
        }
        Ok(DgCategory { field, objects, homs, names, comp, units })
    }

    /// Builds the composition table by calling `mul(x, y, z, i, j)` on every basis pair.
    pub fn from_fn(
        field: Field,
        objects: Vec<String>,
        homs: Vec<Complex>,
        names: Vec<Vec<String>>,
        mut mul: impl FnMut(usize, usize, usize, usize, usize) -> SVec,
        units: Vec<SVec>,
    ) -> Result<DgCategory> {
        let n = objects.len();
        if homs.len() != n * n {
            return Err(Error::Dimension(format!("expected {} hom complexes", n * n)));
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (dxy, dyz) = (homs[x * n + y].total_dim(), homs[y * n + z].total_dim());
                    let mut t = Vec::with_capacity(dxy * dyz);
                    for i in 0..dxy {
                        for j in 0..dyz {
                            t.push(mul(x, y, z, i, j));
                        }
                    }
                    comp.push(t);
                }
            }
        }
        DgCategory::from_parts(field, objects, homs, names, comp, units)
    }

    /// One-object category `B(A)` of a dg-algebra given by its complex, basis names,
    /// multiplication on basis pairs and unit.
    pub fn algebra(
        field: Field,
        object: &str,
        a: Complex,
        names: Vec<String>,
        mut mul: impl FnMut(usize, usize) -> SVec,
        unit: SVec,
    ) -> Result<DgCategory> {
        DgCategory::from_fn(field, vec![object.to_string()], vec![a], vec![names], |_, _, _, i, j| mul(i, j), vec![unit])
    }

    /// The unit category: one object with endomorphisms `k`.
    pub fn unit(field: Field) -> DgCategory {
        DgCategory::algebra(
            field,
            "*",
            Complex::concentrated(field, 0, 1),
            vec!["1".into()],
            |_, _| SVec::unit(0, field),
            SVec::unit(0, field),
        )
        .expect("well-formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, x: usize, y: usize) -> &Complex {
        &self.homs[x * self.n_objects() + y]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).total_dim()
    }

    pub fn basis_names(&self, x: usize, y: usize) -> &[String] {
        &self.names[x * self.n_objects() + y]
    }

    pub fn basis_degree(&self, x: usize, y: usize, i: usize) -> i32 {
        self.hom(x, y).degree_of(i)
    }

    pub fn unit_of(&self, x: usize) -> &SVec {
        &self.units[x]
    }

    pub fn compose_basis(&self, x: usize, y: usize, z: usize, i: usize, j: usize) -> &SVec {
        let n = self.n_objects();
        &self.comp[(x * n + y) * n + z][i * self.hom_dim(y, z) + j]
    }

    /// `a · b` for `a ∈ C(x, y)`, `b ∈ C(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, a: &SVec, b: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = ca * cb;
                for (k, e) in self.compose_basis(x, y, z, i, j).iter() {
                    terms.push((k, &c * e));
                }
            }
        }
        SVec::from_pairs(terms)
    }

    /// Degree of a homogeneous element, or `None` for zero or inhomogeneous vectors.
    pub fn degree_of(&self, x: usize, y: usize, v: &SVec) -> Option<i32> {
        let h = self.hom(x, y);
        let mut it = v.iter().map(|(i, _)| h.degree_of(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Readable rendering of an element as a linear combination of basis names.
    pub fn render(&self, x: usize, y: usize, v: &SVec) -> String {
        render_lincomb(v, self.basis_names(x, y))
    }

    pub fn validate(&self) -> Validation {
        let mut report = Validation::new();
        let n = self.n_objects();
        let f = self.field;
        for x in 0..n {
            for y in 0..n {
                let h = self.hom(x, y);
                for i in 0..h.total_dim() {
                    let dd = h.apply_d(h.d_of(i));
                    report.check(dd.is_zero(), Axiom::DSquared, || {
                        format!("d(d({})) ≠ 0 in C({}, {})", self.basis_names(x, y)[i], self.objects[x], self.objects[y])
                    });
                }
            }
        }
        for x in 0..n {
            let u = &self.units[x];
            let h = self.hom(x, x);
            report.check(u.is_zero() || self.degree_of(x, x, u) == Some(0), Axiom::Degree, || {
                format!("unit of {} is not of degree 0", self.objects[x])
            });
            report.check(h.apply_d(u).is_zero(), Axiom::Unit, || format!("unit of {} is not a cycle", self.objects[x]));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    self.check_pair_axioms(x, y, z, &mut report);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for i in 0..self.hom_dim(x, y) {
                    let a = SVec::unit(i, f);
                    let left = self.compose(x, x, y, &self.units[x], &a);
                    report.check(left == a, Axiom::Unit, || {
                        format!("1_{} · {} ≠ {}", self.objects[x], self.basis_names(x, y)[i], self.basis_names(x, y)[i])
                    });
                    let right = self.compose(x, y, y, &a, &self.units[y]);
                    report.check(right == a, Axiom::Unit, || {
                        format!("{} · 1_{} ≠ {}", self.basis_names(x, y)[i], self.objects[y], self.basis_names(x, y)[i])
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        self.check_associativity(x, y, z, w, &mut report);
                    }
                }
            }
        }
        report
    }

    fn check_pair_axioms(&self, x: usize, y: usize, z: usize, report: &mut Validation) {
        let f = self.field;
        let (hxy, hyz, hxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
        for i in 0..hxy.total_dim() {
            let di = hxy.d_of(i);
            let a_deg = hxy.degree_of(i);
            for j in 0..hyz.total_dim() {
                let ab = self.compose_basis(x, y, z, i, j);
                let want = a_deg + hyz.degree_of(j);
                report.check(ab.iter().all(|(k, _)| hxz.degree_of(k) == want), Axiom::Degree, || {
                    format!(
                        "{} · {} is not of degree {}",
                        self.basis_names(x, y)[i],
                        self.basis_names(y, z)[j],
                        want
                    )
                });
                let lhs = hxz.apply_d(ab);
                let a = SVec::unit(i, f);
                let t1 = self.compose(x, y, z, di, &SVec::unit(j, f));
                let t2 = self.compose(x, y, z, &a, hyz.d_of(j));
                let rhs = t1.add_scaled(&sign(is_odd(a_deg), f), &t2);
                report.check(lhs == rhs, Axiom::Leibniz, || {
                    format!(
                        "d({} · {}) ≠ d{} · {} ± {} · d{} at {}→{}→{}",
                        self.basis_names(x, y)[i],
                        self.basis_names(y, z)[j],
                        self.basis_names(x, y)[i],
                        self.basis_names(y, z)[j],
                        self.basis_names(x, y)[i],
                        self.basis_names(y, z)[j],
                        self.objects[x],
                        self.objects[y],
                        self.objects[z]
                    )
                });
            }
        }
    }

    fn check_associativity(&self, x: usize, y: usize, z: usize, w: usize, report: &mut Validation) {
        let f = self.field;
        for i in 0..self.hom_dim(x, y) {
            let a = SVec::unit(i, f);
            for j in 0..self.hom_dim(y, z) {
                let ab = self.compose_basis(x, y, z, i, j);
                for k in 0..self.hom_dim(z, w) {
                    let c = SVec::unit(k, f);
                    let left = self.compose(x, z, w, ab, &c);
                    let right = self.compose(x, y, w, &a, self.compose_basis(y, z, w, j, k));
                    report.check(left == right, Axiom::Associativity, || {
                        format!(
                            "({} · {}) · {} ≠ {} · ({} · {}) at {}→{}→{}→{}",
                            self.basis_names(x, y)[i],
                            self.basis_names(y, z)[j],
                            self.basis_names(z, w)[k],
                            self.basis_names(x, y)[i],
                            self.basis_names(y, z)[j],
                            self.basis_names(z, w)[k],
                            self.objects[x],
                            self.objects[y],
                            self.objects[z],
                            self.objects[w]
                        )
                    });
                }
            }
        }
    }

    /// `C^op`: `C^op(x, y) = C(y, x)` and `a ·_op b = (−1)^{|a||b|} b · a`.
    pub fn opposite(&self) -> DgCategory {
        let n = self.n_objects();
        let f = self.field;
        let homs = (0..n * n).map(|k| self.homs[(k % n) * n + k / n].clone()).collect();
        let names = (0..n * n).map(|k| self.names[(k % n) * n + k / n].clone()).collect();
        DgCategory::from_fn(
            f,
            self.objects.clone(),
            homs,
            names,
            |x, y, z, i, j| {
                // i ∈ C(y, x), j ∈ C(z, y)
                let odd = is_odd(self.basis_degree(y, x, i)) && is_odd(self.basis_degree(z, y, j));
                self.compose_basis(z, y, x, j, i).scale(&sign(odd, f))
            },
            self.units.clone(),
        )
        .expect("opposite of a well-formed category")
    }

    /// Renames objects (same order); used for identifications like `𝟏 ⊗ C = C`.
    pub fn with_object_names(mut self, names: Vec<String>) -> Result<DgCategory> {
        if names.len() != self.objects.len() {
            return Err(Error::Dimension("wrong number of object names".into()));
        }
        self.objects = names;
        Ok(self)
    }

    /// Same data with a different basis naming.
    pub fn with_basis_names(mut self, names: Vec<Vec<String>>) -> Result<DgCategory> {
        for (k, ns) in names.iter().enumerate() {
            if ns.len() != self.homs[k].total_dim() {
                return Err(Error::Dimension("wrong number of basis names".into()));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Full sub-dg-category on the given objects, in the given order.
    pub fn full_subcategory(&self, keep: &[usize]) -> DgCategory {
        let n = self.n_objects();
        let m = keep.len();
        let homs = (0..m * m).map(|k| self.homs[keep[k / m] * n + keep[k % m]].clone()).collect();
        let names = (0..m * m).map(|k| self.names[keep[k / m] * n + keep[k % m]].clone()).collect();
        DgCategory::from_fn(
            self.field,
            keep.iter().map(|&x| self.objects[x].clone()).collect(),
            homs,
            names,
            |x, y, z, i, j| self.compose_basis(keep[x], keep[y], keep[z], i, j).clone(),
            keep.iter().map(|&x| self.units[x].clone()).collect(),
        )
        .expect("full subcategory of a well-formed category")
    }

    /// The raw tables `(field, objects, homs, basis names, composition, units)`.
    #[allow(clippy::type_complexity)]
    pub fn into_parts(self) -> (Field, Vec<String>, Vec<Complex>, Vec<Vec<String>>, Vec<Vec<SVec>>, Vec<SVec>) {
        (self.field, self.objects, self.homs, self.names, self.comp, self.units)
    }

    pub fn h0(&self) -> H0Category {
        H0Category::new(self)
    }

    /// Dimension of `H^n(C(x, y))`.
    pub fn hom_cohomology_dim(&self, x: usize, y: usize, n: i32) -> usize {
        self.hom(x, y).cohomology_dim(n)
    }
}

/// `C ⊗ D`: objects are pairs `x⊗y`, homs are tensor products of complexes, and
/// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa' ⊗ bb'`.
pub fn tensor_cat(c: &DgCategory, d: &DgCategory) -> Result<DgCategory> {
    if c.field != d.field {
        return Err(Error::Field("tensor of categories over different fields".into()));
    }
    let f = c.field;
    let (nc, nd) = (c.n_objects(), d.n_objects());
    let n = nc * nd;
    let pair = |k: usize| (k / nd, k % nd);
    let objects: Vec<String> = (0..n)
        .map(|k| {
            let (x, y) = pair(k);
            format!("{}⊗{}", c.objects[x], d.objects[y])
        })
        .collect();
    let mut homs = Vec::with_capacity(n * n);
    let mut names = Vec::with_capacity(n * n);
    let mut index = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let ((x, y), (x2, y2)) = (pair(s), pair(t));
            let (h, idx) = c.hom(x, x2).tensor(d.hom(y, y2));
            names.push(
                idx.pairs
                    .iter()
                    .map(|&(i, j)| format!("{}⊗{}", c.basis_names(x, x2)[i], d.basis_names(y, y2)[j]))
                    .collect(),
            );
            homs.push(h);
            index.push(idx);
        }
    }
    let units = (0..n)
        .map(|s| {
            let (x, y) = pair(s);
            tensor_elements(&index[s * n + s], c.unit_of(x), d.unit_of(y))
        })
        .collect();
    DgCategory::from_fn(
        f,
        objects,
        homs,
        names,
        |s, t, u, i, j| {
            let ((x, y), (x2, y2), (x3, y3)) = (pair(s), pair(t), pair(u));
            let (a, b) = index[s * n + t].pairs[i];
            let (a2, b2) = index[t * n + u].pairs[j];
            let odd = is_odd(d.basis_degree(y, y2, b)) && is_odd(c.basis_degree(x2, x3, a2));
            let left = c.compose_basis(x, x2, x3, a, a2);
            let right = d.compose_basis(y, y2, y3, b, b2);
            tensor_elements(&index[s * n + u], left, right).scale(&sign(odd, f))
        },
        units,
    )
}

/// Basis bookkeeping of `(C ⊗ D)(x⊗y, x2⊗y2)`, the same one `tensor_cat` uses.
pub fn tensor_hom_index(c: &DgCategory, d: &DgCategory, x: usize, y: usize, x2: usize, y2: usize) -> crate::complex::TensorIndex {
    crate::complex::TensorIndex::new(c.hom(x, x2).degrees(), d.hom(y, y2).degrees())
}

/// `v ⊗ w` expanded in a tensor basis.
pub fn tensor_elements(idx: &crate::complex::TensorIndex, v: &SVec, w: &SVec) -> SVec {
    let mut terms = Vec::new();
    for (i, a) in v.iter() {
        for (j, b) in w.iter() {
            terms.push((idx.index(i, j), a * b));
        }
    }
    SVec::from_pairs(terms)
}

pub fn render_lincomb(v: &SVec, names: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{}*{}", c.to_text(), names[i]))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The homotopy category `[C]`: `H^0` of every hom with induced composition, in the
/// canonical representative bases.
#[derive(Clone, Debug)]
pub struct H0Category {
    pub field: Field,
    pub objects: Vec<String>,
    pub homs: Vec<Cohomology>,
    /// `comp[(x*n+y)*n+z][i * dim(y,z) + j]`: class coordinates of `r_i · r_j`.
    comp: Vec<Vec<SVec>>,
    pub units: Vec<SVec>,
}

impl H0Category {
    fn new(c: &DgCategory) -> H0Category {
        let n = c.n_objects();
        let homs: Vec<Cohomology> = c.homs.iter().map(|h| h.cohomology(0)).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                    let mut t = Vec::with_capacity(hxy.dim() * hyz.dim());
                    for ri in &hxy.reps {
                        for rj in &hyz.reps {
                            let p = c.compose(x, y, z, ri, rj);
                            t.push(hxz.class_of(&p).expect("product of cocycles is a cocycle"));
                        }
                    }
                    comp.push(t);
                }
            }
        }
        let units = (0..n)
            .map(|x| homs[x * n + x].class_of(c.unit_of(x)).expect("unit is a cocycle"))
            .collect();
        H0Category { field: c.field, objects: c.objects.clone(), homs, comp, units }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.homs[x * self.n_objects() + y].dim()
    }

    pub fn cohomology(&self, x: usize, y: usize) -> &Cohomology {
        &self.homs[x * self.n_objects() + y]
    }

    pub fn compose_basis(&self, x: usize, y: usize, z: usize, i: usize, j: usize) -> &SVec {
        let n = self.n_objects();
        &self.comp[(x * n + y) * n + z][i * self.dim(y, z) + j]
    }

    /// Composition of classes given by coordinates.
    pub fn compose(&self, x: usize, y: usize, z: usize, a: &SVec, b: &SVec) -> SVec {
        let mut terms = Vec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = ca * cb;
                for (k, e) in self.compose_basis(x, y, z, i, j).iter() {
                    terms.push((k, &c * e));
                }
            }
        }
        SVec::from_pairs(terms)
    }

    /// Matrix of `v ↦ a · v` from `[C](y, z)` to `[C](x, z)`.
    pub fn left_mult_matrix(&self, x: usize, y: usize, z: usize, a: &SVec) -> Matrix {
        let f = self.field;
        let cols = (0..self.dim(y, z)).map(|j| self.compose(x, y, z, a, &SVec::unit(j, f))).collect();
        Matrix::from_columns(self.dim(x, z), f, cols).expect("in range")
    }
}

/// A pair of mutually inverse classes in `[C]`, with cocycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub x: usize,
    pub y: usize,
    /// Cocycle in `C(x, y)`.
    pub u: SVec,
    /// Cocycle in `C(y, x)`.
    pub v: SVec,
}

impl IsoWitness {
    /// Deterministic check on representatives: `uv − 1_x` and `vu − 1_y` are coboundaries.
    pub fn verify(&self, c: &DgCategory) -> bool {
        let (x, y) = (self.x, self.y);
        let (hxy, hyx) = (c.hom(x, y), c.hom(y, x));
        if !hxy.apply_d(&self.u).is_zero() || !hyx.apply_d(&self.v).is_zero() {
            return false;
        }
        if !hxy.is_homogeneous(&self.u, 0) || !hyx.is_homogeneous(&self.v, 0) {
            return false;
        }
        let uv = c.compose(x, y, x, &self.u, &self.v).sub(c.unit_of(x));
        let vu = c.compose(y, x, y, &self.v, &self.u).sub(c.unit_of(y));
        c.hom(x, x).cohomology(0).is_coboundary(&uv) && c.hom(y, y).cohomology(0).is_coboundary(&vu)
    }
}

/// Upper bound `(num/den)^trials` on the probability that a randomized search missed
/// an existing witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissBound {
    pub num: u64,
    pub den: u64,
    pub trials: usize,
}

impl fmt::Display for MissBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num >= self.den {
            write!(f, "1 (no useful bound: sample set too small)")
        } else {
            write!(f, "({}/{})^{}", self.num, self.den, self.trials)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(IsoWitness),
    /// Proven non-isomorphic (by an exact obstruction or exhaustive search).
    Impossible(String),
    /// No witness within the trial budget; an isomorphism exists with probability at most `bound`.
    NotFound { bound: MissBound },
}

impl IsoSearch {
    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            IsoSearch::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn found(&self) -> bool {
        self.witness().is_some()
    }
}

/// Sample size used for coefficients over ℚ.
pub const RATIONAL_SAMPLE: u64 = 1 << 16;
/// Over `𝔽_p`, search spaces of at most this many points are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Cohomology dimensions of all homs into and out of `x`, trimmed to their support.
/// Objects isomorphic in `[C]` have equal signatures.
fn iso_signature(c: &DgCategory, x: usize) -> Vec<(i32, Vec<usize>)> {
    let n = c.n_objects();
    let mut sig = Vec::new();
    for z in 0..n {
        for h in [c.hom(x, z), c.hom(z, x)] {
            let (lo, hi) = (h.min_degree().unwrap_or(0), h.max_degree().unwrap_or(-1));
            let dims: Vec<(i32, usize)> = (lo..=hi).map(|d| (d, h.cohomology_dim(d))).filter(|p| p.1 != 0).collect();
            let start = dims.first().map(|p| p.0).unwrap_or(0);
            let mut v = Vec::new();
            if let Some(last) = dims.last() {
                for d in start..=last.0 {
                    v.push(h.cohomology_dim(d));
                }
            }
            sig.push((start, v));
        }
    }
    sig
}

/// Searches for an isomorphism `x ≅ y` in `[C]`.
///
/// Candidates `u ∈ H^0(C(x, y))` are sampled, `uv = 1` is solved linearly and `vu = 1` is then
/// checked. Every returned witness is re-verified on representatives.
pub fn iso_in_h0(c: &DgCategory, x: usize, y: usize, seed: u64, trials: usize) -> IsoSearch {
    let h0 = c.h0();
    iso_in_h0_with(c, &h0, x, y, seed, trials)
}

pub fn iso_in_h0_with(c: &DgCategory, h0: &H0Category, x: usize, y: usize, seed: u64, trials: usize) -> IsoSearch {
    let f = c.field;
    if x == y {
        let w = IsoWitness { x, y, u: c.unit_of(x).clone(), v: c.unit_of(x).clone() };
        debug_assert!(w.verify(c));
        return IsoSearch::Found(w);
    }
    if iso_signature(c, x) != iso_signature(c, y) {
        return IsoSearch::Impossible("cohomology dimensions of the hom complexes differ".into());
    }
    let (du, dv) = (h0.dim(x, y), h0.dim(y, x));
    let dx = h0.dim(x, x);
    if dx == 0 {
        // Both are zero objects of [C].
        let w = IsoWitness { x, y, u: SVec::new(), v: SVec::new() };
        return if w.verify(c) {
            IsoSearch::Found(w)
        } else {
            IsoSearch::Impossible("zero endomorphisms but no zero witness".into())
        };
    }
    if du == 0 || dv == 0 {
        return IsoSearch::Impossible(format!(
            "[C]({}, {}) or [C]({}, {}) is zero",
            c.objects[x], c.objects[y], c.objects[y], c.objects[x]
        ));
    }
    let try_u = |coords: &SVec| -> Option<IsoWitness> {
        let m = h0.left_mult_matrix(x, y, x, coords);
        let v = m.solve(&h0.units[x]).expect("dimensions agree")?;
        let vu = h0.compose(y, x, y, &v, coords);
        if vu != h0.units[y] {
            return None;
        }
        let w = IsoWitness {
            x,
            y,
            u: h0.cohomology(x, y).representative(coords),
            v: h0.cohomology(y, x).representative(&v),
        };
        w.verify(c).then_some(w)
    };
    if let Field::Prime(p) = f {
        if let Some(total) = p.checked_pow(du as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for code in 0..total {
                let mut rest = code;
                let coords = SVec::from_pairs(
                    (0..du)
                        .map(|i| {
                            let digit = rest % p;
                            rest /= p;
                            (i, f.from_i64(digit as i64))
                        })
                        .collect(),
                );
                if let Some(w) = try_u(&coords) {
                    return IsoSearch::Found(w);
                }
            }
            return IsoSearch::Impossible(format!("exhaustive search over {total} candidates"));
        }
    }
    // Basis classes first: they give the natural witness in small examples.
    for i in 0..du {
        if let Some(w) = try_u(&SVec::unit(i, f)) {
            return IsoSearch::Found(w);
        }
    }
    let size = match f {
        Field::Rationals => RATIONAL_SAMPLE,
        Field::Prime(p) => p,
    };
    let n = c.n_objects() as u64;
    let mut rng = crate::gen::derived_rng(seed, x as u64 * n + y as u64);
    for _ in 0..trials {
        let coords = SVec::from_pairs((0..du).map(|i| (i, crate::gen::sample_scalar(&mut rng, f, size))).collect());
        if let Some(w) = try_u(&coords) {
            return IsoSearch::Found(w);
        }
    }
    IsoSearch::NotFound { bound: MissBound { num: dx as u64, den: size, trials } }
}

/// A dg-functor given by an object map and degree-0 chain-map components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgFunctor {
    pub source: DgCategory,
    pub target: DgCategory,
    pub object_map: Vec<usize>,
    /// `components[x * n + y]`: matrix from `C(x, y)` to `D(f x, f y)`.
    pub components: Vec<Matrix>,
}

impl DgFunctor {
    pub fn new(source: DgCategory, target: DgCategory, object_map: Vec<usize>, components: Vec<Matrix>) -> Result<DgFunctor> {
        let n = source.n_objects();
        if object_map.len() != n || components.len() != n * n {
            return Err(Error::Dimension("functor tables do not match the source".into()));
        }
        if object_map.iter().any(|&y| y >= target.n_objects()) {
            return Err(Error::OutOfRange("object map lands outside the target".into()));
        }
        if source.field != target.field {
            return Err(Error::Field("functor between categories over different fields".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let m = &components[x * n + y];
                let (fx, fy) = (object_map[x], object_map[y]);
                if m.ncols() != source.hom_dim(x, y) || m.nrows() != target.hom_dim(fx, fy) {
                    return Err(Error::Dimension(format!(
                        "component {}→{} has shape {}×{}, expected {}×{}",
                        source.objects[x],
                        source.objects[y],
                        m.nrows(),
                        m.ncols(),
                        target.hom_dim(fx, fy),
                        source.hom_dim(x, y)
                    )));
                }
            }
        }
        Ok(DgFunctor { source, target, object_map, components })
    }

    pub fn identity(c: &DgCategory) -> DgFunctor {
        let n = c.n_objects();
        let components = (0..n * n).map(|k| Matrix::identity(c.homs[k].total_dim(), c.field)).collect();
        DgFunctor::new(c.clone(), c.clone(), (0..n).collect(), components).expect("identity")
    }

    /// Inclusion of a full subcategory on `keep`.
    pub fn inclusion(c: &DgCategory, keep: &[usize]) -> DgFunctor {
        let sub = c.full_subcategory(keep);
        let m = keep.len();
        let components = (0..m * m)
            .map(|k| Matrix::identity(sub.homs[k].total_dim(), c.field))
            .collect();
        DgFunctor::new(sub, c.clone(), keep.to_vec(), components).expect("inclusion")
    }

    pub fn component(&self, x: usize, y: usize) -> &Matrix {
        &self.components[x * self.source.n_objects() + y]
    }

    pub fn apply(&self, x: usize, y: usize, v: &SVec) -> SVec {
        self.component(x, y).apply(v)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &DgFunctor) -> Result<DgFunctor> {
        if self.target != g.source {
            return Err(Error::Invalid("functors are not composable".into()));
        }
        let n = self.source.n_objects();
        let object_map: Vec<usize> = self.object_map.iter().map(|&y| g.object_map[y]).collect();
        let mut components = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let m = g.component(self.object_map[x], self.object_map[y]).mul(self.component(x, y))?;
                components.push(m);
            }
        }
        DgFunctor::new(self.source.clone(), g.target.clone(), object_map, components)
    }

    pub fn component_map(&self, x: usize, y: usize) -> ChainMap {
        let fx = self.object_map[x];
        let fy = self.object_map[y];
        ChainMap::new_unchecked(
            self.source.hom(x, y).clone(),
            self.target.hom(fx, fy).clone(),
            0,
            self.component(x, y).clone(),
        )
        .expect("shapes checked at construction")
    }

    pub fn validate(&self) -> Validation {
        let mut report = Validation::new();
        let (c, d) = (&self.source, &self.target);
        let n = c.n_objects();
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.object_map[x], self.object_map[y]);
                let mut homogeneous = true;
                for i in 0..c.hom_dim(x, y) {
                    let img = self.component(x, y).column(i);
                    let deg = c.basis_degree(x, y, i);
                    let ok = d.hom(fx, fy).is_homogeneous(img, deg);
                    homogeneous &= ok;
                    report.check(ok, Axiom::Degree, || {
                        format!("f({}) is not of degree {}", c.basis_names(x, y)[i], deg)
                    });
                }
                if homogeneous {
                    let m = self.component_map(x, y);
                    report.check(m.commutation_violation().is_none(), Axiom::ChainMap, || {
                        format!("component {}→{} does not commute with d", c.objects[x], c.objects[y])
                    });
                }
            }
        }
        for x in 0..n {
            let fx = self.object_map[x];
            let img = self.apply(x, x, c.unit_of(x));
            report.check(&img == d.unit_of(fx), Axiom::Unit, || format!("f(1_{}) ≠ 1_{}", c.objects[x], d.objects[fx]));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (self.object_map[x], self.object_map[y], self.object_map[z]);
                    for i in 0..c.hom_dim(x, y) {
                        let fa = self.component(x, y).column(i);
                        for j in 0..c.hom_dim(y, z) {
                            let lhs = self.apply(x, z, c.compose_basis(x, y, z, i, j));
                            let rhs = d.compose(fx, fy, fz, fa, self.component(y, z).column(j));
                            report.check(lhs == rhs, Axiom::Functoriality, || {
                                format!(
                                    "f({} · {}) ≠ f({}) · f({})",
                                    c.basis_names(x, y)[i],
                                    c.basis_names(y, z)[j],
                                    c.basis_names(x, y)[i],
                                    c.basis_names(y, z)[j]
                                )
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Per-pair quasi-isomorphism check of the components.
    pub fn quasi_fully_faithful(&self) -> QuasiFf {
        let n = self.source.n_objects();
        let mut failures = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !self.component_map(x, y).is_quasi_iso() {
                    failures.push((x, y));
                }
            }
        }
        QuasiFf { failures }
    }

    /// Every target object must be isomorphic in `[D]` to some image object.
    pub fn quasi_essentially_surjective(&self, seed: u64, trials: usize) -> EssentialImage {
        let d = &self.target;
        let h0 = d.h0();
        let mut image: Vec<usize> = self.object_map.clone();
        image.sort_unstable();
        image.dedup();
        let mut per_object = Vec::new();
        for t in 0..d.n_objects() {
            let mut best = None;
            let mut last = None;
            for &s in &image {
                let r = iso_in_h0_with(d, &h0, s, t, seed, trials);
                if r.found() {
                    best = Some(r);
                    break;
                }
                // Keep the most informative failure: NotFound outranks Impossible.
                if last.is_none() || matches!(r, IsoSearch::NotFound { .. }) {
                    last = Some(r);
                }
            }
            let outcome = best.or(last).unwrap_or(IsoSearch::Impossible("empty image".into()));
            per_object.push(outcome);
        }
        EssentialImage { per_object }
    }

    pub fn quasi_equivalence(&self, seed: u64, trials: usize) -> (QuasiFf, EssentialImage) {
        (self.quasi_fully_faithful(), self.quasi_essentially_surjective(seed, trials))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFf {
    /// Object pairs whose component is not a quasi-isomorphism.
    pub failures: Vec<(usize, usize)>,
}

impl QuasiFf {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialImage {
    /// For each target object, the search outcome against the image.
    pub per_object: Vec<IsoSearch>,
}

impl EssentialImage {
    pub fn holds(&self) -> bool {
        self.per_object.iter().all(IsoSearch::found)
    }
}

/// Scalar `(−1)^{ab}` for degrees `a`, `b`.
pub fn koszul(a: i32, b: i32, field: Field) -> Scalar {
    sign(is_odd(a) && is_odd(b), field)
}
