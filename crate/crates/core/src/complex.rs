//! Bounded cochain complexes of finite-dimensional graded spaces.
//!
//! A complex is stored with one flat basis sorted by cohomological degree and a single
//! square differential matrix of degree +1. Sign conventions:
//!
//! * tensor: `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`
//! * hom: `d(f) = d∘f − (−1)^{|f|} f∘d`
//! * shift: `c[k]^n = c^{n+k}` with differential `(−1)^k d`
//! * cone of `f: a → b`: `a[1] ⊕ b` with differential `[[−d_a, 0], [f, d_b]]`

use std::collections::BTreeSet;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Matrix, SVec, Scalar};

pub fn sign(odd: bool, field: Field) -> Scalar {
    if odd {
        field.from_i64(-1)
    } else {
        field.one()
    }
}

pub fn is_odd(n: i32) -> bool {
    n.rem_euclid(2) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    degrees: Vec<i32>,
    d: Matrix,
}

impl Complex {
    /// Validates sortedness, homogeneity of `d` (degree +1) and `d² = 0`.
    pub fn new(field: Field, degrees: Vec<i32>, d: Matrix) -> Result<Complex> {
        let c = Complex::new_unchecked(field, degrees, d)?;
        if let Some(i) = c.d_squared_violation() {
            return Err(Error::Invalid(format!("d² ≠ 0 on basis element {i}")));
        }
        Ok(c)
    }

    /// Checks shape and homogeneity only; `d²` is left to the caller.
    pub fn new_unchecked(field: Field, degrees: Vec<i32>, d: Matrix) -> Result<Complex> {
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("basis not sorted by degree".into()));
        }
        let n = degrees.len();
        if d.nrows() != n || d.ncols() != n {
            return Err(Error::Dimension(format!("differential must be {n}x{n}")));
        }
        for (j, col) in d.columns().iter().enumerate() {
            if let Some((i, _)) = col.iter().find(|(i, _)| degrees[*i] != degrees[j] + 1) {
                return Err(Error::Invalid(format!("differential of basis element {j} has a component {i} outside degree +1")));
            }
        }
        Ok(Complex { field, degrees, d })
    }

    pub fn zero(field: Field) -> Complex {
        Complex { field, degrees: vec![], d: Matrix::zeros(0, 0, field) }
    }

    /// `k^dim` placed in degree `n` with zero differential.
    pub fn concentrated(field: Field, n: i32, dim: usize) -> Complex {
        Complex { field, degrees: vec![n; dim], d: Matrix::zeros(dim, dim, field) }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn total_dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
    pub fn degree_of(&self, i: usize) -> i32 {
        self.degrees[i]
    }
    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    pub fn d_of(&self, i: usize) -> &SVec {
        self.d.column(i)
    }

    pub fn apply_d(&self, v: &SVec) -> SVec {
        self.d.apply(v)
    }

    /// Flat index range of degree `n`.
    pub fn range(&self, n: i32) -> Range<usize> {
        let lo = self.degrees.partition_point(|&x| x < n);
        let hi = self.degrees.partition_point(|&x| x <= n);
        lo..hi
    }

    pub fn dim(&self, n: i32) -> usize {
        self.range(n).len()
    }

    pub fn support(&self) -> BTreeSet<i32> {
        self.degrees.iter().copied().collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.first().copied()
    }
    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.last().copied()
    }

    /// `d_n`: degree `n` → degree `n+1`, in local coordinates.
    pub fn block(&self, n: i32) -> Matrix {
        self.d.submatrix(self.range(n + 1), self.range(n))
    }

    pub fn d_squared_violation(&self) -> Option<usize> {
        (0..self.total_dim()).find(|&i| !self.d.apply(self.d.column(i)).is_zero())
    }

    /// Whether `v` is homogeneous of degree `n` (the zero vector is homogeneous of every degree).
    pub fn is_homogeneous(&self, v: &SVec, n: i32) -> bool {
        v.iter().all(|(i, _)| self.degrees[i] == n)
    }

    pub fn cohomology_dim(&self, n: i32) -> usize {
        let dim = self.dim(n);
        if dim == 0 {
            return 0;
        }
        dim - self.block(n).rank() - self.block(n - 1).rank()
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        Cohomology::new(self, n)
    }

    pub fn is_acyclic(&self) -> bool {
        self.support().iter().all(|&n| self.cohomology_dim(n) == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|&n| if is_odd(n) { -1 } else { 1 }).sum()
    }

    /// Degree `n` of the result is degree `n+k` of `self`; differential `(−1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        Complex {
            field: self.field,
            degrees: self.degrees.iter().map(|&n| n - k).collect(),
            d: self.d.scale(&sign(is_odd(k), self.field)),
        }
    }

    /// Block direct sum; basis re-sorted by degree, `self` before `other` inside a degree.
    pub fn direct_sum(&self, other: &Complex) -> (Complex, Vec<usize>, Vec<usize>) {
        let mut order: Vec<(i32, usize, usize)> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, 0, i))
            .chain(other.degrees.iter().enumerate().map(|(i, &n)| (n, 1, i)))
            .collect();
        order.sort();
        let mut left = vec![0; self.total_dim()];
        let mut right = vec![0; other.total_dim()];
        for (pos, &(_, side, i)) in order.iter().enumerate() {
            if side == 0 {
                left[i] = pos;
            } else {
                right[i] = pos;
            }
        }
        let mut cols = vec![SVec::new(); order.len()];
        for i in 0..self.total_dim() {
            cols[left[i]] = self.d.column(i).remap(|r| left[r]);
        }
        for i in 0..other.total_dim() {
            cols[right[i]] = other.d.column(i).remap(|r| right[r]);
        }
        let degrees = order.iter().map(|t| t.0).collect();
        let d = Matrix::from_columns(order.len(), self.field, cols).expect("in range");
        (Complex { field: self.field, degrees, d }, left, right)
    }

    /// Direct sum of many complexes; `positions[k][i]` is the index of basis `i` of part `k`.
    /// Inside a degree, parts appear in the given order.
    pub fn direct_sum_all(field: Field, parts: &[&Complex]) -> (Complex, Vec<Vec<usize>>) {
        let mut order: Vec<(i32, usize, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.degrees.iter().enumerate().map(move |(i, &n)| (n, k, i)))
            .collect();
        order.sort();
        let mut positions: Vec<Vec<usize>> = parts.iter().map(|c| vec![0; c.total_dim()]).collect();
        for (pos, &(_, k, i)) in order.iter().enumerate() {
            positions[k][i] = pos;
        }
        let mut cols = vec![SVec::new(); order.len()];
        for (k, c) in parts.iter().enumerate() {
            let p = &positions[k];
            for i in 0..c.total_dim() {
                cols[p[i]] = c.d.column(i).remap(|r| p[r]);
            }
        }
        let degrees = order.iter().map(|t| t.0).collect();
        let d = Matrix::from_columns(order.len(), field, cols).expect("in range");
        (Complex { field, degrees, d }, positions)
    }

    /// Tensor product with basis ordered lexicographically by (degree of the left factor,
    /// left index, right index) inside each total degree.
    pub fn tensor(&self, other: &Complex) -> (Complex, TensorIndex) {
        let idx = TensorIndex::new(&self.degrees, &other.degrees);
        let f = self.field;
        let mut cols = Vec::with_capacity(idx.len());
        for &(i, j) in &idx.pairs {
            let mut pairs = Vec::new();
            for (k, c) in self.d.column(i).iter() {
                pairs.push((idx.index(k, j), c.clone()));
            }
            let s = sign(is_odd(self.degrees[i]), f);
            for (k, c) in other.d.column(j).iter() {
                pairs.push((idx.index(i, k), c * &s));
            }
            cols.push(SVec::from_pairs(pairs));
        }
        let degrees = idx.pairs.iter().map(|&(i, j)| self.degrees[i] + other.degrees[j]).collect();
        let d = Matrix::from_columns(idx.len(), f, cols).expect("in range");
        (Complex { field: f, degrees, d }, idx)
    }

    /// Internal hom complex. Basis element `(p, q)` sends source basis `p` to target basis `q`.
    pub fn hom(&self, target: &Complex) -> (Complex, HomIndex) {
        let idx = HomIndex::new(&self.degrees, &target.degrees);
        let f = self.field;
        let d_rows = self.d.row_vectors();
        let mut cols = Vec::with_capacity(idx.len());
        for (pos, &(p, q)) in idx.pairs.iter().enumerate() {
            let deg = idx.degrees[pos];
            let mut pairs = Vec::new();
            // d_b ∘ E_{q,p}
            for (r, c) in target.d.column(q).iter() {
                pairs.push((idx.index(p, r), c.clone()));
            }
            // −(−1)^{|f|} E_{q,p} ∘ d_a: source basis s with d_a(s) having component p
            let s = sign(!is_odd(deg), f);
            for (src, c) in d_rows[p].iter() {
                pairs.push((idx.index(src, q), c * &s));
            }
            cols.push(SVec::from_pairs(pairs));
        }
        let d = Matrix::from_columns(idx.len(), f, cols).expect("in range");
        (Complex { field: f, degrees: idx.degrees.clone(), d }, idx)
    }

    /// Quotient by the subcomplex spanned by `relations` (which must be closed under `d`).
    pub fn quotient(&self, relations: Vec<SVec>) -> Quotient {
        Quotient::new(self, relations)
    }
}

/// Basis bookkeeping for `a ⊗ b`.
#[derive(Clone, Debug)]
pub struct TensorIndex {
    pub pairs: Vec<(usize, usize)>,
    right_len: usize,
    lookup: Vec<usize>,
}

impl TensorIndex {
    pub fn new(a: &[i32], b: &[i32]) -> TensorIndex {
        let mut pairs: Vec<(usize, usize)> =
            (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (a[i] + b[j], a[i], i, j));
        let mut lookup = vec![0; pairs.len()];
        for (pos, &(i, j)) in pairs.iter().enumerate() {
            lookup[i * b.len() + j] = pos;
        }
        TensorIndex { pairs, right_len: b.len(), lookup }
    }
    pub fn index(&self, i: usize, j: usize) -> usize {
        self.lookup[i * self.right_len + j]
    }
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Basis bookkeeping for `Hom(a, b)`: elementary maps ordered by (degree, source degree,
/// source index, target index).
#[derive(Clone, Debug)]
pub struct HomIndex {
    pub pairs: Vec<(usize, usize)>,
    pub degrees: Vec<i32>,
    target_len: usize,
    lookup: Vec<usize>,
}

impl HomIndex {
    pub fn new(a: &[i32], b: &[i32]) -> HomIndex {
        let mut pairs: Vec<(usize, usize)> =
            (0..a.len()).flat_map(|p| (0..b.len()).map(move |q| (p, q))).collect();
        pairs.sort_by_key(|&(p, q)| (b[q] - a[p], a[p], p, q));
        let mut lookup = vec![0; pairs.len()];
        for (pos, &(p, q)) in pairs.iter().enumerate() {
            lookup[p * b.len() + q] = pos;
        }
        let degrees = pairs.iter().map(|&(p, q)| b[q] - a[p]).collect();
        HomIndex { pairs, degrees, target_len: b.len(), lookup }
    }
    pub fn index(&self, p: usize, q: usize) -> usize {
        self.lookup[p * self.target_len + q]
    }
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Reads a homogeneous hom element as a matrix (target × source).
    pub fn to_matrix(&self, v: &SVec, src_dim: usize, field: Field) -> Matrix {
        let mut cols = vec![Vec::new(); src_dim];
        for (pos, c) in v.iter() {
            let (p, q) = self.pairs[pos];
            cols[p].push((q, c.clone()));
        }
        Matrix::from_columns(self.target_len, field, cols.into_iter().map(SVec::from_pairs).collect())
            .expect("in range")
    }
}

/// Cohomology in one degree with canonical representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    /// Representative cocycles, as flat vectors of the ambient complex.
    pub reps: Vec<SVec>,
    boundaries: usize,
    span: Echelon,
}

impl Cohomology {
    fn new(c: &Complex, n: i32) -> Cohomology {
        let f = c.field;
        let here = c.range(n);
        let below = c.range(n - 1);
        let mut span = Echelon::tracking(f);
        let mut boundaries = 0;
        for j in below {
            span.insert(c.d.column(j).clone());
            boundaries += 1;
        }
        let kernel = c.block(n).kernel_basis();
        let mut reps = Vec::new();
        let mut candidates = Echelon::new(f);
        for k in kernel.columns() {
            let v = k.remap(|i| i + here.start);
            let (res, _) = span.reduce(&v);
            if candidates.insert(res) {
                reps.push(v);
            }
        }
        for r in &reps {
            span.insert(r.clone());
        }
        Cohomology { degree: n, reps, boundaries, span }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle `v` in the representative basis, or `None`
    /// when `v` is not congruent to a combination of representatives (i.e. not a cocycle).
    pub fn class_of(&self, v: &SVec) -> Option<SVec> {
        let combo = self.span.express(v)?;
        Some(SVec::from_pairs(
            combo
                .iter()
                .filter(|(i, _)| *i >= self.boundaries)
                .map(|(i, c)| (i - self.boundaries, c.clone()))
                .collect(),
        ))
    }

    /// A cocycle with the given class coordinates.
    pub fn representative(&self, coords: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, c) in coords.iter() {
            out.axpy(c, &self.reps[i]);
        }
        out
    }

    pub fn is_coboundary(&self, v: &SVec) -> bool {
        matches!(self.class_of(v), Some(c) if c.is_zero())
    }
}

/// A canonical quotient `V / R` of a complex by a subcomplex spanned by `relations`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    ech: Echelon,
    /// Ambient index of each quotient basis element.
    pub kept: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(v: &Complex, relations: Vec<SVec>) -> Quotient {
        let f = v.field;
        let mut ech = Echelon::new(f);
        for r in relations {
            ech.insert(r);
        }
        let pivots: BTreeSet<usize> = ech.pivot_indices().collect();
        let kept: Vec<usize> = (0..v.total_dim()).filter(|i| !pivots.contains(i)).collect();
        let mut position = vec![None; v.total_dim()];
        for (k, &i) in kept.iter().enumerate() {
            position[i] = Some(k);
        }
        let mut q = Quotient { complex: Complex::zero(f), ech, kept, position };
        let cols = q.kept.iter().map(|&i| q.project(v.d.column(i))).collect();
        let degrees = q.kept.iter().map(|&i| v.degrees[i]).collect();
        let d = Matrix::from_columns(q.kept.len(), f, cols).expect("in range");
        q.complex = Complex { field: f, degrees, d };
        q
    }

    /// Image of an ambient vector in the quotient basis.
    pub fn project(&self, v: &SVec) -> SVec {
        let (res, _) = self.ech.reduce(v);
        res.remap(|i| self.position[i].expect("residual lies off the pivots"))
    }

    pub fn lift(&self, v: &SVec) -> SVec {
        v.remap(|k| self.kept[k])
    }

    pub fn relation_rank(&self) -> usize {
        self.ech.rank()
    }
}

/// A homogeneous linear map of degree `shift` between complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub shift: i32,
    pub matrix: Matrix,
}

impl ChainMap {
    /// Checks shape, homogeneity and `d∘f = (−1)^s f∘d`.
    pub fn new(source: Complex, target: Complex, shift: i32, matrix: Matrix) -> Result<ChainMap> {
        let m = ChainMap::new_unchecked(source, target, shift, matrix)?;
        if let Some(i) = m.commutation_violation() {
            return Err(Error::Invalid(format!("map does not commute with d on basis element {i}")));
        }
        Ok(m)
    }

    pub fn new_unchecked(source: Complex, target: Complex, shift: i32, matrix: Matrix) -> Result<ChainMap> {
        if matrix.nrows() != target.total_dim() || matrix.ncols() != source.total_dim() {
            return Err(Error::Dimension("chain map shape".into()));
        }
        for (j, col) in matrix.columns().iter().enumerate() {
            if col.iter().any(|(i, _)| target.degrees[i] != source.degrees[j] + shift) {
                return Err(Error::Invalid(format!("map is not homogeneous of degree {shift} at {j}")));
            }
        }
        Ok(ChainMap { source, target, shift, matrix })
    }

    pub fn identity(c: &Complex) -> ChainMap {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            shift: 0,
            matrix: Matrix::identity(c.total_dim(), c.field),
        }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            shift: 0,
            matrix: Matrix::zeros(target.total_dim(), source.total_dim(), source.field),
        }
    }

    pub fn commutation_violation(&self) -> Option<usize> {
        let s = sign(is_odd(self.shift), self.source.field);
        (0..self.source.total_dim()).find(|&i| {
            let lhs = self.target.apply_d(self.matrix.column(i));
            let rhs = self.matrix.apply(self.source.d_of(i)).scale(&s);
            lhs != rhs
        })
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        self.matrix.apply(v)
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap> {
        if self.target != after.source {
            return Err(Error::Dimension("composing maps with different middle complexes".into()));
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: after.target.clone(),
            shift: self.shift + after.shift,
            matrix: after.matrix.mul(&self.matrix)?,
        })
    }

    /// Mapping cone of a degree-0 map: `a[1] ⊕ b`, degree `n` ordered as the
    /// `a^{n+1}` part followed by the `b^n` part.
    pub fn cone(&self) -> Result<Complex> {
        if self.shift != 0 {
            return Err(Error::Invalid("cone needs a degree-0 chain map".into()));
        }
        let (a, b) = (&self.source, &self.target);
        let f = a.field;
        let mut order: Vec<(i32, usize, usize)> = (0..a.total_dim())
            .map(|i| (a.degrees[i] - 1, 0, i))
            .chain((0..b.total_dim()).map(|i| (b.degrees[i], 1, i)))
            .collect();
        order.sort();
        let mut pos_a = vec![0; a.total_dim()];
        let mut pos_b = vec![0; b.total_dim()];
        for (p, &(_, side, i)) in order.iter().enumerate() {
            if side == 0 {
                pos_a[i] = p;
            } else {
                pos_b[i] = p;
            }
        }
        let mut cols = vec![SVec::new(); order.len()];
        for i in 0..a.total_dim() {
            let da = a.d_of(i).neg().remap(|r| pos_a[r]);
            let fi = self.matrix.column(i).remap(|r| pos_b[r]);
            cols[pos_a[i]] = da.add(&fi);
        }
        for i in 0..b.total_dim() {
            cols[pos_b[i]] = b.d_of(i).remap(|r| pos_b[r]);
        }
        let degrees = order.iter().map(|t| t.0).collect();
        Complex::new(f, degrees, Matrix::from_columns(order.len(), f, cols)?)
    }

    /// Matrix of `H^n(f)` in the canonical representative bases.
    pub fn induced_map(&self, n: i32) -> Matrix {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n + self.shift);
        let cols = hs
            .reps
            .iter()
            .map(|r| ht.class_of(&self.apply(r)).expect("image of a cocycle is a cocycle"))
            .collect();
        Matrix::from_columns(ht.dim(), self.source.field, cols).expect("in range")
    }

    /// True iff `H^n(f)` is an isomorphism in every degree (checked through the cone).
    pub fn is_quasi_iso(&self) -> bool {
        match self.cone() {
            Ok(c) => c.is_acyclic(),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn k_id_k() -> Complex {
        Complex::new(q(), vec![0, 1], Matrix::from_i64_rows(q(), &[&[0, 0], &[1, 0]])).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(Complex::zero(q()).cohomology_dim(3), 0);
        assert_eq!(Complex::concentrated(q(), 0, 1).cohomology_dim(0), 1);
        let c = k_id_k();
        assert_eq!((c.cohomology_dim(0), c.cohomology_dim(1)), (0, 0));
        assert_eq!(c.cohomology(0).dim(), 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::from_i64_rows(q(), &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(Complex::new(q(), vec![0, 1, 2], d).is_err());
    }

    #[test]
    fn shift_examples() {
        let k = Complex::concentrated(q(), 0, 1);
        assert_eq!(k.shift(1).degrees(), &[-1]);
        assert_eq!(k.shift(0), k);
    }

    #[test]
    fn cone_examples() {
        let k = Complex::concentrated(q(), 0, 1);
        assert!(ChainMap::identity(&k).cone().unwrap().is_acyclic());
        let c = ChainMap::zero(&k, &k).cone().unwrap();
        assert_eq!((c.cohomology_dim(-1), c.cohomology_dim(0)), (1, 1));
    }

    #[test]
    fn tensor_examples() {
        let a = Complex::concentrated(q(), 1, 1);
        let b = Complex::concentrated(q(), -1, 1);
        let (t, _) = a.tensor(&b);
        assert_eq!(t.degrees(), &[0]);
        let k = Complex::concentrated(q(), 0, 1);
        let c = k_id_k();
        assert_eq!(k.tensor(&c).0, c);
    }

    #[test]
    fn hom_from_unit_is_identity() {
        let k = Complex::concentrated(q(), 0, 1);
        let c = k_id_k();
        assert_eq!(k.hom(&c).0, c);
        let h = c.hom(&c).0;
        assert_eq!(h.cohomology_dim(0), 0);
    }

    #[test]
    fn quasi_iso_examples() {
        let k = Complex::concentrated(q(), 0, 1);
        assert!(ChainMap::identity(&k).is_quasi_iso());
        assert!(!ChainMap::zero(&k, &k).is_quasi_iso());
        // projection cone(id_k) ⊕ k → k
        let cone = ChainMap::identity(&k).cone().unwrap();
        let (sum, _, right) = cone.direct_sum(&k);
        let mut cols = vec![SVec::new(); sum.total_dim()];
        cols[right[0]] = SVec::unit(0, q());
        let p = ChainMap::new(sum, k.clone(), 0, Matrix::from_columns(1, q(), cols).unwrap()).unwrap();
        assert!(p.is_quasi_iso());
    }

    #[test]
    fn class_of_detects_coboundaries() {
        // k --(1)--> k ⊕ k in degrees 0,1 ; H^1 = 1
        let d = Matrix::from_i64_rows(q(), &[&[0, 0, 0], &[1, 0, 0], &[1, 0, 0]]);
        let c = Complex::new(q(), vec![0, 1, 1], d).unwrap();
        let h = c.cohomology(1);
        assert_eq!(h.dim(), 1);
        let b = SVec::from_pairs(vec![(1, q().one()), (2, q().one())]);
        assert!(h.is_coboundary(&b));
        let e = SVec::unit(1, q());
        assert_eq!(h.class_of(&e).unwrap().nnz(), 1);
    }
}
