use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Scalar};
use super::sparse::SVec;
use crate::error::{Error, Result};

/// Density at or above which elimination switches to dense rows.
pub const DEFAULT_DENSE_THRESHOLD: f64 = 0.25;

/// Sparse matrix stored column by column; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: Vec<SVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix { field, rows, cols: vec![SVec::new(); cols] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        Matrix { field, rows: n, cols: (0..n).map(|i| SVec::unit(i, field)).collect() }
    }

    pub fn from_columns(rows: usize, field: Field, cols: Vec<SVec>) -> Result<Matrix> {
        for (j, c) in cols.iter().enumerate() {
            if let Some(i) = c.max_index() {
                if i >= rows {
                    return Err(Error::OutOfRange(format!("column {j} has entry in row {i} >= {rows}")));
                }
            }
        }
        Ok(Matrix { field, rows, cols })
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    cols[j].push((i, c.clone()));
                }
            }
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols: cols.into_iter().map(SVec::from_pairs).collect(),
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, &rows).expect("rectangular literal")
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SVec> {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Result<Scalar> {
        if r >= self.rows || c >= self.cols.len() {
            return Err(Error::OutOfRange(format!(
                "entry ({r},{c}) of a {}x{} matrix",
                self.rows,
                self.cols.len()
            )));
        }
        Ok(self.cols[c].get(r).cloned().unwrap_or_else(|| self.field.zero()))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    /// `self · v` for a sparse column vector (no bounds check beyond debug).
    pub fn apply(&self, v: &SVec) -> SVec {
        let mut pairs = Vec::new();
        for (j, c) in v.iter() {
            for (i, x) in self.cols[j].iter() {
                pairs.push((i, x * c));
            }
        }
        SVec::from_pairs(pairs)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::Dimension("matrix sum shapes differ".into()));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col.iter() {
                cols[i].push((j, x.clone()));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols.len(),
            cols: cols.into_iter().map(SVec::from_pairs).collect(),
        }
    }

    /// Rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SVec> {
        self.transpose().cols
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols[cols].iter().map(|c| c.restrict(rows.clone())).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::Dimension("empty hstack".into()))?;
        if parts.iter().any(|m| m.rows != first.rows) {
            return Err(Error::Dimension("hstack row counts differ".into()));
        }
        Ok(Matrix {
            field: first.field,
            rows: first.rows,
            cols: parts.iter().flat_map(|m| m.cols.iter().cloned()).collect(),
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    fn density(&self) -> f64 {
        let cells = self.rows * self.ncols();
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        self.rref_with(DEFAULT_DENSE_THRESHOLD)
    }

    /// As [`Matrix::rref`], choosing dense elimination when density reaches `threshold`.
    pub fn rref_with(&self, threshold: f64) -> (Matrix, Vec<usize>) {
        let rows = if self.density() >= threshold {
            dense_rref(self.field, self.to_dense(), self.ncols())
        } else {
            sparse_rref(self.row_vectors(), self.field)
        };
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        let mut cols = vec![Vec::new(); self.ncols()];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter() {
                cols[j].push((i, x.clone()));
            }
        }
        let cols = cols.into_iter().map(SVec::from_pairs).collect();
        (Matrix { field: self.field, rows: self.rows, cols }, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.ncols() == 0 {
            return 0;
        }
        if self.density() >= DEFAULT_DENSE_THRESHOLD && self.rows * self.ncols() <= 250_000 {
            dense_rref(self.field, self.to_dense(), self.ncols()).len()
        } else {
            // Eliminate along the shorter side.
            let vecs = if self.ncols() <= self.rows { self.cols.clone() } else { self.row_vectors() };
            Echelon::rank_of(vecs)
        }
    }

    /// Columns form a basis of the kernel, one per free column in increasing order,
    /// normalized so the free variable is 1.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let rows = r.row_vectors();
        let mut is_pivot = vec![false; self.ncols()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut cols = Vec::new();
        for f in (0..self.ncols()).filter(|&c| !is_pivot[c]) {
            let mut pairs = vec![(f, self.field.one())];
            for (i, &p) in pivots.iter().enumerate() {
                if let Some(x) = rows[i].get(f) {
                    pairs.push((p, -x));
                }
            }
            cols.push(SVec::from_pairs(pairs));
        }
        Matrix { field: self.field, rows: self.ncols(), cols }
    }

    /// Canonical particular solution of `self · x = b` (free variables 0), if any.
    pub fn solve(&self, b: &SVec) -> Result<Option<SVec>> {
        if let Some(i) = b.max_index() {
            if i >= self.rows {
                return Err(Error::Dimension(format!("right-hand side longer than {} rows", self.rows)));
            }
        }
        let mut aug = self.clone();
        aug.cols.push(b.clone());
        let (r, pivots) = aug.rref();
        let n = self.ncols();
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let rows = r.row_vectors();
        let mut pairs = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if let Some(x) = rows[i].get(n) {
                pairs.push((p, x.clone()));
            }
        }
        Ok(Some(SVec::from_pairs(pairs)))
    }
}

/// Gauss–Jordan on dense rows; returns the nonzero rows of the rref.
fn dense_rref(field: Field, mut a: Vec<Vec<Scalar>>, ncols: usize) -> Vec<SVec> {
    let nrows = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = &*x - &(y * &f);
                }
            }
        }
        r += 1;
    }
    let _ = field;
    a.truncate(r);
    a.iter().map(|row| SVec::from_dense(row)).collect()
}

fn sparse_rref(rows: Vec<SVec>, field: Field) -> Vec<SVec> {
    let mut ech = Echelon::new(field);
    for r in rows {
        ech.insert(r);
    }
    ech.reduced_rows()
}

/// Incremental row-echelon basis of a subspace, with optional tracking of how each
/// pivot vector combines the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    pivots: BTreeMap<usize, (SVec, SVec)>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, pivots: BTreeMap::new(), inserted: 0, track: false }
    }

    /// Records for each pivot its expression in terms of inserted vectors.
    pub fn tracking(field: Field) -> Echelon {
        Echelon { track: true, ..Echelon::new(field) }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn rank_of(mut vecs: Vec<SVec>) -> usize {
        let Some(field) = vecs.iter().find_map(|v| v.leading().map(|(_, c)| c.field())) else {
            return 0;
        };
        vecs.sort_by_key(SVec::nnz);
        let mut e = Echelon::new(field);
        for v in vecs {
            e.insert(v);
        }
        e.rank()
    }

    /// Fully reduces `v` against the pivots: returns the residual (supported off the
    /// pivot indices) and, when tracking, the combination of inserted vectors removed.
    pub fn reduce(&self, v: &SVec) -> (SVec, SVec) {
        let mut res = v.clone();
        let mut combo = SVec::new();
        let mut pos = 0usize;
        loop {
            let next = res.iter().find(|(i, _)| *i >= pos && self.pivots.contains_key(i)).map(|(i, c)| (i, c.clone()));
            let Some((i, c)) = next else { break };
            let (row, how) = &self.pivots[&i];
            let neg = -&c;
            res = res.add_scaled(&neg, row);
            if self.track {
                combo = combo.add_scaled(&c, how);
            }
            pos = i + 1;
        }
        (res, combo)
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let mut res = v;
        let mut how = if self.track { SVec::unit(id, self.field) } else { SVec::new() };
        while let Some((i, c)) = res.leading().map(|(i, c)| (i, c.clone())) {
            match self.pivots.get(&i) {
                Some((row, h)) => {
                    let neg = -&c;
                    res = res.add_scaled(&neg, row);
                    if self.track {
                        how = how.add_scaled(&neg, h);
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero leading entry");
                    let row = res.scale(&inv);
                    let h = if self.track { how.scale(&inv) } else { how };
                    self.pivots.insert(i, (row, h));
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Expresses `v` as a combination of the inserted vectors, if it lies in the span.
    pub fn express(&self, v: &SVec) -> Option<SVec> {
        let (res, combo) = self.reduce(v);
        res.is_zero().then_some(combo)
    }

    /// The unique reduced row-echelon basis of the span, ordered by pivot.
    pub fn reduced_rows(&self) -> Vec<SVec> {
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, SVec> =
            self.pivots.iter().map(|(k, (r, _))| (*k, r.clone())).collect();
        for &k in keys.iter().rev() {
            let pivot_row = rows[&k].clone();
            for &j in keys.iter().filter(|&&j| j < k) {
                let row = rows.get_mut(&j).expect("pivot row");
                if let Some(c) = row.get(k).cloned() {
                    *row = row.add_scaled(&-&c, &pivot_row);
                }
            }
        }
        rows.into_values().collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(Scalar::to_text).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
