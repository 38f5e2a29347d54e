//! Seeded random generators for complexes, used by property tests and the
//! randomized witness searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::linalg::{Field, Matrix, SVec, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream from a base seed and a label (e.g. an object index).
pub fn derived_rng(seed: u64, label: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17))
}

/// Uniform sample from `{0, …, size−1}` mapped into the field.
pub fn sample_scalar(rng: &mut SeededRng, field: Field, size: u64) -> Scalar {
    let size = match field {
        Field::Prime(p) => size.min(p),
        Field::Rationals => size,
    }
    .max(1);
    field.from_i64(rng.gen_range(0..size) as i64)
}

/// Small signed entry, for generating test data.
pub fn small_scalar(rng: &mut SeededRng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-2i64..=2))
}

/// Random combination of `basis` with coefficients drawn from `{0..size−1}`.
pub fn random_combination(rng: &mut SeededRng, field: Field, basis: &[SVec], size: u64) -> (SVec, SVec) {
    let mut coords = Vec::new();
    let mut v = SVec::new();
    for (i, b) in basis.iter().enumerate() {
        let c = sample_scalar(rng, field, size);
        v.axpy(&c, b);
        coords.push((i, c));
    }
    (v, SVec::from_pairs(coords))
}

/// Random bounded complex in degrees `lo..=hi`: a direct sum of random acyclic pairs
/// and cycles, conjugated by random unitriangular changes of basis in each degree.
pub fn random_complex(rng: &mut SeededRng, field: Field, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let mut dims: Vec<usize> = (lo..=hi).map(|_| 0).collect();
    let mut pairs = Vec::new();
    for n in lo..=hi {
        let k = (n - lo) as usize;
        let cycles = rng.gen_range(0..=max_dim / 2);
        dims[k] += cycles;
        if n < hi {
            let p = rng.gen_range(0..=max_dim / 2);
            pairs.push((n, p));
            dims[k] += p;
            dims[k + 1] += p;
        }
    }
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut degrees = Vec::with_capacity(total);
    for (k, &d) in dims.iter().enumerate() {
        degrees.extend(std::iter::repeat_n(lo + k as i32, d));
    }
    // Lay out the acyclic pairs in the first slots of each degree.
    let mut used_top = vec![0usize; dims.len()];
    let mut used_bottom = vec![0usize; dims.len()];
    let mut cols = vec![SVec::new(); total];
    for &(n, p) in &pairs {
        let k = (n - lo) as usize;
        for _ in 0..p {
            let src = offsets[k] + used_top[k];
            used_top[k] += 1;
            let tgt = offsets[k + 1] + dims[k + 1] - 1 - used_bottom[k + 1];
            used_bottom[k + 1] += 1;
            cols[src] = SVec::unit(tgt, field);
        }
    }
    let d = Matrix::from_columns(total, field, cols).expect("in range");
    // Conjugate by a block unitriangular change of basis g: d' = g d g^{-1}.
    let (g, ginv) = random_unitriangular(rng, field, &dims, &offsets);
    let d = g.mul(&d).and_then(|m| m.mul(&ginv)).expect("square");
    Complex::new(field, degrees, d).expect("conjugate of a complex")
}

fn random_unitriangular(rng: &mut SeededRng, field: Field, dims: &[usize], offsets: &[usize]) -> (Matrix, Matrix) {
    let total: usize = dims.iter().sum();
    let mut g = Matrix::identity(total, field);
    let mut ginv = Matrix::identity(total, field);
    for (k, &d) in dims.iter().enumerate() {
        for _ in 0..d {
            if d < 2 {
                break;
            }
            let i = offsets[k] + rng.gen_range(0..d);
            let j = offsets[k] + rng.gen_range(0..d);
            if i == j {
                continue;
            }
            let c = small_scalar(rng, field);
            // elementary E = I + c e_{ij}
            let e = elementary(total, field, i, j, &c);
            let einv = elementary(total, field, i, j, &-&c);
            g = e.mul(&g).expect("square");
            ginv = ginv.mul(&einv).expect("square");
        }
    }
    (g, ginv)
}

fn elementary(n: usize, field: Field, i: usize, j: usize, c: &Scalar) -> Matrix {
    let mut cols: Vec<SVec> = (0..n).map(|k| SVec::unit(k, field)).collect();
    cols[j] = SVec::from_pairs(vec![(j, field.one()), (i, c.clone())]);
    Matrix::from_columns(n, field, cols).expect("in range")
}

/// Random degree-0 chain map: a random combination of a basis of degree-0 cocycles
/// in the hom complex.
pub fn random_chain_map(rng: &mut SeededRng, a: &Complex, b: &Complex) -> crate::complex::ChainMap {
    use crate::complex::ChainMap;
    let field = a.field();
    let (hom, idx) = a.hom(b);
    let kernel = hom.block(0).kernel_basis();
    let start = hom.range(0).start;
    let cocycles: Vec<SVec> = kernel.columns().iter().map(|v| v.remap(|i| i + start)).collect();
    let (v, _) = random_combination(rng, field, &cocycles, 3);
    let m = idx.to_matrix(&v, a.total_dim(), field);
    ChainMap::new(a.clone(), b.clone(), 0, m).expect("degree-0 cocycle of the hom complex is a chain map")
}

/// Random finite cell plan over `c`: each new cell sits at a random object in a degree in
/// `-2..=1` and is attached along a random cycle of the module built so far.
pub fn random_cell_plan(rng: &mut SeededRng, c: &crate::dgcat::DgCategory, cells: usize) -> Vec<crate::derived::CellStep> {
    use crate::derived::{CellStep, Coefficient, SemiFree};
    let field = c.field();
    let mut sf = SemiFree::new(c.opposite());
    let mut plan: Vec<CellStep> = Vec::new();
    for k in 0..cells {
        let object = rng.gen_range(0..c.n_objects());
        let degree = rng.gen_range(-2..=1);
        let (m, layout) = sf.materialize_with_layout().expect("plan so far is valid");
        let v = m.value(object);
        let cycles: Vec<SVec> = {
            let start = v.range(degree + 1).start;
            v.block(degree + 1).kernel_basis().columns().iter().map(|w| w.remap(|i| i + start)).collect()
        };
        let (z, _) = random_combination(rng, field, &cycles, 3);
        let mut per_cell: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); k];
        for (i, coef) in z.iter() {
            let (j, a) = layout[object][i];
            per_cell[j].push((a, coef.clone()));
        }
        let boundary: Vec<(usize, SVec)> = per_cell
            .into_iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(j, t)| (j, SVec::from_pairs(t)))
            .collect();
        let idx = sf.push(object, degree, format!("e{k}"));
        let terms = boundary.iter().map(|(j, a)| (*j, Coefficient::Morphism(a.clone()))).collect();
        sf.set_differential(idx, terms).expect("cycle of the right degree");
        plan.push(CellStep { name: format!("e{k}"), object, degree, boundary });
    }
    plan
}
