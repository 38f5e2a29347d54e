//! Small named categories and functors used as examples and test fixtures.

use crate::complex::{is_odd, sign, Complex, HomIndex};
use crate::dgcat::{DgCategory, DgFunctor};
use crate::error::Result;
use crate::linalg::{Field, Matrix, SVec};
use crate::quotient::Arrow;

fn one_dim_names(name: &str) -> Vec<String> {
    vec![name.to_string()]
}

/// Objects `0`, `1` and a single arrow `f: 0 → 1`.
pub fn i_k(field: Field) -> DgCategory {
    let k = |dim| Complex::concentrated(field, 0, dim);
    let homs = vec![k(1), k(1), k(0), k(1)];
    let names = vec![one_dim_names("1_0"), one_dim_names("f"), vec![], one_dim_names("1_1")];
    DgCategory::from_fn(
        field,
        vec!["0".into(), "1".into()],
        homs,
        names,
        |_, _, _, _, _| SVec::unit(0, field),
        vec![SVec::unit(0, field), SVec::unit(0, field)],
    )
    .expect("well-formed")
}

/// Objects `x`, `y` with every hom equal to `k` and composition given by multiplication.
pub fn two_iso_objects(field: Field) -> DgCategory {
    let homs = (0..4).map(|_| Complex::concentrated(field, 0, 1)).collect();
    let names = vec![one_dim_names("1_x"), one_dim_names("u"), one_dim_names("v"), one_dim_names("1_y")];
    DgCategory::from_fn(
        field,
        vec!["x".into(), "y".into()],
        homs,
        names,
        |_, _, _, _, _| SVec::unit(0, field),
        vec![SVec::unit(0, field), SVec::unit(0, field)],
    )
    .expect("well-formed")
}

/// Objects `x`, `y` with `End = k` and no morphisms between them.
pub fn two_zero_hom(field: Field) -> DgCategory {
    let k = |dim| Complex::concentrated(field, 0, dim);
    let homs = vec![k(1), k(0), k(0), k(1)];
    let names = vec![one_dim_names("1_x"), vec![], vec![], one_dim_names("1_y")];
    DgCategory::from_fn(
        field,
        vec!["x".into(), "y".into()],
        homs,
        names,
        |_, _, _, _, _| SVec::unit(0, field),
        vec![SVec::unit(0, field), SVec::unit(0, field)],
    )
    .expect("well-formed")
}

/// `k[x]/x²` as a one-object category.
pub fn dual_numbers(field: Field) -> DgCategory {
    DgCategory::algebra(
        field,
        "*",
        Complex::concentrated(field, 0, 2),
        vec!["1".into(), "x".into()],
        |i, j| if i + j <= 1 { SVec::unit(i + j, field) } else { SVec::new() },
        SVec::unit(0, field),
    )
    .expect("well-formed")
}

/// The simple module `k` over the dual numbers: `x` acts by zero.
pub fn dual_simple(field: Field) -> crate::module::DgModule {
    crate::module::DgModule::from_fn(
        dual_numbers(field),
        vec![Complex::concentrated(field, 0, 1)],
        vec![vec!["k".into()]],
        |_, _, m, a| if a == 0 { SVec::unit(m, field) } else { SVec::new() },
    )
    .expect("well-formed")
}

/// `M_2(A)` for a commutative degree-0 algebra `A` with basis `names` and multiplication
/// `mul`, as a one-object category. Basis order: `a·e_ij`, grouped by matrix unit.
fn matrices_over(field: Field, names: &[&str], mul: impl Fn(usize, usize) -> SVec) -> DgCategory {
    let da = names.len();
    let idx = |i: usize, j: usize, a: usize| ((i * 2 + j) * da) + a;
    let mut basis = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for n in names {
                basis.push(if *n == "1" { format!("e{}{}", i + 1, j + 1) } else { format!("{n}e{}{}", i + 1, j + 1) });
            }
        }
    }
    DgCategory::algebra(
        field,
        "*",
        Complex::concentrated(field, 0, 4 * da),
        basis,
        |p, q| {
            let (ij, a) = (p / da, p % da);
            let (kl, b) = (q / da, q % da);
            let (i, j, k, l) = (ij / 2, ij % 2, kl / 2, kl % 2);
            if j != k {
                return SVec::new();
            }
            mul(a, b).remap(|c| idx(i, l, c))
        },
        SVec::from_pairs(vec![(idx(0, 0, 0), field.one()), (idx(1, 1, 0), field.one())]),
    )
    .expect("well-formed")
}

/// `M_2(k)`.
pub fn m2(field: Field) -> DgCategory {
    matrices_over(field, &["1"], |_, _| SVec::unit(0, field))
}

/// `M_2(k[x]/x²)`.
pub fn m2_dual(field: Field) -> DgCategory {
    matrices_over(field, &["1", "x"], |a, b| if a + b <= 1 { SVec::unit(a + b, field) } else { SVec::new() })
}

/// Path algebra of `• → •` as a one-object category: idempotents `e1`, `e2` and the
/// arrow `a = e1 · a · e2`.
pub fn a2_path(field: Field) -> DgCategory {
    let (e1, e2, a) = (0, 1, 2);
    DgCategory::algebra(
        field,
        "*",
        Complex::concentrated(field, 0, 3),
        vec!["e1".into(), "e2".into(), "a".into()],
        |p, q| match (p, q) {
            (0, 0) => SVec::unit(e1, field),
            (1, 1) => SVec::unit(e2, field),
            (0, 2) | (2, 1) => SVec::unit(a, field),
            _ => SVec::new(),
        },
        SVec::from_pairs(vec![(e1, field.one()), (e2, field.one())]),
    )
    .expect("well-formed")
}

/// `k⟨θ⟩/θ²` with `|θ| = −1` and `dθ = 0`.
pub fn theta(field: Field) -> DgCategory {
    // basis sorted by degree: θ (−1), 1 (0)
    let c = Complex::new(field, vec![-1, 0], Matrix::zeros(2, 2, field)).expect("zero differential");
    DgCategory::algebra(
        field,
        "*",
        c,
        vec!["θ".into(), "1".into()],
        |p, q| match (p, q) {
            (1, 1) => SVec::unit(1, field),
            (0, 1) | (1, 0) => SVec::unit(0, field),
            _ => SVec::new(),
        },
        SVec::unit(1, field),
    )
    .expect("well-formed")
}

/// Full dg-category on a list of complexes: `C(x, y) = Hom(V_x, V_y)` with
/// `a · b = (−1)^{|a||b|} b ∘ a`.
pub fn endomorphism_category(field: Field, complexes: &[Complex]) -> DgCategory {
    let n = complexes.len();
    let mut homs = Vec::with_capacity(n * n);
    let mut index: Vec<HomIndex> = Vec::with_capacity(n * n);
    let mut names = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (h, idx) = complexes[x].hom(&complexes[y]);
            names.push(idx.pairs.iter().map(|&(p, q)| format!("E{x}.{p}>{y}.{q}")).collect());
            homs.push(h);
            index.push(idx);
        }
    }
    let units = (0..n)
        .map(|x| {
            let idx = &index[x * n + x];
            SVec::from_pairs((0..complexes[x].total_dim()).map(|p| (idx.index(p, p), field.one())).collect())
        })
        .collect();
    DgCategory::from_fn(
        field,
        (0..n).map(|x| format!("V{x}")).collect(),
        homs,
        names,
        |x, y, z, i, j| {
            let (p, q) = index[x * n + y].pairs[i];
            let (q2, r) = index[y * n + z].pairs[j];
            if q != q2 {
                return SVec::new();
            }
            let odd = is_odd(index[x * n + y].degrees[i]) && is_odd(index[y * n + z].degrees[j]);
            SVec::single(index[x * n + z].index(p, r), sign(odd, field))
        },
        units,
    )
    .expect("well-formed")
}

fn scalar_matrix(field: Field, rows: usize, cols: &[&[(usize, i64)]]) -> Matrix {
    Matrix::from_columns(
        rows,
        field,
        cols.iter()
            .map(|c| SVec::from_pairs(c.iter().map(|&(r, v)| (r, field.from_i64(v))).collect()))
            .collect(),
    )
    .expect("in range")
}

/// Functor from the unit category picking out `target` object `at`.
pub fn point(target: &DgCategory, at: usize) -> DgFunctor {
    let field = target.field();
    let unit = DgCategory::unit(field);
    let m = Matrix::from_columns(target.hom_dim(at, at), field, vec![target.unit_of(at).clone()]).expect("in range");
    DgFunctor::new(unit, target.clone(), vec![at], vec![m]).expect("well-formed")
}

/// `I_k → two_iso_objects`, `0 ↦ x`, `1 ↦ y`, `f ↦ u`.
pub fn i_k_to_two_iso(field: Field) -> DgFunctor {
    let (s, t) = (i_k(field), two_iso_objects(field));
    let comps = vec![
        scalar_matrix(field, 1, &[&[(0, 1)]]),
        scalar_matrix(field, 1, &[&[(0, 1)]]),
        Matrix::zeros(1, 0, field),
        scalar_matrix(field, 1, &[&[(0, 1)]]),
    ];
    DgFunctor::new(s, t, vec![0, 1], comps).expect("well-formed")
}

/// `I_k → 𝟏` collapsing both objects.
pub fn i_k_collapse(field: Field) -> DgFunctor {
    let (s, t) = (i_k(field), DgCategory::unit(field));
    let comps = vec![
        scalar_matrix(field, 1, &[&[(0, 1)]]),
        scalar_matrix(field, 1, &[&[(0, 1)]]),
        Matrix::zeros(1, 0, field),
        scalar_matrix(field, 1, &[&[(0, 1)]]),
    ];
    DgFunctor::new(s, t, vec![0, 0], comps).expect("well-formed")
}

/// The automorphism `x ↦ −x` of `k[x]/x²`.
pub fn dual_sign(field: Field) -> DgFunctor {
    let a = dual_numbers(field);
    let m = scalar_matrix(field, 2, &[&[(0, 1)], &[(1, -1)]]);
    DgFunctor::new(a.clone(), a, vec![0], vec![m]).expect("well-formed")
}

/// `k → k[x]/x²`.
pub fn dual_unit(field: Field) -> DgFunctor {
    point(&dual_numbers(field), 0)
}

/// Every bundled category, by name.
pub fn categories(field: Field) -> Vec<(&'static str, DgCategory)> {
    vec![
        ("unit", DgCategory::unit(field)),
        ("i_k", i_k(field)),
        ("dual_numbers", dual_numbers(field)),
        ("m2", m2(field)),
        ("m2_dual", m2_dual(field)),
        ("a2_path", a2_path(field)),
        ("theta", theta(field)),
        ("two_iso_objects", two_iso_objects(field)),
        ("two_zero_hom", two_zero_hom(field)),
    ]
}

/// Every bundled functor, by name.
pub fn functors(field: Field) -> Vec<(&'static str, DgFunctor)> {
    vec![
        ("unit_to_two_iso", point(&two_iso_objects(field), 0)),
        ("unit_to_i_k", point(&i_k(field), 0)),
        ("unit_to_two_zero", point(&two_zero_hom(field), 0)),
        ("i_k_to_two_iso", i_k_to_two_iso(field)),
        ("i_k_collapse", i_k_collapse(field)),
        ("dual_unit", dual_unit(field)),
        ("dual_sign", dual_sign(field)),
    ]
}

pub fn category(name: &str, field: Field) -> Result<DgCategory> {
    categories(field)
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c)
        .ok_or_else(|| crate::Error::Invalid(format!("no bundled category `{name}`")))
}

/// Bundled localization problems: a category and closed degree-0 arrows to invert.
pub fn localizations(field: Field) -> Vec<(&'static str, DgCategory, Vec<Arrow>)> {
    let arrow = |source, target, value| Arrow { source, target, value };
    let e = |i| SVec::unit(i, field);
    let m2 = m2(field);
    let unit = m2.unit_of(0).clone();
    vec![
        ("i_k_at_f", i_k(field), vec![arrow(0, 1, e(0))]),
        ("i_k_at_nothing", i_k(field), vec![]),
        ("two_iso_at_u", two_iso_objects(field), vec![arrow(0, 1, e(0))]),
        ("two_iso_at_u_and_v", two_iso_objects(field), vec![arrow(0, 1, e(0)), arrow(1, 0, e(0))]),
        ("two_zero_at_nothing", two_zero_hom(field), vec![]),
        ("dual_at_1", dual_numbers(field), vec![arrow(0, 0, e(0))]),
        ("theta_at_1", theta(field), vec![arrow(0, 0, e(1))]),
        ("m2_at_1", m2, vec![arrow(0, 0, unit)]),
    ]
}
