use dgforge::bimodule::{diagonal, phi, DgBimodule};
use dgforge::linalg::SVec;
use dgforge::derived::{bar_resolution, derived_tensor, diagonal_bar, hochschild, rhom, rhom_dims, tensor_over};
use dgforge::library;
use dgforge::linalg::Field;
use dgforge::module::{yoneda_left, yoneda_right};

const Q: Field = Field::Rationals;

fn fields() -> Vec<Field> {
    vec![Q, Field::Prime(2), Field::Prime(5)]
}

#[test]
fn bar_constructions_are_modules() {
    for f in fields() {
        for (name, c) in library::categories(f) {
            for x in 0..c.n_objects() {
                for m in [yoneda_left(&c, x), yoneda_right(&c.opposite(), x)] {
                    let bar = bar_resolution(&m, 3).unwrap();
                    let b = bar.semifree.materialize().unwrap();
                    assert!(b.validate().passed(), "bar over {name} at {x}: {}", b.validate());
                }
            }
            let bar = diagonal_bar(&c, 3).unwrap();
            let b = bar.semifree.materialize().unwrap();
            assert!(b.validate().passed(), "diagonal bar over {name}: {}", b.validate());
            let _ = diagonal(&c);
        }
    }
}

fn cohomology(c: &dgforge::complex::Complex, n: i32) -> usize {
    c.cohomology_dim(n)
}

#[test]
fn ext_of_the_simple_dual_module() {
    for f in fields() {
        let k = library::dual_simple(f);
        assert!(k.validate().passed());
        let r = rhom(&k, &k, 5).unwrap();
        assert_eq!(r.report.hi, Some(3));
        // minimal resolution ... → A →x→ A → k gives k →0→ k →0→ ... after Hom(−, k)
        for n in 0..=3 {
            assert_eq!(cohomology(&r.complex, n), 1, "Ext^{n} over {f:?}");
        }
        let (dims, report) = rhom_dims(&k, &k, 5, -2, 6).unwrap();
        assert_eq!(dims, vec![(-2, 0), (-1, 0), (0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(report.stabilized, Some(true));
    }
}

#[test]
fn derived_yoneda_on_representables() {
    for f in fields() {
        for (name, c) in library::categories(f) {
            for z in 0..c.n_objects() {
                let h = yoneda_left(&c, z);
                for w in 0..c.n_objects() {
                    let g = yoneda_left(&c, w);
                    let r = rhom(&h, &g, 4).unwrap();
                    for n in -3..=3 {
                        if r.report.contains(n) {
                            assert_eq!(cohomology(&r.complex, n), g.value(z).cohomology_dim(n), "{name}: RHom(h^{z}, h^{w}) in degree {n}");
                        }
                    }
                }
            }
        }
    }
}

/// Cohomology of `A →0→ A →2x→ A →0→ A →2x→ …`, from the 2-periodic bimodule resolution of
/// `k[x]/x²`, whose maps become multiplication by `x − x = 0` and `x + x` after `Hom(−, A)`.
fn periodic_oracle(f: Field, n: i32) -> usize {
    let two_x_is_zero = f.characteristic() == 2;
    // ranks of the maps A → A: 0 for the first kind, rank(2x) = 1 unless 2 = 0
    let rank_2x = if two_x_is_zero { 0 } else { 1 };
    let out_rank = |k: i32| if k % 2 == 0 { 0 } else { rank_2x };
    let in_rank = if n == 0 { 0 } else { out_rank(n - 1) };
    2 - out_rank(n) - in_rank
}

#[test]
fn hochschild_of_dual_numbers_matches_periodic_resolution() {
    for f in fields() {
        let hh = hochschild(&library::dual_numbers(f), -1, 3, 5).unwrap();
        assert_eq!(hh.report.stabilized, Some(true));
        let expected: Vec<(i32, usize)> = (-1..=3).map(|n| (n, if n < 0 { 0 } else { periodic_oracle(f, n) })).collect();
        assert_eq!(hh.dims, expected, "{f:?}");
    }
    assert_eq!(periodic_oracle(Q, 0), 2);
    assert_eq!(periodic_oracle(Q, 1), 1);
}

#[test]
fn hochschild_agrees_with_the_generic_resolution() {
    for f in [Q, Field::Prime(2)] {
        for (name, c) in library::categories(f) {
            if c.hom_dim(0, 0) > 2 {
                continue;
            }
            let hh = hochschild(&c, -2, 2, 4).unwrap();
            let delta = diagonal(&c);
            let (dims, _) = rhom_dims(delta.module(), delta.module(), 4, -2, 2).unwrap();
            for (n, d) in &hh.dims {
                if let Some(p) = dims.iter().find(|p| p.0 == *n) {
                    assert_eq!(*d, p.1, "{name} HH^{n}");
                }
            }
        }
    }
}

#[test]
fn hochschild_is_morita_invariant() {
    let hh = |c: &dgforge::dgcat::DgCategory| hochschild(c, 0, 3, 5).unwrap();
    let (k, m2) = (hh(&dgforge::dgcat::DgCategory::unit(Q)), hh(&library::m2(Q)));
    assert_eq!(k.dims, m2.dims);
    assert_eq!(k.dims, vec![(0, 1), (1, 0), (2, 0), (3, 0)]);
    let (a, ma) = (hh(&library::dual_numbers(Q)), hh(&library::m2_dual(Q)));
    assert_eq!(ma.dims, a.dims);
    assert_eq!(ma.dims, vec![(0, 2), (1, 1), (2, 1), (3, 1)]);
    assert_eq!(ma.report.stabilized, Some(true));
}

fn table(m: &dgforge::bimodule::DgBimodule, report: &dgforge::derived::TruncationReport) -> Vec<(usize, usize, i32, usize)> {
    let mut out = Vec::new();
    for x in 0..m.left().n_objects() {
        for y in 0..m.right().n_objects() {
            for n in -4..=4 {
                if report.contains(n) {
                    out.push((x, y, n, m.value(x, y).cohomology_dim(n)));
                }
            }
        }
    }
    out
}

fn functors_with_identities(f: Field) -> Vec<(String, dgforge::dgcat::DgFunctor)> {
    let mut out: Vec<(String, dgforge::dgcat::DgFunctor)> = library::functors(f).into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for (name, c) in library::categories(f) {
        if c.hom_dim(0, 0) <= 2 {
            out.push((format!("id_{name}"), dgforge::dgcat::DgFunctor::identity(&c)));
        }
    }
    out
}

#[test]
fn tensor_of_graphs_is_the_graph_of_the_composite() {
    for f in [Q, Field::Prime(3)] {
        let fs = functors_with_identities(f);
        let mut pairs = 0;
        for (n1, g1) in &fs {
            for (n2, g2) in &fs {
                if g1.target != g2.source {
                    continue;
                }
                let (t, report) = derived_tensor(&phi(g1), &phi(g2), 4).unwrap();
                assert!(t.validate().passed(), "{n1} then {n2}: {}", t.validate());
                let composite = phi(&g1.then(g2).unwrap());
                assert_eq!(table(&t, &report), table(&composite, &report), "{n1} then {n2}");
                pairs += 1;
            }
        }
        assert!(pairs >= 20, "only {pairs} composable pairs");
    }
}

#[test]
fn derived_tensor_unit_laws() {
    for f in [Q, Field::Prime(2)] {
        for (name, g) in functors_with_identities(f) {
            let e = phi(&g);
            let (left, lr) = derived_tensor(&diagonal(&g.source), &e, 4).unwrap();
            let (right, rr) = derived_tensor(&e, &diagonal(&g.target), 4).unwrap();
            assert_eq!(table(&left, &lr), table(&e, &lr), "Δ ⊗ φ({name})");
            assert_eq!(table(&right, &rr), table(&e, &rr), "φ({name}) ⊗ Δ");
        }
    }
}

#[test]
fn derived_tensor_is_associative_on_cohomology() {
    let f = Q;
    let dual = library::dual_numbers(f);
    let sign = phi(&library::dual_sign(f));
    let unit = phi(&library::dual_unit(f));
    let delta = diagonal(&dual);
    let (ab, _) = derived_tensor(&unit, &sign, 3).unwrap();
    let (left, lr) = derived_tensor(&ab, &delta, 3).unwrap();
    let (bc, _) = derived_tensor(&sign, &delta, 3).unwrap();
    let (right, rr) = derived_tensor(&unit, &bc, 3).unwrap();
    let window = if lr.lo > rr.lo { lr } else { rr };
    assert_eq!(table(&left, &window), table(&right, &window));
    assert!(!table(&left, &window).is_empty());
}

fn all_dims(m: &dgforge::bimodule::DgBimodule) -> Vec<(usize, usize, i32, usize, usize)> {
    let mut out = Vec::new();
    for x in 0..m.left().n_objects() {
        for y in 0..m.right().n_objects() {
            let v = m.value(x, y);
            for n in v.support() {
                out.push((x, y, n, v.dim(n), v.cohomology_dim(n)));
            }
        }
    }
    out
}

#[test]
fn strict_tensor_with_the_diagonal_is_the_identity() {
    for f in [Q, Field::Prime(2)] {
        for (name, g) in functors_with_identities(f) {
            let e = phi(&g);
            let left = tensor_over(&diagonal(&g.source), &e).unwrap();
            let right = tensor_over(&e, &diagonal(&g.target)).unwrap();
            assert!(left.validate().passed(), "{name}: {}", left.validate());
            assert!(right.validate().passed(), "{name}: {}", right.validate());
            assert_eq!(all_dims(&left), all_dims(&e), "Δ ⊗ φ({name})");
            assert_eq!(all_dims(&right), all_dims(&e), "φ({name}) ⊗ Δ");
        }
    }
}

#[test]
fn strict_tensor_of_graphs_composes() {
    let fs = functors_with_identities(Q);
    for (n1, g1) in &fs {
        for (n2, g2) in &fs {
            if g1.target == g2.source {
                let t = tensor_over(&phi(g1), &phi(g2)).unwrap();
                assert_eq!(all_dims(&t), all_dims(&phi(&g1.then(g2).unwrap())), "{n1} then {n2}");
            }
        }
    }
}

#[test]
fn strict_tensor_over_the_unit_is_the_tensor_of_complexes() {
    let mut rng = dgforge::gen::rng(3);
    let unit = dgforge::dgcat::DgCategory::unit(Q);
    for _ in 0..5 {
        let a = dgforge::gen::random_complex(&mut rng, Q, -2, 2, 3);
        let b = dgforge::gen::random_complex(&mut rng, Q, -2, 2, 3);
        let bimodule = |v: &dgforge::complex::Complex| {
            let names = vec![(0..v.total_dim()).map(|i| format!("v{i}")).collect()];
            let unit_act = |m: usize| SVec::unit(m, Q);
            DgBimodule::from_actions(unit.clone(), unit.clone(), vec![v.clone()], names, |_, _, _, m, _| unit_act(m), |_, _, _, _, m| unit_act(m)).unwrap()
        };
        let t = tensor_over(&bimodule(&a), &bimodule(&b)).unwrap();
        let (ab, _) = b.tensor(&a);
        for n in -4..=4 {
            assert_eq!(t.value(0, 0).dim(n), ab.dim(n));
            assert_eq!(t.value(0, 0).cohomology_dim(n), ab.cohomology_dim(n));
        }
    }
}

#[test]
fn bar_augmentation_is_a_quasi_iso_in_its_window() {
    for f in [Q, Field::Prime(3)] {
        for (name, c) in library::categories(f) {
            if c.hom_dim(0, 0) > 4 {
                continue;
            }
            for x in 0..c.n_objects() {
                for len in 1..=3 {
                    let m = yoneda_left(&c, x);
                    let bar = bar_resolution(&m, len).unwrap();
                    let (b, aug) = bar.augmented(&m).unwrap();
                    assert!(aug.validate().passed(), "{name}: {}", aug.validate());
                    let report = bar.module_report();
                    for y in 0..c.n_objects() {
                        let map = aug.component_map(y).unwrap();
                        assert_eq!(aug.components[y].rank(), m.dim(y), "augmentation onto {name}({x}, {y})");
                        for n in -4..=3 {
                            if report.contains(n) {
                                let h = m.value(y).cohomology_dim(n);
                                assert_eq!(b.value(y).cohomology_dim(n), h, "{name} L={len} degree {n}");
                                assert_eq!(map.induced_map(n).rank(), h);
                            }
                        }
                    }
                }
            }
        }
    }
    // degree-0 input with length 2: exact from degree 0 on
    let m = yoneda_left(&library::dual_numbers(Q), 0);
    assert_eq!(bar_resolution(&m, 2).unwrap().module_report().lo, Some(0));
}

#[test]
fn homotopy_groups_of_mapping_spaces() {
    use dgforge::derived::{map_homotopy_endo, map_homotopy_unit, EndoGroup, HomotopyGroup};
    let theta = library::theta(Q);
    assert_eq!(map_homotopy_unit(&theta, 0, 2).unwrap().dim(), Some(1));
    assert_eq!(map_homotopy_unit(&library::dual_numbers(Q), 0, 2).unwrap().dim(), Some(0));
    let unit = dgforge::dgcat::DgCategory::unit(Q);
    let HomotopyGroup::Automorphisms(aut) = map_homotopy_unit(&unit, 0, 1).unwrap() else { panic!("π_1") };
    assert_eq!(aut.algebra_dim, 1);
    assert!(aut.is_unit(&aut.identity));
    assert!(!aut.is_unit(&SVec::new()));
    let HomotopyGroup::Automorphisms(aut) = map_homotopy_unit(&library::dual_numbers(Q), 0, 1).unwrap() else { panic!("π_1") };
    // 1 + x is a unit, x is not
    assert!(aut.is_unit(&SVec::from_pairs(vec![(0, Q.one()), (1, Q.one())])));
    assert!(!aut.is_unit(&SVec::unit(1, Q)));
    assert!(map_homotopy_unit(&unit, 0, 0).is_err());

    for (name, c) in library::categories(Q) {
        let hh = hochschild(&c, -3, 0, 4).unwrap();
        for i in 1..=4u32 {
            let (group, _) = map_homotopy_endo(&c, i, 4).unwrap();
            let expected = hh.dim(1 - i as i32).unwrap();
            match group {
                EndoGroup::Units { hh0_dim } => assert_eq!((i, hh0_dim), (1, expected), "{name}"),
                EndoGroup::Vector { degree, dim } => assert_eq!((degree, dim), (1 - i as i32, expected), "{name} i={i}"),
            }
        }
    }
    let (g, _) = map_homotopy_endo(&library::dual_numbers(Q), 2, 4).unwrap();
    assert_eq!(g, EndoGroup::Vector { degree: -1, dim: 0 });
}

#[test]
fn theta_has_negative_hochschild_classes() {
    let hh = hochschild(&library::theta(Q), -2, 1, 4).unwrap();
    assert!(hh.dim(-1).unwrap() >= 1, "{:?}", hh.dims);
}

#[test]
fn picard_verification() {
    use dgforge::derived::picard_verify;
    for f in [Q, Field::Prime(5)] {
        let a = library::dual_numbers(f);
        let delta = diagonal(&a);
        let twist = phi(&library::dual_sign(f));
        let double = delta.direct_sum(&delta).unwrap();
        let r = picard_verify(&a, &delta, &delta, 4, 0, 8).unwrap();
        assert!(r.verified(), "{:?}", r.pq.obstruction);
        assert!(r.pq.witness.as_ref().unwrap().verify(&r.pq.tensor, 4));
        let r = picard_verify(&a, &twist, &twist, 4, 0, 8).unwrap();
        assert!(r.verified(), "{:?} {:?}", r.pq.obstruction, r.pq.dims);
        let r = picard_verify(&a, &double, &double, 4, 0, 8).unwrap();
        assert!(!r.verified());
        let why = r.pq.obstruction.unwrap();
        assert!(why.contains("dim H^0: diagonal 2, tensor 8"), "{why}");
        let suite = [&delta, &twist, &double];
        for p in suite {
            for q in suite {
                let (pq, qp) = (picard_verify(&a, p, q, 4, 1, 4).unwrap(), picard_verify(&a, q, p, 4, 1, 4).unwrap());
                assert_eq!(pq.verified(), qp.verified());
            }
        }
    }
    let m2 = library::m2(Q);
    let d = diagonal(&m2);
    assert!(picard_verify(&m2, &d, &d, 3, 0, 4).unwrap().verified());
    assert!(picard_verify(&library::i_k(Q), &diagonal(&library::i_k(Q)), &diagonal(&library::i_k(Q)), 3, 0, 4).is_err());
}

#[test]
fn cell_modules() {
    use dgforge::derived::{build_cell_module, CellStep};
    for f in fields() {
        let c = library::i_k(f);
        // empty plan
        let zero = build_cell_module(&c, &[]).unwrap();
        assert!((0..2).all(|x| zero.dim(x) == 0));
        // one cell at x is the representable h_x
        for x in 0..2 {
            let m = build_cell_module(&c, &[CellStep { name: "g".into(), object: x, degree: 0, boundary: vec![] }]).unwrap();
            let h = yoneda_right(&c, x);
            for z in 0..2 {
                assert_eq!(m.value(z).degrees(), h.value(z).degrees());
            }
        }
        // cone of h_0 → h_1 along f
        let plan = [
            CellStep { name: "g".into(), object: 1, degree: 0, boundary: vec![] },
            CellStep { name: "e".into(), object: 0, degree: -1, boundary: vec![(0, SVec::unit(0, f))] },
        ];
        let m = build_cell_module(&c, &plan).unwrap();
        assert!(m.validate().passed());
        for z in 0..2 {
            // u ↦ u · f from C(z, 0) to C(z, 1)
            let cols = (0..c.hom_dim(z, 0)).map(|i| c.compose(z, 0, 1, &SVec::unit(i, f), &SVec::unit(0, f))).collect();
            let mat = dgforge::linalg::Matrix::from_columns(c.hom_dim(z, 1), f, cols).unwrap();
            let map = dgforge::complex::ChainMap::new(c.hom(z, 0).clone(), c.hom(z, 1).clone(), 0, mat).unwrap();
            let cone = map.cone().unwrap();
            for n in -2..=2 {
                assert_eq!(m.value(z).cohomology_dim(n), cone.cohomology_dim(n), "z={z} n={n}");
                assert_eq!(m.value(z).dim(n), cone.dim(n));
            }
        }
        // attaching along a non-cycle fails
        let dual = library::dual_numbers(f);
        let bad = [
            CellStep { name: "g".into(), object: 0, degree: 0, boundary: vec![] },
            CellStep { name: "e".into(), object: 0, degree: -1, boundary: vec![(0, SVec::unit(1, f))] },
            CellStep { name: "e2".into(), object: 0, degree: -2, boundary: vec![(1, SVec::unit(0, f))] },
        ];
        let err = build_cell_module(&dual, &bad).unwrap_err().to_string();
        assert!(err.contains("e2"), "{err}");
    }
}

mod random_modules {
    use super::*;
    use dgforge::derived::build_cell_module;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn derived_yoneda(seed in 0u64..1000, which in 0usize..9, cells in 1usize..5) {
            let (name, c) = library::categories(Q).swap_remove(which);
            let mut rng = dgforge::gen::rng(seed);
            let plan = dgforge::gen::random_cell_plan(&mut rng, &c, cells);
            let g = build_cell_module(&c, &plan).unwrap();
            prop_assert!(g.validate().passed());
            let cop = c.opposite();
            for x in 0..c.n_objects() {
                let h = yoneda_left(&cop, x);
                let r = rhom(&h, &g, 4).unwrap();
                for n in -4..=4 {
                    if r.report.contains(n) {
                        prop_assert_eq!(r.complex.cohomology_dim(n), g.value(x).cohomology_dim(n), "{} x={} n={}", name, x, n);
                    }
                }
            }
        }

        #[test]
        fn rhom_identity_class(seed in 0u64..1000, which in 0usize..9, cells in 1usize..4) {
            let (_, c) = library::categories(Q).swap_remove(which);
            let mut rng = dgforge::gen::rng(seed);
            let g = build_cell_module(&c, &dgforge::gen::random_cell_plan(&mut rng, &c, cells)).unwrap();
            let nonzero = (0..c.n_objects()).any(|x| !g.value(x).is_acyclic());
            let r = rhom(&g, &g, 3).unwrap();
            if nonzero && r.report.contains(0) {
                prop_assert!(r.complex.cohomology_dim(0) >= 1);
            }
        }
    }
}
