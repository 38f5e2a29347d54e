use dgforge::complex::{ChainMap, Complex};
use dgforge::gen;
use dgforge::linalg::Field;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(101))]
}

fn h_dims(c: &Complex, lo: i32, hi: i32) -> Vec<usize> {
    (lo..=hi).map(|n| c.cohomology_dim(n)).collect()
}

/// Cohomology dims by brute force: dim ker − dim im computed from dense kernel bases.
fn oracle_h(c: &Complex, n: i32) -> usize {
    let z = c.block(n).kernel_basis().ncols();
    let prev = c.block(n - 1);
    let b = prev.rank();
    z - b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_matches_cohomology(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let c = gen::random_complex(&mut rng, f, -2, 2, 4);
        let chi: i64 = (-2..=2).map(|n| if n % 2 == 0 { 1 } else { -1 } * c.cohomology_dim(n) as i64).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
        for n in -3..=3 {
            prop_assert_eq!(c.cohomology_dim(n), oracle_h(&c, n));
        }
    }

    #[test]
    fn shift_moves_cohomology(seed in any::<u64>(), f in field_strategy(), k in -3i32..=3) {
        let mut rng = gen::rng(seed);
        let c = gen::random_complex(&mut rng, f, -1, 2, 4);
        let s = c.shift(k);
        prop_assert!(s.d_squared_violation().is_none());
        for n in -6..=6 {
            prop_assert_eq!(s.cohomology_dim(n), c.cohomology_dim(n + k));
        }
    }

    #[test]
    fn kunneth(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_complex(&mut rng, f, -1, 1, 4);
        let b = gen::random_complex(&mut rng, f, 0, 2, 4);
        let (t, _) = a.tensor(&b);
        prop_assert!(t.d_squared_violation().is_none());
        let ha = h_dims(&a, -1, 1);
        let hb = h_dims(&b, 0, 2);
        for n in -1..=3 {
            let mut expected = 0;
            for (i, p) in (-1..=1).enumerate() {
                let q = n - p;
                if (0..=2).contains(&q) {
                    expected += ha[i] * hb[q as usize];
                }
            }
            prop_assert_eq!(t.cohomology_dim(n), expected);
        }
    }

    #[test]
    fn hom_cohomology_is_hom_of_cohomology(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_complex(&mut rng, f, -1, 1, 4);
        let b = gen::random_complex(&mut rng, f, -1, 1, 4);
        let (h, _) = a.hom(&b);
        prop_assert!(h.d_squared_violation().is_none());
        for n in -2..=2 {
            let mut expected = 0;
            for p in -1..=1 {
                expected += a.cohomology_dim(p) * b.cohomology_dim(p + n);
            }
            prop_assert_eq!(h.cohomology_dim(n), expected);
        }
    }

    #[test]
    fn cone_long_exact_sequence(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_complex(&mut rng, f, -1, 1, 4);
        let b = gen::random_complex(&mut rng, f, -1, 1, 4);
        let m = gen::random_chain_map(&mut rng, &a, &b);
        prop_assert!(m.commutation_violation().is_none());
        let cone = m.cone().unwrap();
        prop_assert!(cone.d_squared_violation().is_none());
        // H^n(cone) = coker(H^n f) ⊕ ker(H^{n+1} f)
        for n in -3..=2 {
            let r_n = m.induced_map(n).rank();
            let r_n1 = m.induced_map(n + 1).rank();
            let expected = (b.cohomology_dim(n) - r_n) + (a.cohomology_dim(n + 1) - r_n1);
            prop_assert_eq!(cone.cohomology_dim(n), expected);
        }
        prop_assert_eq!(m.is_quasi_iso(), cone.is_acyclic());
    }

    #[test]
    fn identity_is_quasi_iso(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_complex(&mut rng, f, -1, 1, 5);
        let id = ChainMap::identity(&a);
        prop_assert!(id.is_quasi_iso());
        let z = ChainMap::zero(&a, &a);
        prop_assert_eq!(z.is_quasi_iso(), a.is_acyclic());
    }

    #[test]
    fn direct_sum_adds_cohomology(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_complex(&mut rng, f, -1, 1, 4);
        let b = gen::random_complex(&mut rng, f, 0, 2, 4);
        let (s, _, _) = a.direct_sum(&b);
        for n in -2..=3 {
            prop_assert_eq!(s.cohomology_dim(n), a.cohomology_dim(n) + b.cohomology_dim(n));
        }
    }

    #[test]
    fn representatives_are_canonical(seed in any::<u64>(), f in field_strategy()) {
        let mut rng = gen::rng(seed);
        let c = gen::random_complex(&mut rng, f, 0, 2, 5);
        for n in 0..=2 {
            let h = c.cohomology(n);
            for k in 0..h.dim() {
                let coords = dgforge::linalg::SVec::unit(k, f);
                let rep = h.representative(&coords);
                prop_assert_eq!(h.class_of(&rep), Some(coords.clone()));
                // adding a coboundary keeps the class
                let range = c.range(n - 1);
                for i in range {
                    let moved = rep.add(c.d_of(i));
                    prop_assert_eq!(h.class_of(&moved), Some(coords.clone()));
                }
            }
        }
    }
}
