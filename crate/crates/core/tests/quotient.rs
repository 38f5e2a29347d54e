use dgforge::dgcat::{tensor_cat, DgCategory, DgFunctor};
use dgforge::gen;
use dgforge::library;
use dgforge::linalg::{Field, SVec};
use dgforge::quotient::{check_localization_property, drinfeld_quotient, localize, Arrow};
use proptest::prelude::*;

const Q: Field = Field::Rationals;

fn fields() -> Vec<Field> {
    vec![Q, Field::Prime(2), Field::Prime(3)]
}

fn window(c: &DgCategory, x: usize, y: usize, lo: i32) -> Vec<usize> {
    (lo..=0).map(|n| c.hom_cohomology_dim(x, y, n)).collect()
}

#[test]
fn killing_the_only_object_of_the_unit() {
    for f in fields() {
        let q = drinfeld_quotient(&DgCategory::unit(f), &[0], -6).unwrap();
        assert!(q.category.validate().passed());
        let h = q.category.hom(0, 0);
        for n in -6..=0 {
            assert_eq!(h.cohomology_dim(n), 0, "H^{n} over {f:?}");
        }
        // ε^n spans degree −n; dε^n = ε^{n−1} for odd n and 0 for even n
        for n in 1..=5 {
            assert_eq!(h.dim(-n), 1);
            let e = h.range(-n).start;
            let d = h.d_of(e);
            if n % 2 == 1 {
                assert_eq!(d, &SVec::unit(h.range(-n + 1).start, f), "dε^{n}");
            } else {
                assert!(d.is_zero(), "dε^{n}");
            }
        }
        assert_eq!(q.notice.as_deref(), Some("[C] has no zero object; the quotient is taken without one"));
    }
}

#[test]
fn killing_one_of_two_isomorphic_objects_kills_both() {
    for f in fields() {
        let c = library::two_iso_objects(f);
        let q = drinfeld_quotient(&c, &[0], -5).unwrap();
        assert!(q.category.validate().passed());
        assert_eq!(window(&q.category, 1, 1, -5), vec![0; 6]);
        assert!(q.projection.validate().passed());
    }
}

#[test]
fn killing_an_unrelated_object_changes_nothing_else() {
    for f in fields() {
        let c = library::two_zero_hom(f);
        let q = drinfeld_quotient(&c, &[0], -4).unwrap();
        assert_eq!(window(&q.category, 1, 1, -4), vec![0, 0, 0, 0, 1]);
        assert_eq!(window(&q.category, 0, 0, -4), vec![0; 5]);
        assert!(q.notice.is_some());
    }
}

#[test]
fn killing_nothing_is_the_identity() {
    for f in fields() {
        for (name, c) in library::categories(f) {
            let q = drinfeld_quotient(&c, &[], -8).unwrap();
            assert_eq!(q.category, c, "{name}");
            assert_eq!(q.projection, DgFunctor::identity(&c), "{name}");
        }
    }
}

#[test]
fn quotients_of_bundled_categories_validate() {
    for f in fields() {
        for (name, c) in library::categories(f) {
            // word spaces grow like dim^(1 − w); keep the large algebras to a short window
            let w = if c.hom_dim(0, 0) > 4 { -2 } else { -3 };
            for k in 0..c.n_objects() {
                let q = drinfeld_quotient(&c, &[k], w).unwrap();
                let v = q.category.validate();
                assert!(v.passed(), "{name} / {k}: {v}");
                let v = q.projection.validate();
                assert!(v.passed(), "{name} / {k} projection: {v}");
            }
        }
    }
}

#[test]
fn windows_are_monotone() {
    for f in fields() {
        let c = tensor_cat(&library::i_k(f), &library::theta(f)).unwrap();
        let a = drinfeld_quotient(&c, &[1], -3).unwrap();
        let b = drinfeld_quotient(&c, &[1], -4).unwrap();
        for x in 0..c.n_objects() {
            for y in 0..c.n_objects() {
                assert_eq!(window(&a.category, x, y, -3), window(&b.category, x, y, -4)[1..], "{x} {y}");
            }
        }
    }
}

#[test]
fn bad_windows_and_bases_are_rejected() {
    let f = Q;
    assert!(drinfeld_quotient(&DgCategory::unit(f), &[0], 1).is_err());
    let c = library::endomorphism_category(f, &[gen::random_complex(&mut gen::rng(3), f, -1, 1, 2)]);
    assert!(drinfeld_quotient(&c, &[0], -2).is_err());
    assert!(drinfeld_quotient(&DgCategory::unit(f), &[5], -2).is_err());
}

fn arrow_f(f: Field) -> Arrow {
    Arrow { source: 0, target: 1, value: SVec::unit(0, f) }
}

#[test]
fn inverting_the_arrow_of_the_interval() {
    for f in fields() {
        let c = library::i_k(f);
        let l = localize(&c, &[arrow_f(f)], -3).unwrap();
        assert!(l.stabilized);
        assert!(l.category.validate().passed());
        assert!(l.canonical.validate().passed());
        let one = DgCategory::unit(f);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(window(&l.category, x, y, -3), window(&one, 0, 0, -3), "{x}→{y}");
            }
        }
        assert!(check_localization_property(&l.canonical, &[arrow_f(f)]).unwrap().holds());
        assert!(!check_localization_property(&DgFunctor::identity(&c), &[arrow_f(f)]).unwrap().holds());
    }
}

#[test]
fn inverting_an_isomorphism_changes_nothing() {
    for f in fields() {
        let c = library::two_iso_objects(f);
        let l = localize(&c, &[arrow_f(f)], -3).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(window(&l.category, x, y, -3), window(&c, x, y, -3));
            }
        }
        assert!(check_localization_property(&l.canonical, &[arrow_f(f)]).unwrap().holds());
    }
}

#[test]
fn localization_rejects_non_closed_or_odd_arrows() {
    let f = Q;
    let c = library::theta(f);
    let theta = Arrow { source: 0, target: 0, value: SVec::unit(0, f) };
    assert!(localize(&c, &[theta], -2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn quotients_of_endomorphism_categories_validate(seed in 0u64..1000) {
        let f = Q;
        let mut rng = gen::rng(seed);
        let vs: Vec<_> = (0..2).map(|_| gen::random_complex(&mut rng, f, 0, 0, 2)).collect();
        let c = tensor_cat(&library::endomorphism_category(f, &vs), &library::theta(f)).unwrap();
        let q = drinfeld_quotient(&c, &[1], -2).unwrap();
        let v = q.category.validate();
        prop_assert!(v.passed(), "{}", v);
        prop_assert!(q.projection.validate().passed());
    }
}

#[test]
fn bundled_localizations_invert_their_arrows() {
    for f in fields() {
        for (name, c, s) in library::localizations(f) {
            let l = localize(&c, &s, -3).unwrap();
            assert!(l.stabilized, "{name}");
            assert!(l.category.validate().passed(), "{name}");
            assert!(l.canonical.validate().passed(), "{name}");
            let check = check_localization_property(&l.canonical, &s).unwrap();
            assert!(check.holds(), "{name}");
            for w in check.inverses.iter().flatten() {
                assert!(w.verify(&l.category), "{name}");
            }
        }
    }
}

#[test]
fn inverting_invertible_arrows_is_quasi_fully_faithful() {
    for f in fields() {
        for (name, c, s) in library::localizations(f) {
            if name == "i_k_at_f" {
                continue;
            }
            let l = localize(&c, &s, -3).unwrap();
            assert!(l.canonical.quasi_fully_faithful().holds(), "{name}");
        }
    }
}

#[test]
fn collapsing_localizations_are_reported() {
    let f = Q;
    let x = Arrow { source: 0, target: 0, value: SVec::unit(1, f) };
    let err = localize(&library::dual_numbers(f), &[x], -3).unwrap_err().to_string();
    assert!(err.contains("words") || err.contains("settle"), "{err}");
}
