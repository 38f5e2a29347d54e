//! One line per acceptance criterion. Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use dgforge::bimodule::{diagonal, phi, qr_test, representable_bimodule, DgBimodule};
use dgforge::derived::{
    build_cell_module, derived_tensor, hochschild, map_homotopy_endo, map_homotopy_unit, picard_verify, rhom, EndoGroup,
    TruncationReport,
};
use dgforge::dgcat::{iso_in_h0, tensor_cat, DgCategory, DgFunctor};
use dgforge::gen;
use dgforge::io::{bundled_examples, Document};
use dgforge::library;
use dgforge::linalg::{Field, SVec};
use dgforge::module::{induct_along, yoneda_left};
use dgforge::quotient::{check_localization_property, drinfeld_quotient, localize, Arrow};

const Q: Field = Field::Rationals;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fields() -> [Field; 3] {
    [Q, Field::Prime(2), Field::Prime(3)]
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn axiom_suite() -> Outcome {
    let mut docs = 0;
    let mut built = 0;
    for f in fields() {
        for (name, doc) in bundled_examples(f) {
            let v = doc.validate();
            ensure(v.passed(), || format!("{name} over {f}: {v}"))?;
            docs += 1;
        }
        let cats = library::categories(f);
        let mut outputs: Vec<(String, Document)> = Vec::new();
        for (name, c) in &cats {
            outputs.push((format!("op {name}"), Document::Category(c.opposite())));
        }
        for (a, c) in cats.iter().filter(|(_, c)| c.hom_dim(0, 0) <= 2) {
            for (b, d) in cats.iter().filter(|(_, d)| d.hom_dim(0, 0) <= 2) {
                outputs.push((format!("{a} ⊗ {b}"), Document::Category(tensor_cat(c, d).map_err(|e| e.to_string())?)));
            }
        }
        for (name, g) in library::functors(f) {
            outputs.push((format!("phi {name}"), Document::Bimodule(phi(&g))));
            for x in 0..g.source.n_objects() {
                let m = induct_along(&g, &yoneda_left(&g.source, x)).map_err(|e| e.to_string())?;
                outputs.push((format!("induct {name} h^{x}"), Document::Module(m)));
            }
        }
        if f == Q {
            for (name, c) in &cats {
                let w = if c.hom_dim(0, 0) > 4 { -2 } else { -3 };
                for k in 0..c.n_objects() {
                    let q = drinfeld_quotient(c, &[k], w).map_err(|e| e.to_string())?;
                    outputs.push((format!("{name} / {k}"), Document::Category(q.category)));
                    outputs.push((format!("{name} / {k} projection"), Document::Functor(q.projection)));
                }
            }
        }
        for (name, doc) in outputs {
            let v = doc.validate();
            ensure(v.passed(), || format!("{name} over {f}: {v}"))?;
            built += 1;
        }
    }
    Ok(format!("{docs} bundled documents, {built} constructed outputs"))
}

fn derived_yoneda() -> Outcome {
    let mut checks = 0;
    for (name, c) in library::categories(Q) {
        let cop = c.opposite();
        for seed in 0..5 {
            let mut rng = gen::rng(seed);
            let g = build_cell_module(&c, &gen::random_cell_plan(&mut rng, &c, 3)).map_err(|e| e.to_string())?;
            for x in 0..c.n_objects() {
                let r = rhom(&yoneda_left(&cop, x), &g, 5).map_err(|e| e.to_string())?;
                for n in -4..=4 {
                    if r.report.contains(n) {
                        let (got, want) = (r.complex.cohomology_dim(n), g.value(x).cohomology_dim(n));
                        ensure(got == want, || format!("{name} seed {seed} x={x} H^{n}: {got} vs {want}"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} degree comparisons"))
}

fn quasi_representability_oracle() -> Outcome {
    let mut pairs = 0;
    for c in [library::two_iso_objects(Q), library::a2_path(Q), library::i_k(Q)] {
        for a in 0..c.n_objects() {
            for b in 0..c.n_objects() {
                let h = representable_bimodule(&c, b);
                for seed in 0..5 {
                    let qr = qr_test(&h, seed, 64, Some(&[a])).witness().is_some();
                    let iso = iso_in_h0(&c, a, b, seed, 64).found();
                    ensure(qr == iso, || format!("{:?}: a={a} b={b} seed {seed}: qr {qr}, iso {iso}", c.objects()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} (pair, seed) agreements"))
}

fn morita_invariance_of_hh() -> Outcome {
    let hh = |c: &DgCategory| hochschild(c, 0, 3, 5).map(|h| h.dims).map_err(|e| e.to_string());
    let (k, m2) = (hh(&DgCategory::unit(Q))?, hh(&library::m2(Q))?);
    ensure(k == m2 && k == vec![(0, 1), (1, 0), (2, 0), (3, 0)], || format!("k {k:?}, M2(k) {m2:?}"))?;
    let (a, ma) = (hh(&library::dual_numbers(Q))?, hh(&library::m2_dual(Q))?);
    ensure(a == ma && a == vec![(0, 2), (1, 1), (2, 1), (3, 1)], || format!("A {a:?}, M2(A) {ma:?}"))?;
    Ok(format!("HH^0..3: k and M2(k) {:?}; k[x]/x² and M2(k[x]/x²) {:?}", dims(&k), dims(&a)))
}

fn dims(v: &[(i32, usize)]) -> Vec<usize> {
    v.iter().map(|p| p.1).collect()
}

fn table(m: &DgBimodule, report: &TruncationReport) -> Vec<(usize, usize, i32, usize)> {
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

fn composition_is_tensor() -> Outcome {
    let fs = library::functors(Q);
    let mut pairs = 0;
    for (n1, g1) in &fs {
        for (n2, g2) in &fs {
            if g1.target != g2.source {
                continue;
            }
            let (t, report) = derived_tensor(&phi(g1), &phi(g2), 5).map_err(|e| e.to_string())?;
            let composite = phi(&g1.then(g2).map_err(|e| e.to_string())?);
            ensure(table(&t, &report) == table(&composite, &report), || format!("{n1} then {n2}"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 2, || format!("only {pairs} composable pairs"))?;
    Ok(format!("{pairs} composable pairs"))
}

fn unit_and_stabilization() -> Outcome {
    let mut bimodules = 0;
    for (name, doc) in bundled_examples(Q) {
        let Document::Bimodule(e) = doc else { continue };
        if e.right().hom_dim(0, 0) > 4 {
            continue;
        }
        let (t, report) = derived_tensor(&e, &diagonal(e.right()), 5).map_err(|er| er.to_string())?;
        ensure(table(&t, &report) == table(&e, &report), || format!("{name} ⊗ Δ"))?;
        bimodules += 1;
    }
    let mut stable = 0;
    for (name, c) in library::categories(Q) {
        let h = hochschild(&c, -2, 3, 5).map_err(|e| e.to_string())?;
        ensure(h.report.stabilized == Some(true), || format!("HH of {name}: {}", h.report))?;
        stable += 1;
    }
    for (name, m) in [("dual_simple", library::dual_simple(Q)), ("h^0 of a2_path", yoneda_left(&library::a2_path(Q), 0))] {
        let (r5, r6) = (rhom(&m, &m, 5).map_err(|e| e.to_string())?, rhom(&m, &m, 6).map_err(|e| e.to_string())?);
        for n in -3..=4 {
            if r5.report.contains(n) {
                let (a, b) = (r5.complex.cohomology_dim(n), r6.complex.cohomology_dim(n));
                ensure(a == b, || format!("Ext^{n} of {name}: {a} at L=5, {b} at L=6"))?;
            }
        }
        stable += 1;
    }
    Ok(format!("{bimodules} unit laws, {stable} stable HH/Ext computations"))
}

fn quotient_behavior() -> Outcome {
    let q = drinfeld_quotient(&DgCategory::unit(Q), &[0], -6).map_err(|e| e.to_string())?;
    let end: Vec<usize> = (-4..=0).map(|n| q.category.hom_cohomology_dim(0, 0, n)).collect();
    ensure(end == vec![0; 5], || format!("End in 𝟏/𝟏: {end:?}"))?;
    let c = library::two_iso_objects(Q);
    let q = drinfeld_quotient(&c, &[0], -6).map_err(|e| e.to_string())?;
    let end: Vec<usize> = (-4..=0).map(|n| q.category.hom_cohomology_dim(1, 1, n)).collect();
    ensure(end == vec![0; 5], || format!("End(y) after killing x: {end:?}"))?;
    for (name, c) in library::categories(Q) {
        let q = drinfeld_quotient(&c, &[], -6).map_err(|e| e.to_string())?;
        ensure(q.category == c && q.projection == DgFunctor::identity(&c), || format!("killing nothing in {name}"))?;
    }
    Ok("H^n = 0 for -4 ≤ n ≤ 0 in both quotients; killing nothing is the identity".into())
}

fn localization_probe() -> Outcome {
    let c = library::i_k(Q);
    let s = [Arrow { source: 0, target: 1, value: SVec::unit(0, Q) }];
    let l = localize(&c, &s, -3).map_err(|e| e.to_string())?;
    let one = DgCategory::unit(Q);
    for x in 0..2 {
        for y in 0..2 {
            for n in -3..=0 {
                let (got, want) = (l.category.hom_cohomology_dim(x, y, n), one.hom_cohomology_dim(0, 0, n));
                ensure(got == want, || format!("I_k[f⁻¹]({x},{y}) H^{n}: {got} vs {want}"))?;
            }
        }
    }
    let mut probes = 0;
    for f in fields() {
        for (name, c, s) in library::localizations(f) {
            let l = localize(&c, &s, -3).map_err(|e| format!("{name}: {e}"))?;
            let check = check_localization_property(&l.canonical, &s).map_err(|e| e.to_string())?;
            ensure(check.holds(), || format!("{name} over {f}"))?;
            probes += 1;
        }
    }
    Ok(format!("I_k[f⁻¹] matches 𝟏 on [-3, 0]; property holds on {probes} bundled (C, S)"))
}

fn homotopy_formulas() -> Outcome {
    let d = map_homotopy_unit(&library::theta(Q), 0, 2).map_err(|e| e.to_string())?.dim();
    ensure(d == Some(1), || format!("π_2 of theta: {d:?}"))?;
    let mut checks = 0;
    for (name, c) in library::categories(Q) {
        let hh = hochschild(&c, -3, 0, 5).map_err(|e| e.to_string())?;
        for i in 1..=4u32 {
            let Some(expected) = hh.dim(1 - i as i32) else { continue };
            let (group, _) = map_homotopy_endo(&c, i, 5).map_err(|e| e.to_string())?;
            let got = match group {
                EndoGroup::Units { hh0_dim } => hh0_dim,
                EndoGroup::Vector { dim, .. } => dim,
            };
            ensure(got == expected, || format!("{name} π_{i}: {got} vs HH^{} = {expected}", 1 - i as i32))?;
            checks += 1;
        }
    }
    Ok(format!("π_2(theta) = 1; {checks} endomorphism groups match HH"))
}

fn witness_soundness() -> Outcome {
    let (mut iso, mut qr, mut picard) = (0, 0, 0);
    for seed in 0..10 {
        for f in [Q, Field::Prime(3)] {
            for (name, c) in library::categories(f) {
                for x in 0..c.n_objects() {
                    for y in 0..c.n_objects() {
                        if let Some(w) = iso_in_h0(&c, x, y, seed, 16).witness() {
                            ensure(w.verify(&c), || format!("iso {name} {x} {y} seed {seed}"))?;
                            iso += 1;
                        }
                    }
                }
            }
            for (name, doc) in bundled_examples(f) {
                let Document::Bimodule(b) = doc else { continue };
                if let Some(w) = qr_test(&b, seed, 16, None).witness() {
                    ensure(w.verify(&b), || format!("qr {name} seed {seed}"))?;
                    qr += 1;
                }
            }
        }
        let a = library::dual_numbers(Q);
        let suite = [diagonal(&a), phi(&library::dual_sign(Q))];
        for p in &suite {
            for q in &suite {
                let r = picard_verify(&a, p, q, 4, seed, 4).map_err(|e| e.to_string())?;
                for side in [&r.pq, &r.qp] {
                    if let Some(w) = &side.witness {
                        ensure(w.verify(&side.tensor, 4), || format!("picard seed {seed}"))?;
                        picard += 1;
                    }
                }
            }
        }
    }
    ensure(iso > 0 && qr > 0 && picard > 0, || "some witness kind never occurred".into())?;
    Ok(format!("{iso} iso, {qr} qr, {picard} picard witnesses re-verified"))
}

fn determinism() -> Outcome {
    let bad = common::check_all();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} golden cases, two runs each, byte-identical", common::CASES.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("axiom suite", axiom_suite),
        ("derived Yoneda", derived_yoneda),
        ("quasi-representability vs isomorphism", quasi_representability_oracle),
        ("Morita invariance of HH", morita_invariance_of_hh),
        ("bimodule composition", composition_is_tensor),
        ("unit and stabilization", unit_and_stabilization),
        ("quotient behavior", quotient_behavior),
        ("localization probe", localization_probe),
        ("homotopy-group formulas", homotopy_formulas),
        ("witness soundness", witness_soundness),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} {title}: PASS ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                println!("criterion {:>2} {title}: FAIL ({why}) [{secs:.1}s]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
