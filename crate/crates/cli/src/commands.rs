use std::path::PathBuf;

use dgforge::bimodule::{phi, qr_test, qr_to_h0_functor, ColumnSearch};
use dgforge::dgcat::{iso_in_h0, tensor_cat, IsoSearch};
use dgforge::derived::{
    derived_tensor, hochschild, map_homotopy_endo, map_homotopy_unit, picard_verify, rhom, tensor_over, EndoGroup,
};
use dgforge::io::{bundled_examples, parse_element, serialize, write_element, write_vector, Document};
use dgforge::module::{induct_along, restrict_along, DgModule};
use dgforge::quotient::{check_localization_property, drinfeld_quotient, localize, Arrow};

use crate::input::{self, object, resolve, sha256, usage, CliError, CliResult, Input};
use crate::report::{Dims, Report};
use crate::{Cli, Command};

/// A module, or a bimodule read as a module over `C ⊗ D^op`.
fn module_of(input: &Input) -> CliResult<(DgModule, bool)> {
    match &input.doc {
        Document::Module(m) => Ok((m.clone(), false)),
        Document::Bimodule(b) => Ok((b.module().clone(), true)),
        other => Err(CliError::Usage(format!("{}: expected a module or bimodule, found a {}", input.label, other.kind()))),
    }
}

/// Runs one command; the flag is set when the command reports a validation failure.
pub fn run(cli: &Cli, echo: &str) -> CliResult<(String, bool)> {
    let field = input::field(&cli.field)?;
    let mut r = Report::new(echo);
    let mut get = |arg: &str| -> CliResult<Input> {
        let i = resolve(arg, field, true)?;
        r.input(&i);
        Ok(i)
    };
    let mut out: Option<&PathBuf> = None;
    let mut lines: Vec<(String, String)> = Vec::new();
    let mut line = |k: &str, v: String| lines.push((k.to_string(), v));
    let mut produced = None;
    let mut failed = false;
    match &cli.command {
        Command::Validate { doc } => {
            let i = resolve(doc, field, false)?;
            let v = i.doc.validate();
            line("input", i.to_string());
            line("checks", v.checks.to_string());
            for f in &v.failures {
                line("failure", format!("{}: {}", f.axiom, f.detail));
            }
            line("result", if v.passed() { "pass" } else { "fail" }.into());
            failed = !v.passed();
        }
        Command::H0 { category } => {
            let c = usage(get(category)?.doc.into_category())?;
            let h = c.h0();
            for x in 0..c.n_objects() {
                for y in 0..c.n_objects() {
                    let key = format!("H0 {} {}", c.object_name(x), c.object_name(y));
                    let coh = h.cohomology(x, y);
                    let reps: Vec<String> = coh.reps.iter().map(|v| write_vector(v, c.basis_names(x, y))).collect();
                    line(&key, format!("dim {} [{}]", coh.dim(), reps.join("; ")));
                }
            }
        }
        Command::Cohomology { category, hom } => {
            let c = usage(get(category)?.doc.into_category())?;
            let (x, y) = (object(&c, &hom[0])?, object(&c, &hom[1])?);
            let h = c.hom(x, y);
            let key = format!("hom {} {}", hom[0], hom[1]);
            match (h.min_degree(), h.max_degree()) {
                (Some(lo), Some(hi)) => line(&key, Dims { lo, hi, dim: &|n| h.cohomology_dim(n), report: None }.to_string()),
                _ => line(&key, "0".into()),
            }
        }
        Command::TensorCat { left, right, output } => {
            let a = usage(get(left)?.doc.into_category())?;
            let b = usage(get(right)?.doc.into_category())?;
            produced = Some(Document::Category(tensor_cat(&a, &b)?));
            out = output.out.as_ref();
        }
        Command::Op { category, output } => {
            let c = usage(get(category)?.doc.into_category())?;
            produced = Some(Document::Category(c.opposite()));
            out = output.out.as_ref();
        }
        Command::Phi { functor, output } => {
            let f = usage(get(functor)?.doc.into_functor())?;
            produced = Some(Document::Bimodule(phi(&f)));
            out = output.out.as_ref();
        }
        Command::Restrict { functor, module, output } => {
            let f = usage(get(functor)?.doc.into_functor())?;
            let m = usage(get(module)?.doc.into_module())?;
            produced = Some(Document::Module(restrict_along(&f, &m)?));
            out = output.out.as_ref();
        }
        Command::Induct { functor, module, output } => {
            let f = usage(get(functor)?.doc.into_functor())?;
            let m = usage(get(module)?.doc.into_module())?;
            produced = Some(Document::Module(induct_along(&f, &m)?));
            out = output.out.as_ref();
        }
        Command::QrTest { bimodule, search } => {
            let b = usage(get(bimodule)?.doc.into_bimodule())?;
            line("seed", search.seed.to_string());
            line("trials", search.trials.to_string());
            let s = qr_test(&b, search.seed, search.trials, None);
            for (x, col) in s.per_object.iter().enumerate() {
                let key = format!("column {}", b.left().object_name(x));
                let value = match col {
                    ColumnSearch::Found { y, c } => {
                        format!("represented by {} via {}", b.right().object_name(*y), write_vector(c, b.basis_names(x, *y)))
                    }
                    ColumnSearch::Impossible(why) => format!("impossible: {why}"),
                    ColumnSearch::NotFound { bound } => format!("no witness found; miss probability at most {bound}"),
                };
                line(&key, value);
            }
            match s.witness() {
                Some(w) => {
                    line("witness verified", w.verify(&b).to_string());
                    let h = qr_to_h0_functor(&b, &w)?;
                    for (x, y) in h.object_map.iter().enumerate() {
                        line(&format!("H0 functor {}", b.left().object_name(x)), b.right().object_name(*y).to_string());
                    }
                    line("result", "quasi-representable".into());
                }
                None => line("result", "no witness".into()),
            }
        }
        Command::Iso { category, x, y, search } => {
            let c = usage(get(category)?.doc.into_category())?;
            let (xi, yi) = (object(&c, x)?, object(&c, y)?);
            line("seed", search.seed.to_string());
            line("trials", search.trials.to_string());
            match iso_in_h0(&c, xi, yi, search.seed, search.trials) {
                IsoSearch::Found(w) => {
                    line("u", write_element(&c, xi, yi, &w.u));
                    line("v", write_element(&c, yi, xi, &w.v));
                    line("witness verified", w.verify(&c).to_string());
                    line("result", "isomorphic".into());
                }
                IsoSearch::Impossible(why) => {
                    line("reason", why);
                    line("result", "not isomorphic".into());
                }
                IsoSearch::NotFound { bound } => {
                    line("miss probability", format!("at most {bound}"));
                    line("result", "no witness found".into());
                }
            }
        }
        Command::Rhom { source, target, bar_length } => {
            let (f, fb) = module_of(&get(source)?)?;
            let (g, gb) = module_of(&get(target)?)?;
            let rh = rhom(&f, &g, *bar_length)?;
            line("window", rh.report.to_string());
            let cx = &rh.complex;
            match (cx.min_degree(), cx.max_degree()) {
                (Some(lo), Some(hi)) => {
                    line("rhom", Dims { lo, hi, dim: &|n| cx.cohomology_dim(n), report: Some(&rh.report) }.to_string())
                }
                _ => line("rhom", "0".into()),
            }
            if fb && gb {
                line("note", "for the graph bimodules of f and g, pi_i of the mapping space at an equivalence is H^-i".into());
            }
        }
        Command::Tensor { left, right, strict, bar_length, output, .. } => {
            let e = usage(get(left)?.doc.into_bimodule())?;
            let f = usage(get(right)?.doc.into_bimodule())?;
            let (t, report) = if *strict {
                (tensor_over(&e, &f)?, None)
            } else {
                let (t, rep) = derived_tensor(&e, &f, *bar_length)?;
                (t, Some(rep))
            };
            if let Some(rep) = &report {
                line("window", rep.to_string());
            }
            for x in 0..t.left().n_objects() {
                for y in 0..t.right().n_objects() {
                    let v = t.value(x, y);
                    let key = format!("H {} {}", t.left().object_name(x), t.right().object_name(y));
                    match (v.min_degree(), v.max_degree()) {
                        (Some(lo), Some(hi)) => {
                            line(&key, Dims { lo, hi, dim: &|n| v.cohomology_dim(n), report: report.as_ref() }.to_string())
                        }
                        _ => line(&key, "0".into()),
                    }
                }
            }
            produced = Some(Document::Bimodule(t));
            out = output.out.as_ref();
        }
        Command::Hh { category, min_degree, max_degree, bar_length } => {
            let c = usage(get(category)?.doc.into_category())?;
            let hh = hochschild(&c, *min_degree, *max_degree, *bar_length)?;
            line("window", hh.report.to_string());
            for n in *min_degree..=*max_degree {
                line(&format!("HH^{n}"), hh.dim(n).map_or_else(|| "outside the exact window".into(), |d| d.to_string()));
            }
        }
        Command::MapHomotopy { category, object: x, i } => {
            let c = usage(get(category)?.doc.into_category())?;
            let g = map_homotopy_unit(&c, object(&c, x)?, *i)?;
            line(&format!("pi_{i}"), g.to_string());
        }
        Command::MapHomotopyEndo { category, i, bar_length } => {
            let c = usage(get(category)?.doc.into_category())?;
            let (g, rep) = map_homotopy_endo(&c, *i, *bar_length)?;
            line("window", rep.to_string());
            let value = match g {
                EndoGroup::Units { hh0_dim } => format!("units of HH^0, an algebra of dimension {hh0_dim}"),
                EndoGroup::Vector { degree, dim } => format!("HH^{degree}, dimension {dim}"),
            };
            line(&format!("pi_{i}"), value);
        }
        Command::PicardVerify { category, p, q, bar_length, search } => {
            let a = usage(get(category)?.doc.into_category())?;
            let p = usage(get(p)?.doc.into_bimodule())?;
            let q = usage(get(q)?.doc.into_bimodule())?;
            line("seed", search.seed.to_string());
            line("trials", search.trials.to_string());
            let rep = picard_verify(&a, &p, &q, *bar_length, search.seed, search.trials)?;
            for (name, side) in [("PQ", &rep.pq), ("QP", &rep.qp)] {
                line(&format!("{name} window"), side.report.to_string());
                for (n, da, dt) in &side.dims {
                    line(&format!("{name} H^{n}"), format!("diagonal {da}, tensor {dt}"));
                }
                if let Some(o) = &side.obstruction {
                    line(&format!("{name} obstruction"), o.clone());
                }
                if let Some(w) = &side.witness {
                    line(&format!("{name} witness"), write_vector(&w.element, side.tensor.basis_names(0, 0)));
                    line(&format!("{name} witness verified"), w.verify(&side.tensor, *bar_length).to_string());
                }
            }
            line("result", if rep.verified() { "mutually inverse (verified)" } else { "not verified" }.into());
        }
        Command::Quotient { category, kill, window, output } => {
            let c = usage(get(category)?.doc.into_category())?;
            let kill = kill.iter().map(|k| object(&c, k)).collect::<CliResult<Vec<_>>>()?;
            let q = drinfeld_quotient(&c, &kill, *window)?;
            if let Some(n) = &q.notice {
                line("notice", n.clone());
            }
            let (lo, hi) = q.window;
            line("window", format!("[{lo}, {hi}]"));
            let d = &q.category;
            for x in 0..d.n_objects() {
                for y in 0..d.n_objects() {
                    let key = format!("H {} {}", d.object_name(x), d.object_name(y));
                    line(&key, Dims { lo, hi, dim: &|n| d.hom_cohomology_dim(x, y, n), report: None }.to_string());
                }
            }
            produced = Some(Document::Category(q.category));
            out = output.out.as_ref();
        }
        Command::Localize { category, invert, window, output } => {
            let c = usage(get(category)?.doc.into_category())?;
            let arrows = invert
                .iter()
                .map(|s| usage(parse_element(&c, s)).map(|(source, target, value)| Arrow { source, target, value }))
                .collect::<CliResult<Vec<_>>>()?;
            let l = localize(&c, &arrows, *window)?;
            let (lo, hi) = l.window;
            line("window", format!("[{lo}, {hi}]"));
            line("contractions", l.contractions.to_string());
            line("stabilized", l.stabilized.to_string());
            let d = &l.category;
            for x in 0..d.n_objects() {
                for y in 0..d.n_objects() {
                    let key = format!("H {} {}", d.object_name(x), d.object_name(y));
                    line(&key, Dims { lo, hi, dim: &|n| d.hom_cohomology_dim(x, y, n), report: None }.to_string());
                }
            }
            let check = check_localization_property(&l.canonical, &arrows)?;
            for (s, inv) in invert.iter().zip(&check.inverses) {
                let value = match inv {
                    Some(w) => write_element(d, w.y, w.x, &w.v),
                    None => "none".into(),
                };
                line(&format!("inverse of {s}"), value);
            }
            line("localization property", if check.holds() { "holds" } else { "fails" }.into());
            produced = Some(Document::Category(l.category));
            out = output.out.as_ref();
        }
        Command::CellBuild { plan, output } => {
            let p = usage(get(plan)?.doc.into_plan())?;
            let m = p.build()?;
            for x in 0..m.base().n_objects() {
                let v = m.value(x);
                let key = format!("H {}", m.base().object_name(x));
                match (v.min_degree(), v.max_degree()) {
                    (Some(lo), Some(hi)) => line(&key, Dims { lo, hi, dim: &|n| v.cohomology_dim(n), report: None }.to_string()),
                    _ => line(&key, "0".into()),
                }
            }
            produced = Some(Document::Module(m));
            out = output.out.as_ref();
        }
        Command::Examples { dir } => {
            if let Some(dir) = dir {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
            }
            for (name, doc) in bundled_examples(field) {
                let text = serialize(&doc);
                line(&name, format!("{} (sha256 {})", doc.kind(), sha256(&text)));
                if let Some(dir) = dir {
                    let path = dir.join(format!("{name}.dg"));
                    std::fs::write(&path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                }
            }
        }
    }
    for (k, v) in lines {
        r.line(&k, v);
    }
    if let Some(doc) = produced {
        r.document(doc);
    }
    Ok((r.finish(out)?, failed))
}
