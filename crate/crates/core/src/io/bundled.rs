use crate::bimodule::{diagonal, phi};
use crate::derived::CellStep;
use crate::library;
use crate::dgcat::DgCategory;
use crate::linalg::{Field, SVec};
use crate::module::yoneda_left;

use super::document::{CellPlan, Document};

/// A cone of `f` in the interval category: `g` at the target, `e` at the source glued along `f`.
fn cone_plan(field: Field) -> CellPlan {
    CellPlan {
        base: library::i_k(field),
        steps: vec![
            CellStep { name: "g".into(), object: 1, degree: 0, boundary: vec![] },
            CellStep { name: "e".into(), object: 0, degree: -1, boundary: vec![(0, SVec::unit(0, field))] },
        ],
    }
}

/// `k[x]/x² --x--> k[x]/x²`, whose cohomology is the simple module in two degrees.
fn dual_resolution_plan(field: Field) -> CellPlan {
    CellPlan {
        base: library::dual_numbers(field),
        steps: vec![
            CellStep { name: "g".into(), object: 0, degree: 0, boundary: vec![] },
            CellStep { name: "e".into(), object: 0, degree: -1, boundary: vec![(0, SVec::unit(1, field))] },
        ],
    }
}

/// Every bundled document, keyed by the name the command line accepts.
pub fn bundled_examples(field: Field) -> Vec<(String, Document)> {
    let mut out: Vec<(String, Document)> = Vec::new();
    for (name, c) in library::categories(field) {
        out.push(("diagonal_".to_string() + name, Document::Bimodule(diagonal(&c))));
        out.push((name.to_string(), Document::Category(c)));
    }
    for (name, f) in library::functors(field) {
        out.push(("phi_".to_string() + name, Document::Bimodule(phi(&f))));
        out.push((name.to_string(), Document::Functor(f)));
    }
    out.push(("dual_simple".into(), Document::Module(library::dual_simple(field))));
    out.push(("unit_k".into(), Document::Module(yoneda_left(&DgCategory::unit(field), 0))));
    out.push(("yoneda_i_k_0".into(), Document::Module(yoneda_left(&library::i_k(field), 0))));
    out.push(("yoneda_a2_path_0".into(), Document::Module(yoneda_left(&library::a2_path(field), 0))));
    out.push(("cone_i_k".into(), Document::Plan(cone_plan(field))));
    out.push(("dual_resolution".into(), Document::Plan(dual_resolution_plan(field))));
    out
}

pub fn bundled(name: &str, field: Field) -> Option<Document> {
    bundled_examples(field).into_iter().find(|(n, _)| n == name).map(|(_, d)| d)
}
