//! Derived tensor product of bimodules through the two-sided bar construction.

use std::collections::HashMap;

use crate::bimodule::DgBimodule;
use crate::complex::{is_odd, sign, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SVec, Scalar};

use super::bar::{letter_terms, words, Reduced, TruncationReport, Word};

/// Cell `f[a1|..|as]e` of the two-sided bar: basis `f` of `F(y0, z)`, word, basis `e` of `E(x, ys)`.
type Cell = (usize, Word, usize);

fn top_degree(m: &DgBimodule) -> Option<i32> {
    m.module().values().iter().filter_map(|v| v.max_degree()).max()
}

/// `E ⊗^L_D F` for `E` over `(C, D)` and `F` over `(D, E')`, modelled by
/// `B(F, D, E)(x, z) = ⊕ F(y0, z) ⊗ D̄(y0, y1) ⊗ … ⊗ D̄(ys−1, ys) ⊗ E(x, ys)` with words of
/// length `< len`. With `E = φ(f)` and `F = φ(g)` this is quasi-isomorphic to `φ(g ∘ f)`.
pub fn derived_tensor(e: &DgBimodule, f: &DgBimodule, len: usize) -> Result<(DgBimodule, TruncationReport)> {
    if e.right() != f.left() {
        return Err(Error::Invalid("derived tensor of bimodules over different middle categories".into()));
    }
    if len == 0 {
        return Err(Error::Invalid("bar length must be at least 1".into()));
    }
    let d = e.right();
    let field = d.field();
    let r = Reduced::new(d);
    let all: Vec<Word> = words(d, &r, len).into_iter().flatten().collect();
    let (nc, ne) = (e.left().n_objects(), f.right().n_objects());
    let mut values = Vec::with_capacity(nc * ne);
    let mut names = Vec::with_capacity(nc * ne);
    let mut layouts: Vec<Vec<Cell>> = Vec::with_capacity(nc * ne);
    let mut positions: Vec<HashMap<Cell, usize>> = Vec::with_capacity(nc * ne);
    for x in 0..nc {
        for z in 0..ne {
            let mut cells: Vec<(i32, Cell)> = Vec::new();
            for w in &all {
                let (fv, ev) = (f.value(w.objects[0], z), e.value(x, *w.objects.last().expect("nonempty")));
                let shift = w.shifted_degree(d, &r);
                for fb in 0..fv.total_dim() {
                    for eb in 0..ev.total_dim() {
                        cells.push((fv.degree_of(fb) + shift + ev.degree_of(eb), (fb, w.clone(), eb)));
                    }
                }
            }
            cells.sort_by_key(|a| a.0);
            let pos: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, (_, c))| (c.clone(), i)).collect();
            let mut cols = Vec::with_capacity(cells.len());
            for (_, (fb, w, eb)) in &cells {
                let (y0, ys) = (w.objects[0], *w.objects.last().expect("nonempty"));
                let fdeg = f.value(y0, z).degree_of(*fb);
                let mut terms: Vec<(usize, Scalar)> = Vec::new();
                for (i, v) in f.value(y0, z).d_of(*fb).iter() {
                    terms.push((pos[&(i, w.clone(), *eb)], v.clone()));
                }
                for (w2, v) in letter_terms(d, &r, w, fdeg) {
                    terms.push((pos[&(*fb, w2, *eb)], v));
                }
                let s = sign(is_odd(fdeg + w.shifted_degree(d, &r)), field);
                for (i, v) in e.value(x, ys).d_of(*eb).iter() {
                    terms.push((pos[&(*fb, w.clone(), i)], v * &s));
                }
                if !w.letters.is_empty() {
                    let y1 = w.objects[1];
                    let a1 = SVec::unit(r.lift(y0, y1, w.letters[0]), field);
                    let rest = w.drop_first();
                    let s = sign(is_odd(fdeg), field);
                    for (i, v) in f.ract(y0, y1, z, &SVec::unit(*fb, field), &a1).iter() {
                        terms.push((pos[&(i, rest.clone(), *eb)], v * &s));
                    }
                    let last = w.letters.len() - 1;
                    let yp = w.objects[last];
                    let head = w.drop_last();
                    let s = sign(!is_odd(fdeg + head.shifted_degree(d, &r)), field);
                    let a = SVec::unit(r.lift(yp, ys, w.letters[last]), field);
                    for (i, v) in e.lact(x, ys, yp, &a, &SVec::unit(*eb, field)).iter() {
                        terms.push((pos[&(*fb, head.clone(), i)], v * &s));
                    }
                }
                cols.push(SVec::from_pairs(terms));
            }
            let degrees = cells.iter().map(|c| c.0).collect();
            values.push(Complex::new(field, degrees, Matrix::from_columns(cells.len(), field, cols)?)?);
            names.push(
                cells
                    .iter()
                    .map(|(_, (fb, w, eb))| {
                        let (y0, ys) = (w.objects[0], *w.objects.last().expect("nonempty"));
                        format!("{}{}{}", f.basis_names(y0, z)[*fb], w.render(d, &r), e.basis_names(x, ys)[*eb])
                    })
                    .collect(),
            );
            layouts.push(cells.into_iter().map(|(_, c)| c).collect());
            positions.push(pos);
        }
    }
    let out = DgBimodule::from_actions(
        e.left().clone(),
        f.right().clone(),
        values,
        names,
        |x, x2, z, m, a| {
            let (fb, w, eb) = &layouts[x * ne + z][m];
            let ys = *w.objects.last().expect("nonempty");
            let img = e.ract(x, x2, ys, &SVec::unit(*eb, field), &SVec::unit(a, field));
            img.remap(|i| positions[x2 * ne + z][&(*fb, w.clone(), i)])
        },
        |x, z, z2, b, m| {
            let (fb, w, eb) = &layouts[x * ne + z][m];
            let img = f.lact(w.objects[0], z, z2, &SVec::unit(b, field), &SVec::unit(*fb, field));
            img.remap(|i| positions[x * ne + z2][&(i, w.clone(), *eb)])
        },
    )?;
    let complete = !r.has_chain(&vec![true; d.n_objects()], len);
    let report = match (complete, r.max_degree(d), top_degree(e), top_degree(f)) {
        (false, Some(amax), Some(te), Some(tf)) => {
            // dropped cells have degree ≤ tf + te + s(amax − 1) for s ≥ len
            let lo = if amax <= 1 { tf + te + len as i32 * (amax - 1) + 2 } else { i32::MAX / 2 };
            TruncationReport { length: len, complete: false, lo: Some(lo), hi: None, stabilized: None }
        }
        _ => TruncationReport::exact(len),
    };
    Ok((out, report))
}

/// Strict `E ⊗_D F`: at `(x, z)` the quotient of `⊕_y F(y, z) ⊗ E(x, y)` by
/// `(f · b) ⊗ e − f ⊗ (b · e)` for `b ∈ D(y, y')`.
pub fn tensor_over(e: &DgBimodule, f: &DgBimodule) -> Result<DgBimodule> {
    if e.right() != f.left() {
        return Err(Error::Invalid("tensor of bimodules over different middle categories".into()));
    }
    let d = e.right();
    let field = d.field();
    let nd = d.n_objects();
    let (nc, ne) = (e.left().n_objects(), f.right().n_objects());
    struct Ambient {
        complex: Complex,
        index: Vec<crate::complex::TensorIndex>,
        pos: Vec<Vec<usize>>,
        /// ambient basis element → (y, f, e)
        back: Vec<(usize, usize, usize)>,
    }
    let place = |amb: &Ambient, y: usize, fv: &SVec, ev: &SVec| -> SVec {
        let mut terms = Vec::new();
        for (i, a) in fv.iter() {
            for (j, b) in ev.iter() {
                terms.push((amb.pos[y][amb.index[y].index(i, j)], a * b));
            }
        }
        SVec::from_pairs(terms)
    };
    let mut ambients = Vec::with_capacity(nc * ne);
    let mut quotients = Vec::with_capacity(nc * ne);
    for x in 0..nc {
        for z in 0..ne {
            let mut parts = Vec::with_capacity(nd);
            let mut index = Vec::with_capacity(nd);
            for y in 0..nd {
                let (p, idx) = f.value(y, z).tensor(e.value(x, y));
                parts.push(p);
                index.push(idx);
            }
            let refs: Vec<&Complex> = parts.iter().collect();
            let (complex, pos) = Complex::direct_sum_all(field, &refs);
            let mut back = vec![(0, 0, 0); complex.total_dim()];
            for y in 0..nd {
                for (k, &(i, j)) in index[y].pairs.iter().enumerate() {
                    back[pos[y][k]] = (y, i, j);
                }
            }
            let amb = Ambient { complex, index, pos, back };
            let mut relations = Vec::new();
            for y in 0..nd {
                for y2 in 0..nd {
                    for fb in 0..f.value(y, z).total_dim() {
                        let ef = SVec::unit(fb, field);
                        for b in 0..d.hom_dim(y, y2) {
                            let eb = SVec::unit(b, field);
                            let fb2 = f.ract(y, y2, z, &ef, &eb);
                            for ee in 0..e.value(x, y2).total_dim() {
                                let ev = SVec::unit(ee, field);
                                let left = place(&amb, y2, &fb2, &ev);
                                let right = place(&amb, y, &ef, &e.lact(x, y2, y, &eb, &ev));
                                let r = left.sub(&right);
                                if !r.is_zero() {
                                    relations.push(r);
                                }
                            }
                        }
                    }
                }
            }
            quotients.push(amb.complex.quotient(relations));
            ambients.push(amb);
        }
    }
    let values = quotients.iter().map(|q| q.complex.clone()).collect();
    let names = (0..nc * ne)
        .map(|k| {
            let (x, z) = (k / ne, k % ne);
            quotients[k]
                .kept
                .iter()
                .map(|&i| {
                    let (y, fb, eb) = ambients[k].back[i];
                    format!("{}⊗{}", f.basis_names(y, z)[fb], e.basis_names(x, y)[eb])
                })
                .collect()
        })
        .collect();
    DgBimodule::from_actions(
        e.left().clone(),
        f.right().clone(),
        values,
        names,
        |x, x2, z, m, a| {
            let (y, fb, eb) = ambients[x * ne + z].back[quotients[x * ne + z].kept[m]];
            let img = e.ract(x, x2, y, &SVec::unit(eb, field), &SVec::unit(a, field));
            quotients[x2 * ne + z].project(&place(&ambients[x2 * ne + z], y, &SVec::unit(fb, field), &img))
        },
        |x, z, z2, b, m| {
            let (y, fb, eb) = ambients[x * ne + z].back[quotients[x * ne + z].kept[m]];
            let img = f.lact(y, z, z2, &SVec::unit(b, field), &SVec::unit(fb, field));
            quotients[x * ne + z2].project(&place(&ambients[x * ne + z2], y, &img, &SVec::unit(eb, field)))
        },
    )
}
