//! Normalized bar constructions, truncated by length, with their exactness windows.

use std::collections::HashMap;
use std::fmt;

use crate::complex::{is_odd, sign};
use crate::dgcat::{tensor_cat, tensor_hom_index, tensor_elements, DgCategory};
use crate::error::Result;
use crate::linalg::{Matrix, SVec, Scalar};
use crate::module::{DgModule, ModuleMap};

use super::semifree::{Coefficient, SemiFree};

/// The reduced hom complexes `C̄(x, y)`: `C(x, x)` modulo the unit, `C(x, y)` otherwise.
/// The complement is spanned by all basis vectors but the unit's leading one.
#[derive(Clone, Debug)]
pub struct Reduced {
    n: usize,
    /// kept[x*n+y]: basis indices of C(x, y) spanning the complement
    kept: Vec<Vec<usize>>,
    back: Vec<HashMap<usize, usize>>,
    pivot: Vec<Option<(usize, Scalar)>>,
    /// differential of each complement basis vector, in complement coordinates
    diff: Vec<Vec<SVec>>,
}

impl Reduced {
    pub fn new(c: &DgCategory) -> Reduced {
        let n = c.n_objects();
        let mut r = Reduced { n, kept: Vec::new(), back: Vec::new(), pivot: Vec::new(), diff: Vec::new() };
        for x in 0..n {
            for y in 0..n {
                let dim = c.hom_dim(x, y);
                let pivot = if x == y {
                    c.unit_of(x).leading().map(|(i, v)| (i, v.clone()))
                } else {
                    None
                };
                let kept: Vec<usize> = (0..dim).filter(|i| pivot.as_ref().map(|p| p.0) != Some(*i)).collect();
                r.back.push(kept.iter().enumerate().map(|(j, &i)| (i, j)).collect());
                r.kept.push(kept);
                r.pivot.push(pivot);
            }
        }
        for x in 0..n {
            for y in 0..n {
                let h = c.hom(x, y);
                let d = r.kept[x * n + y].iter().map(|&i| r.project(c, x, y, h.d_of(i))).collect();
                r.diff.push(d);
            }
        }
        r
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.kept[x * self.n + y].len()
    }

    /// Basis index in `C(x, y)` of complement basis vector `j`.
    pub fn lift(&self, x: usize, y: usize, j: usize) -> usize {
        self.kept[x * self.n + y][j]
    }

    /// Image in complement coordinates.
    pub fn project(&self, c: &DgCategory, x: usize, y: usize, v: &SVec) -> SVec {
        let k = x * self.n + y;
        let v = match &self.pivot[k] {
            Some((p, up)) => match v.get(*p) {
                Some(vp) => {
                    let coef = -&(vp * &up.inv().expect("unit coefficient is nonzero"));
                    v.add_scaled(&coef, c.unit_of(x))
                }
                None => v.clone(),
            },
            None => v.clone(),
        };
        v.remap(|i| self.back[k][&i])
    }

    pub fn d_of(&self, x: usize, y: usize, j: usize) -> &SVec {
        &self.diff[x * self.n + y][j]
    }

    /// Largest degree of a complement basis vector, if any.
    pub fn max_degree(&self, c: &DgCategory) -> Option<i32> {
        let mut best = None;
        for x in 0..self.n {
            for y in 0..self.n {
                for &i in &self.kept[x * self.n + y] {
                    let d = c.basis_degree(x, y, i);
                    best = Some(best.map_or(d, |b: i32| b.max(d)));
                }
            }
        }
        best
    }

    /// Whether a composable chain of `len` complement vectors exists starting at an
    /// object in `starts`.
    pub fn has_chain(&self, starts: &[bool], len: usize) -> bool {
        let mut reach: Vec<bool> = starts.to_vec();
        for _ in 0..len {
            let mut next = vec![false; self.n];
            for x in (0..self.n).filter(|&x| reach[x]) {
                for (y, slot) in next.iter_mut().enumerate() {
                    if self.dim(x, y) > 0 {
                        *slot = true;
                    }
                }
            }
            reach = next;
        }
        reach.iter().any(|&b| b)
    }
}

/// A composable word `x0 -a1-> x1 -> ... -as-> xs` of complement basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub objects: Vec<usize>,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn start(&self) -> usize {
        self.objects[0]
    }

    pub fn end(&self) -> usize {
        *self.objects.last().expect("a word has at least one object")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn extend(&self, y: usize, a: usize) -> Word {
        let mut w = self.clone();
        w.objects.push(y);
        w.letters.push(a);
        w
    }

    pub fn drop_first(&self) -> Word {
        Word { objects: self.objects[1..].to_vec(), letters: self.letters[1..].to_vec() }
    }

    pub fn drop_last(&self) -> Word {
        Word { objects: self.objects[..self.len()].to_vec(), letters: self.letters[..self.len() - 1].to_vec() }
    }

    pub fn replace(&self, i: usize, a: usize) -> Word {
        let mut w = self.clone();
        w.letters[i] = a;
        w
    }

    /// Replaces letters `i` and `i+1` by the single letter `a`.
    pub fn merge(&self, i: usize, a: usize) -> Word {
        let mut w = self.clone();
        w.letters.splice(i..i + 2, [a]);
        w.objects.remove(i + 1);
        w
    }

    /// `Σ (|a_i| − 1)` over the letters.
    pub fn shifted_degree(&self, c: &DgCategory, r: &Reduced) -> i32 {
        (0..self.len())
            .map(|i| c.basis_degree(self.objects[i], self.objects[i + 1], r.lift(self.objects[i], self.objects[i + 1], self.letters[i])) - 1)
            .sum()
    }

    pub fn letter_degree(&self, c: &DgCategory, r: &Reduced, i: usize) -> i32 {
        c.basis_degree(self.objects[i], self.objects[i + 1], r.lift(self.objects[i], self.objects[i + 1], self.letters[i]))
    }

    pub fn render(&self, c: &DgCategory, r: &Reduced) -> String {
        let parts: Vec<&str> = (0..self.len())
            .map(|i| {
                let (x, y) = (self.objects[i], self.objects[i + 1]);
                c.basis_names(x, y)[r.lift(x, y, self.letters[i])].as_str()
            })
            .collect();
        format!("[{}]", parts.join("|"))
    }
}

/// All words of length `< len` starting anywhere, grouped by length.
pub fn words(c: &DgCategory, r: &Reduced, len: usize) -> Vec<Vec<Word>> {
    let n = c.n_objects();
    let mut out: Vec<Vec<Word>> = Vec::new();
    if len == 0 {
        return out;
    }
    out.push((0..n).map(|x| Word { objects: vec![x], letters: vec![] }).collect());
    for s in 1..len {
        let mut next = Vec::new();
        for w in &out[s - 1] {
            for y in 0..n {
                for a in 0..r.dim(w.end(), y) {
                    next.push(w.extend(y, a));
                }
            }
        }
        out.push(next);
    }
    out
}

/// Signed terms `(word, coefficient)` of the part of the bar differential acting on the
/// letters only: `−(−1)^{ε_{i−1}} [..|da_i|..]` and `(−1)^{ε_i} [..|a_i a_{i+1}|..]`, where
/// `ε_i = e0 + Σ_{j≤i} (|a_j| − 1)`.
pub fn letter_terms(c: &DgCategory, r: &Reduced, w: &Word, e0: i32) -> Vec<(Word, Scalar)> {
    let f = c.field();
    let mut out = Vec::new();
    let mut eps = e0;
    for i in 0..w.len() {
        let (x, y) = (w.objects[i], w.objects[i + 1]);
        let s = sign(!is_odd(eps), f);
        for (b, v) in r.d_of(x, y, w.letters[i]).iter() {
            out.push((w.replace(i, b), v * &s));
        }
        eps += w.letter_degree(c, r, i) - 1;
        if i + 1 < w.len() {
            let z = w.objects[i + 2];
            let prod = c.compose_basis(x, y, z, r.lift(x, y, w.letters[i]), r.lift(y, z, w.letters[i + 1]));
            let s = sign(is_odd(eps), f);
            for (b, v) in r.project(c, x, z, prod).iter() {
                out.push((w.merge(i, b), v * &s));
            }
        }
    }
    out
}

/// Exactness window of a truncated computation, in cohomological degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub length: usize,
    /// The truncation dropped nothing.
    pub complete: bool,
    /// Degrees outside `[lo, hi]` may be wrong; `None` is unbounded. An empty window has
    /// `lo > hi`.
    pub lo: Option<i32>,
    pub hi: Option<i32>,
    /// Values at lengths `L` and `L + 1` agree on the window, when checked.
    pub stabilized: Option<bool>,
}

impl TruncationReport {
    pub fn exact(length: usize) -> TruncationReport {
        TruncationReport { length, complete: true, lo: None, hi: None, stabilized: None }
    }

    pub fn contains(&self, n: i32) -> bool {
        self.lo.is_none_or(|lo| lo <= n) && self.hi.is_none_or(|hi| n <= hi)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(lo), Some(hi)) if lo > hi)
    }

    /// Degrees in `lo..=hi` that lie in the window.
    pub fn clip(&self, lo: i32, hi: i32) -> Vec<i32> {
        (lo..=hi).filter(|&n| self.contains(n)).collect()
    }
}

impl fmt::Display for TruncationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.map_or("-inf".to_string(), |v| v.to_string());
        let hi = self.hi.map_or("+inf".to_string(), |v| v.to_string());
        write!(f, "length {}, exact in degrees [{lo}, {hi}]", self.length)?;
        if self.complete {
            write!(f, " (complete)")?;
        }
        match self.stabilized {
            Some(true) => write!(f, ", stable at length {}", self.length + 1),
            Some(false) => write!(f, ", NOT stable at length {}", self.length + 1),
            None => Ok(()),
        }
    }
}

/// Upper end of the exact window for `Hom` out of a bar construction truncated at `len`,
/// whose dropped generators have degree at most `top + s(amax − 1)` for `s ≥ len`, into
/// a target with lowest degree `gmin`.
pub fn hom_window(len: usize, complete: bool, top: i32, amax: Option<i32>, gmin: Option<i32>) -> TruncationReport {
    let (Some(amax), Some(gmin), false) = (amax, gmin, complete) else {
        return TruncationReport::exact(len);
    };
    // dropped cochains have degree ≥ gmin − top + s(1 − amax), s ≥ len
    let hi = if amax <= 1 { Some(gmin - top + len as i32 * (1 - amax) - 2) } else { Some(i32::MIN / 2) };
    TruncationReport { length: len, complete: false, lo: None, hi, stabilized: None }
}

/// Data of the one-sided normalized bar resolution `B(M) → M`, truncated to length `< len`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    pub semifree: SemiFree,
    /// Generator `k` is `m[a1|..|as]` with `m` basis element `gens[k].1` of `M(gens[k].0.start())`.
    pub gens: Vec<(Word, usize)>,
    pub length: usize,
    pub complete: bool,
    /// Top degree of `M` and of the reduced homs, which bound the dropped generators.
    pub top: i32,
    pub amax: Option<i32>,
}

impl BarResolution {
    /// Degrees where the augmentation `B(M) → M` is a quasi-isomorphism: dropped generators
    /// have degree at most `top + s(amax − 1)` for `s ≥ len`.
    pub fn module_report(&self) -> TruncationReport {
        match (self.complete, self.amax) {
            (false, Some(amax)) => {
                let lo = if amax <= 1 { self.top + self.length as i32 * (amax - 1) + 2 } else { i32::MAX / 2 };
                TruncationReport { length: self.length, complete: false, lo: Some(lo), hi: None, stabilized: None }
            }
            _ => TruncationReport::exact(self.length),
        }
    }

    /// The materialized resolution and its augmentation onto `m`, the module it resolves.
    pub fn augmented(&self, m: &DgModule) -> Result<(DgModule, ModuleMap)> {
        let c = m.base();
        let f = c.field();
        let (b, layout) = self.semifree.materialize_with_layout()?;
        let mut components = Vec::with_capacity(c.n_objects());
        for y in 0..c.n_objects() {
            let cols = layout[y]
                .iter()
                .map(|&(k, a)| match self.augmentation(k) {
                    Some(mb) => {
                        let x0 = self.semifree.generators()[k].object;
                        m.act(x0, y, &SVec::unit(mb, f), &SVec::unit(a, f))
                    }
                    None => SVec::new(),
                })
                .collect();
            components.push(Matrix::from_columns(m.dim(y), f, cols)?);
        }
        let map = ModuleMap::new(b.clone(), m.clone(), components)?;
        Ok((b, map))
    }

    /// Exactness window of `Hom(B(M), G)` for a target whose lowest degree is `gmin`.
    pub fn hom_report(&self, gmin: Option<i32>) -> TruncationReport {
        hom_window(self.length, self.complete, self.top, self.amax, gmin)
    }

    /// The augmentation `B(M) → M` on generators: `m[] ↦ m`, longer words to zero.
    pub fn augmentation(&self, k: usize) -> Option<usize> {
        let (w, m) = &self.gens[k];
        (w.is_empty()).then_some(*m)
    }
}

/// One-sided normalized bar resolution of a module `M` over `C`, keeping words of length
/// `< len`. Generators `m[a1|..|as]` sit at `xs` in degree `|m| + Σ(|a_i| − 1)`.
pub fn bar_resolution(m: &DgModule, len: usize) -> Result<BarResolution> {
    let c = m.base();
    let f = c.field();
    let r = Reduced::new(c);
    let mut sf = SemiFree::new(c.clone());
    let mut gens = Vec::new();
    let mut index: HashMap<(Word, usize), usize> = HashMap::new();
    for stage in words(c, &r, len) {
        for w in stage {
            let x0 = w.start();
            for b in 0..m.dim(x0) {
                let deg = m.value(x0).degree_of(b) + w.shifted_degree(c, &r);
                let label = format!("{}{}", m.basis_names(x0)[b], w.render(c, &r));
                let k = sf.push(w.end(), deg, label);
                index.insert((w.clone(), b), k);
                gens.push((w.clone(), b));
            }
        }
    }
    for k in 0..gens.len() {
        let (w, b) = &gens[k];
        let x0 = w.start();
        let md = m.value(x0).degree_of(*b);
        let mut terms: Vec<(usize, Coefficient)> = Vec::new();
        for (b2, v) in m.value(x0).d_of(*b).iter() {
            terms.push((index[&(w.clone(), b2)], Coefficient::Scalar(v.clone())));
        }
        for (w2, v) in letter_terms(c, &r, w, md) {
            terms.push((index[&(w2, *b)], Coefficient::Scalar(v)));
        }
        if !w.is_empty() {
            let (x1, a1) = (w.objects[1], r.lift(x0, w.objects[1], w.letters[0]));
            let s = sign(is_odd(md), f);
            let rest = w.drop_first();
            for (b2, v) in m.act(x0, x1, &SVec::unit(*b, f), &SVec::unit(a1, f)).iter() {
                terms.push((index[&(rest.clone(), b2)], Coefficient::Scalar(v * &s)));
            }
            let last = w.len() - 1;
            let (xp, xs) = (w.objects[last], w.end());
            let eps = md + w.drop_last().shifted_degree(c, &r);
            let a = SVec::single(r.lift(xp, xs, w.letters[last]), sign(!is_odd(eps), f));
            terms.push((index[&(w.drop_last(), *b)], Coefficient::Morphism(a)));
        }
        sf.set_differential(k, merge_scalars(terms))?;
    }
    let starts: Vec<bool> = (0..c.n_objects()).map(|x| m.dim(x) > 0).collect();
    let complete = !r.has_chain(&starts, len);
    let top = (0..c.n_objects()).filter_map(|x| m.value(x).max_degree()).max().unwrap_or(0);
    Ok(BarResolution { semifree: sf, gens, length: len, complete, top, amax: r.max_degree(c) })
}

/// Combines repeated scalar terms on the same generator.
fn merge_scalars(terms: Vec<(usize, Coefficient)>) -> Vec<(usize, Coefficient)> {
    let mut scalars: Vec<(usize, Scalar)> = Vec::new();
    let mut out = Vec::new();
    for (k, c) in terms {
        match c {
            Coefficient::Scalar(v) => scalars.push((k, v)),
            m => out.push((k, m)),
        }
    }
    for (k, v) in SVec::from_pairs(scalars).iter() {
        out.push((k, Coefficient::Scalar(v.clone())));
    }
    out
}

/// Two-sided normalized bar `B(C, C, C)` as a semi-free module over `C ⊗ C^op`, words of
/// length `< len`. Generator `[a1|..|as]` from `x0` to `xs` sits at `(xs, x0)`.
#[derive(Clone, Debug)]
pub struct DiagonalBar {
    pub enveloping: DgCategory,
    pub semifree: SemiFree,
    pub words: Vec<Word>,
    pub complete: bool,
    pub amax: Option<i32>,
}

pub fn diagonal_bar(c: &DgCategory, len: usize) -> Result<DiagonalBar> {
    let cop = c.opposite();
    let e = tensor_cat(c, &cop)?;
    diagonal_bar_over(c, &cop, e, len)
}

pub fn diagonal_bar_over(c: &DgCategory, cop: &DgCategory, e: DgCategory, len: usize) -> Result<DiagonalBar> {
    let f = c.field();
    let n = c.n_objects();
    let r = Reduced::new(c);
    let mut sf = SemiFree::new(e.clone());
    let mut all = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    for stage in words(c, &r, len) {
        for w in stage {
            let label = if w.is_empty() { format!("[]{}", c.object_name(w.start())) } else { w.render(c, &r) };
            let k = sf.push(w.end() * n + w.start(), w.shifted_degree(c, &r), label);
            index.insert(w.clone(), k);
            all.push(w);
        }
    }
    for (k, w) in all.iter().enumerate() {
        let mut terms: Vec<(usize, Coefficient)> = letter_terms(c, &r, w, 0)
            .into_iter()
            .map(|(w2, v)| (index[&w2], Coefficient::Scalar(v)))
            .collect();
        if !w.is_empty() {
            let (x0, x1, xs) = (w.start(), w.objects[1], w.end());
            let rest = w.drop_first();
            let a1 = r.lift(x0, x1, w.letters[0]);
            let s = sign(is_odd(c.basis_degree(x0, x1, a1) * rest.shifted_degree(c, &r)), f);
            let idx = tensor_hom_index(c, cop, xs, x1, xs, x0);
            let alpha = tensor_elements(&idx, c.unit_of(xs), &SVec::unit(a1, f)).scale(&s);
            terms.push((index[&rest], Coefficient::Morphism(alpha)));
            let last = w.len() - 1;
            let xp = w.objects[last];
            let head = w.drop_last();
            let s = sign(!is_odd(head.shifted_degree(c, &r)), f);
            let idx = tensor_hom_index(c, cop, xp, x0, xs, x0);
            let alpha = tensor_elements(&idx, &SVec::unit(r.lift(xp, xs, w.letters[last]), f), cop.unit_of(x0)).scale(&s);
            terms.push((index[&head], Coefficient::Morphism(alpha)));
        }
        sf.set_differential(k, merge_scalars(terms))?;
    }
    let complete = !r.has_chain(&vec![true; n], len);
    let amax = r.max_degree(c);
    Ok(DiagonalBar { enveloping: e, semifree: sf, words: all, complete, amax })
}
