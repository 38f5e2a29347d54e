//! Drinfeld quotients and localization at sets of closed degree-0 morphisms.
//!
//! A morphism `x → y` of `C/K` is a word `c0 ε c1 ε … ε cn` through killed objects, with
//! `|ε| = −1` and `dε = 1`. The full word category is infinite: quotients are cut to a degree
//! window, localizations to a number of contractions.

use std::collections::HashMap;

use crate::complex::{is_odd, sign, ChainMap, Complex, Quotient};
use crate::dgcat::{render_lincomb, DgCategory, DgFunctor, IsoWitness};
use crate::derived::{build_cell_module, CellStep};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SVec, Scalar};
use crate::module::module_category;

/// A closed degree-0 morphism `value ∈ C(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub value: SVec,
}

#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub category: DgCategory,
    pub killed: Vec<usize>,
    /// Degrees `[lo, 0]`; `H^n` of every hom is exact there.
    pub window: (i32, i32),
    pub notice: Option<String>,
    /// The canonical functor from the base.
    pub projection: DgFunctor,
}

/// Upper bound on the words of one hom.
const MAX_WORDS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Truncation {
    /// Words of degree at least the bound, modulo the ideal the others generate.
    Degree(i32),
    /// The subcomplex of words with at most this many `ε`.
    Length(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Word {
    /// Killed objects passed through, in order.
    hops: Vec<usize>,
    /// `letters[i]` is a basis index of the hom between consecutive objects of the path.
    letters: Vec<usize>,
}

struct Words<'a> {
    c: &'a DgCategory,
    killed: &'a [usize],
    trunc: Truncation,
    /// Drop words with a unit letter between two `ε` (an acyclic dg ideal).
    normalized: bool,
}

struct HomPresentation {
    words: Vec<Word>,
    /// Index of a kept word in the ambient complex.
    ambient: HashMap<Word, usize>,
    quotient: Quotient,
}

impl<'a> Words<'a> {
    fn path(&self, x: usize, y: usize, w: &Word) -> Vec<usize> {
        let mut p = Vec::with_capacity(w.hops.len() + 2);
        p.push(x);
        p.extend(&w.hops);
        p.push(y);
        p
    }

    fn degree(&self, x: usize, y: usize, w: &Word) -> i32 {
        let p = self.path(x, y, w);
        let s: i32 = w.letters.iter().enumerate().map(|(i, &l)| self.c.basis_degree(p[i], p[i + 1], l)).sum();
        s - w.hops.len() as i32
    }

    fn kept(&self, x: usize, y: usize, w: &Word) -> bool {
        match self.trunc {
            Truncation::Degree(lo) => self.degree(x, y, w) >= lo,
            Truncation::Length(n) => w.hops.len() <= n,
        }
    }

    /// Kept words plus the first layer beyond, which carries the relations.
    fn layer(&self, x: usize, y: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        let mut hops = Vec::new();
        let mut letters = Vec::new();
        self.extend(y, x, 0, &mut hops, &mut letters, &mut out);
        if out.len() > MAX_WORDS {
            return Err(Error::Unsupported(format!(
                "more than {MAX_WORDS} words from {} to {}; shrink the window",
                self.c.object_name(x),
                self.c.object_name(y)
            )));
        }
        Ok(out)
    }

    fn extend(&self, y: usize, at: usize, deg: i32, hops: &mut Vec<usize>, letters: &mut Vec<usize>, out: &mut Vec<Word>) {
        let c = self.c;
        let hom_ok = |d: i32| match self.trunc {
            Truncation::Degree(lo) => d >= lo - 1,
            Truncation::Length(_) => true,
        };
        if out.len() > MAX_WORDS {
            return;
        }
        // close the word at y
        for l in 0..c.hom_dim(at, y) {
            if hom_ok(deg + c.basis_degree(at, y, l)) {
                letters.push(l);
                out.push(Word { hops: hops.clone(), letters: letters.clone() });
                letters.pop();
            }
        }
        let room = match self.trunc {
            Truncation::Degree(_) => true,
            Truncation::Length(n) => hops.len() < n,
        };
        if !room {
            return;
        }
        for &k in self.killed {
            let pos = letters.len();
            for l in (0..c.hom_dim(at, k)).filter(|&l| self.allowed(pos, at, k, l)) {
                // degrees only decrease from here on a base in degrees ≤ 0
                let d = deg + c.basis_degree(at, k, l) - 1;
                if hom_ok(d) {
                    hops.push(k);
                    letters.push(l);
                    self.extend(y, k, d, hops, letters, out);
                    hops.pop();
                    letters.pop();
                }
            }
        }
    }

    /// Letter `pos` of a word with `n` letters along path `p`, with its unit part removed when
    /// normalizing and the letter sits between two `ε` at the same object.
    fn clean(&self, p: &[usize], pos: usize, n: usize, v: &SVec) -> SVec {
        if !self.normalized || pos == 0 || pos + 1 >= n || p[pos] != p[pos + 1] {
            return v.clone();
        }
        let u = self.c.unit_of(p[pos]);
        let (q, uq) = u.leading().expect("units are nonzero");
        match v.get(q) {
            Some(vq) => v.add_scaled(&-&(vq * &uq.inv().expect("nonzero")), u),
            None => v.clone(),
        }
    }

    /// Whether letter `l` may sit at position `pos` from `at` to `to`.
    fn allowed(&self, pos: usize, at: usize, to: usize, l: usize) -> bool {
        !(self.normalized && pos > 0 && at == to && self.c.unit_of(at).leading().map(|(q, _)| q) == Some(l))
    }

    /// `d` of a word, as a combination of words (Leibniz, with `dε = 1`).
    fn d(&self, x: usize, y: usize, w: &Word) -> Vec<(Word, Scalar)> {
        let c = self.c;
        let f = c.field();
        let p = self.path(x, y, w);
        let mut out = Vec::new();
        let mut odd = false;
        for i in 0..w.letters.len() {
            let s = sign(odd, f);
            let n = w.letters.len();
            for (l, v) in self.clean(&p, i, n, c.hom(p[i], p[i + 1]).d_of(w.letters[i])).iter() {
                let mut nw = w.clone();
                nw.letters[i] = l;
                out.push((nw, v * &s));
            }
            odd ^= is_odd(c.basis_degree(p[i], p[i + 1], w.letters[i]));
            if i + 1 < w.letters.len() {
                let s = sign(odd, f);
                let mut q = p.clone();
                q.remove(i + 1);
                let merged = c.compose_basis(p[i], p[i + 1], p[i + 2], w.letters[i], w.letters[i + 1]);
                for (l, v) in self.clean(&q, i, n - 1, merged).iter() {
                    let mut nw = w.clone();
                    nw.hops.remove(i);
                    nw.letters.splice(i..i + 2, [l]);
                    out.push((nw, v * &s));
                }
                odd = !odd;
            }
        }
        out
    }

    fn name(&self, x: usize, y: usize, w: &Word) -> String {
        let p = self.path(x, y, w);
        let mut s = String::new();
        for (i, &l) in w.letters.iter().enumerate() {
            if i > 0 {
                s.push_str(&format!("·ε_{}·", self.c.object_name(p[i])));
            }
            s.push_str(&self.c.basis_names(p[i], p[i + 1])[l]);
        }
        s
    }

    fn present(&self, x: usize, y: usize) -> Result<(HomPresentation, Vec<String>)> {
        let f = self.c.field();
        let layer = self.layer(x, y)?;
        let mut kept: Vec<(i32, usize, usize)> = Vec::new();
        let mut dropped = Vec::new();
        for (i, w) in layer.iter().enumerate() {
            if self.kept(x, y, w) {
                kept.push((self.degree(x, y, w), w.hops.len(), i));
            } else {
                dropped.push(i);
            }
        }
        kept.sort();
        let words: Vec<Word> = kept.iter().map(|&(_, _, i)| layer[i].clone()).collect();
        let ambient: HashMap<Word, usize> = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let project = |terms: Vec<(Word, Scalar)>| {
            SVec::from_pairs(terms.into_iter().filter_map(|(w, v)| ambient.get(&w).map(|&k| (k, v))).collect())
        };
        let cols = words.iter().map(|w| project(self.d(x, y, w))).collect();
        let degrees = kept.iter().map(|t| t.0).collect();
        let complex = Complex::new_unchecked(f, degrees, Matrix::from_columns(words.len(), f, cols)?)?;
        let relations = dropped.iter().map(|&i| project(self.d(x, y, &layer[i]))).collect();
        let quotient = Quotient::new(&complex, relations);
        let names = quotient.kept.iter().map(|&k| self.name(x, y, &words[k])).collect();
        Ok((HomPresentation { words, ambient, quotient }, names))
    }
}

impl HomPresentation {
    fn project(&self, terms: impl IntoIterator<Item = (Word, Scalar)>) -> SVec {
        let v = SVec::from_pairs(terms.into_iter().filter_map(|(w, v)| self.ambient.get(&w).map(|&k| (k, v))).collect());
        self.quotient.project(&v)
    }
}

/// `a · b` for words `a: x → y`, `b: y → z`: concatenation, merging the letters that meet at `y`.
fn concat(words: &Words, x: usize, y: usize, z: usize, a: &Word, b: &Word) -> Vec<(Word, Scalar)> {
    let c = words.c;
    let from = a.hops.last().copied().unwrap_or(x);
    let to = b.hops.first().copied().unwrap_or(z);
    let la = *a.letters.last().expect("words are nonempty");
    let merged = c.compose_basis(from, y, to, la, b.letters[0]);
    let path = [from, from, to];
    let middle = !a.hops.is_empty() && !b.hops.is_empty();
    let merged = if middle { words.clean(&path, 1, 3, merged) } else { merged.clone() };
    merged
        .iter()
        .map(|(l, v)| {
            let mut w = a.clone();
            w.hops.extend(&b.hops);
            w.letters.pop();
            w.letters.push(l);
            w.letters.extend(&b.letters[1..]);
            (w, v.clone())
        })
        .collect()
}

fn length_zero(v: &SVec) -> Vec<(Word, Scalar)> {
    v.iter().map(|(l, c)| (Word { hops: vec![], letters: vec![l] }, c.clone())).collect()
}

fn check_objects(c: &DgCategory, killed: &[usize]) -> Result<Vec<usize>> {
    let mut ks: Vec<usize> = killed.to_vec();
    ks.sort();
    ks.dedup();
    match ks.iter().find(|&&k| k >= c.n_objects()) {
        Some(k) => Err(Error::OutOfRange(format!("object {k}"))),
        None => Ok(ks),
    }
}

fn max_hom_degree(c: &DgCategory) -> Option<i32> {
    let n = c.n_objects();
    (0..n * n).filter_map(|k| c.hom(k / n, k % n).max_degree()).max()
}

/// Drinfeld quotient `C/K`, exact on `H^n` for `window_min ≤ n ≤ 0`.
///
/// Words of degree below the window generate a dg ideal once the base sits in degrees `≤ 0`,
/// and the presented homs are the words modulo that ideal.
pub fn drinfeld_quotient(c: &DgCategory, killed: &[usize], window_min: i32) -> Result<QuotientPresentation> {
    if window_min > 0 {
        return Err(Error::Invalid(format!("the window [{window_min}, 0] does not contain degree 0")));
    }
    if let Some(m) = max_hom_degree(c).filter(|&m| m > 0) {
        return Err(Error::Unsupported(format!(
            "the Drinfeld quotient is presented for homs in degrees ≤ 0, found degree {m}"
        )));
    }
    let killed = check_objects(c, killed)?;
    let n = c.n_objects();
    let f = c.field();
    let words = Words { c, killed: &killed, trunc: Truncation::Degree(window_min), normalized: false };
    let mut homs = Vec::with_capacity(n * n);
    let mut names = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (h, nm) = words.present(x, y)?;
            homs.push(h);
            names.push(nm);
        }
    }
    let units = (0..n).map(|x| homs[x * n + x].project(length_zero(c.unit_of(x)))).collect();
    let category = DgCategory::from_fn(
        f,
        c.objects().to_vec(),
        homs.iter().map(|h| h.quotient.complex.clone()).collect(),
        names,
        |x, y, z, i, j| {
            let (a, b) = (&homs[x * n + y], &homs[y * n + z]);
            let wa = &a.words[a.quotient.kept[i]];
            let wb = &b.words[b.quotient.kept[j]];
            homs[x * n + z].project(concat(&words, x, y, z, wa, wb))
        },
        units,
    )?;
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let h = &homs[x * n + y];
            let cols = (0..c.hom_dim(x, y)).map(|l| h.project(length_zero(&SVec::unit(l, f)))).collect();
            components.push(Matrix::from_columns(h.quotient.complex.total_dim(), f, cols)?);
        }
    }
    let projection = DgFunctor::new(c.clone(), category.clone(), (0..n).collect(), components)?;
    let h0 = c.h0();
    let notice = (!(0..n).any(|x| h0.dim(x, x) == 0))
        .then(|| "[C] has no zero object; the quotient is taken without one".to_string());
    Ok(QuotientPresentation { category, killed, window: (window_min, 0), notice, projection })
}

/// Words with at most `len` contractions between the first `n` objects: subcomplexes whose
/// union is the full quotient.
struct Level {
    len: usize,
    homs: Vec<HomPresentation>,
}

impl Level {
    fn new(words: &Words, n: usize, len: usize) -> Result<Level> {
        let words = Words { trunc: Truncation::Length(len), ..*words };
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                homs.push(words.present(x, y)?.0);
            }
        }
        Ok(Level { len, homs })
    }

    fn complex(&self, k: usize) -> &Complex {
        &self.homs[k].quotient.complex
    }

    /// Inclusion into a longer level, as a chain map of hom `k`.
    fn inclusion(&self, longer: &Level, k: usize) -> Result<ChainMap> {
        let (a, b) = (&self.homs[k], &longer.homs[k]);
        let f = self.complex(k).field();
        let cols = a.words.iter().map(|w| SVec::unit(b.ambient[w], f)).collect();
        let m = Matrix::from_columns(b.words.len(), f, cols)?;
        ChainMap::new(a.quotient.complex.clone(), b.quotient.complex.clone(), 0, m)
    }

    /// Whether the inclusion is an isomorphism on `H^n` for `lo ≤ n ≤ 0` on every hom.
    fn same_window(&self, longer: &Level, lo: i32) -> Result<bool> {
        for k in 0..self.homs.len() {
            let inc = self.inclusion(longer, k)?;
            for d in lo..=0 {
                let m = inc.induced_map(d);
                if m.nrows() != m.ncols() || m.rank() != m.ncols() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct Localization {
    /// Graded cohomology category of `C[S^{-1}]` in degrees `[window.0, 0]`, with zero
    /// differential and products below the window dropped.
    pub category: DgCategory,
    /// The canonical functor `C → C[S^{-1}]`: cocycles go to their classes.
    pub canonical: DgFunctor,
    pub window: (i32, i32),
    /// Number of contractions after which the window stopped changing.
    pub contractions: usize,
    /// Whether one more contraction also leaves the window unchanged.
    pub stabilized: bool,
}

const MAX_CONTRACTIONS: usize = 6;

/// Localization of `c` at closed degree-0 morphisms: the cone closure of `S` among the
/// representable `C^op`-modules, with the cones contracted.
///
/// The cone closure has homs in positive degrees, so the contracted homs are infinite in
/// each degree. They are the union of the subcomplexes of words with at most `N`
/// contractions; `N` is raised until the window stops changing.
pub fn localize(c: &DgCategory, s: &[Arrow], window_min: i32) -> Result<Localization> {
    if window_min > 0 {
        return Err(Error::Invalid(format!("the window [{window_min}, 0] does not contain degree 0")));
    }
    if let Some(m) = max_hom_degree(c).filter(|&m| m > 0) {
        return Err(Error::Unsupported(format!("localization is computed for homs in degrees ≤ 0, found degree {m}")));
    }
    for a in s {
        check_arrow(c, a)?;
    }
    let n = c.n_objects();
    let f = c.field();
    let (m, yoneda) = cone_closure(c, s)?;
    let killed: Vec<usize> = (n..m.n_objects()).collect();
    let words = Words { c: &m, killed: &killed, trunc: Truncation::Length(0), normalized: true };
    let mut level = Level::new(&words, n, 0)?;
    let mut next = Level::new(&words, n, 1)?;
    while !level.same_window(&next, window_min)? {
        if next.len >= MAX_CONTRACTIONS {
            return Err(Error::Unsupported(format!(
                "the localized homs did not settle within {MAX_CONTRACTIONS} contractions"
            )));
        }
        level = next;
        next = Level::new(&words, n, level.len + 1)?;
    }
    let stabilized = next.same_window(&Level::new(&words, n, next.len + 1)?, window_min)?;
    // products of two words of the chosen level land in the doubled level
    let double = Level::new(&words, n, 2 * level.len)?;
    if !level.same_window(&double, window_min)? {
        return Err(Error::Unsupported("products of localized classes did not settle".into()));
    }

    let degrees: Vec<i32> = (window_min..=0).collect();
    let mut classes = Vec::with_capacity(n * n);
    let mut to_double = Vec::with_capacity(n * n);
    for k in 0..n * n {
        classes.push(degrees.iter().map(|&d| level.complex(k).cohomology(d)).collect::<Vec<_>>());
        let inc = level.inclusion(&double, k)?;
        to_double.push(degrees.iter().map(|&d| inc.induced_map(d)).collect::<Vec<_>>());
    }
    // basis of hom k: (degree slot, representative index), sorted by degree
    let layout: Vec<Vec<(usize, usize)>> = classes
        .iter()
        .map(|hs| hs.iter().enumerate().flat_map(|(t, h)| (0..h.dim()).map(move |i| (t, i))).collect())
        .collect();
    let offset = |k: usize, t: usize| classes[k][..t].iter().map(|h| h.dim()).sum::<usize>();
    let homs = layout
        .iter()
        .map(|l| {
            let degs = l.iter().map(|&(t, _)| degrees[t]).collect::<Vec<_>>();
            Complex::new(f, degs, Matrix::zeros(l.len(), l.len(), f))
        })
        .collect::<Result<Vec<_>>>()?;
    let names = (0..n * n)
        .map(|k| {
            let h = &level.homs[k];
            let word_names: Vec<String> = h.words.iter().map(|w| words.name(k / n, k % n, w)).collect();
            layout[k]
                .iter()
                .map(|&(t, i)| format!("[{}]", render_lincomb(&classes[k][t].reps[i], &word_names)))
                .collect()
        })
        .collect();
    let zero_slot = degrees.len() - 1;
    let units = (0..n)
        .map(|x| {
            let k = x * n + x;
            let v = level.homs[k].project(length_zero(m.unit_of(x)));
            let coords = classes[k][zero_slot].class_of(&v).expect("units are closed");
            coords.remap(|i| i + offset(k, zero_slot))
        })
        .collect();
    let category = DgCategory::from_fn(
        f,
        c.objects().to_vec(),
        homs,
        names,
        |x, y, z, i, j| {
            let (kxy, kyz, kxz) = (x * n + y, y * n + z, x * n + z);
            let (ti, ii) = layout[kxy][i];
            let (tj, jj) = layout[kyz][j];
            let d = degrees[ti] + degrees[tj];
            if d < window_min {
                return SVec::new();
            }
            let t = (d - window_min) as usize;
            let (a, b) = (&level.homs[kxy], &level.homs[kyz]);
            let mut terms = Vec::new();
            for (p, cp) in classes[kxy][ti].reps[ii].iter() {
                for (q, cq) in classes[kyz][tj].reps[jj].iter() {
                    let c2 = cp * cq;
                    for (w, v) in concat(&words, x, y, z, &a.words[p], &b.words[q]) {
                        terms.push((w, &v * &c2));
                    }
                }
            }
            let prod = double.homs[kxz].project(terms);
            let class = double.complex(kxz).cohomology(d).class_of(&prod).expect("products of cocycles are closed");
            let coords = to_double[kxz][t].solve(&class).ok().flatten().expect("the doubled level is isomorphic");
            coords.remap(|r| r + offset(kxz, t))
        },
        units,
    )?;

    // cocycles go to their classes, a complement of the cocycles to zero
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let k = x * n + y;
            let hom = c.hom(x, y);
            let mut cycles = Echelon::new(f);
            for d in hom.support() {
                let r = hom.range(d);
                for v in hom.block(d).kernel_basis().columns() {
                    cycles.insert(v.remap(|i| i + r.start));
                }
            }
            let mut cols = Vec::with_capacity(hom.total_dim());
            for a in 0..hom.total_dim() {
                let d = hom.degree_of(a);
                let e = SVec::unit(a, f);
                let z = e.sub(&cycles.reduce(&e).0);
                if d < window_min || z.is_zero() {
                    cols.push(SVec::new());
                    continue;
                }
                let t = (d - window_min) as usize;
                let v = level.homs[k].project(length_zero(&yoneda[k].apply(&z)));
                let coords = classes[k][t].class_of(&v).expect("cocycles go to cocycles");
                cols.push(coords.remap(|i| i + offset(k, t)));
            }
            components.push(Matrix::from_columns(category.hom_dim(x, y), f, cols)?);
        }
    }
    let canonical = DgFunctor::new(c.clone(), category.clone(), (0..n).collect(), components)?;
    let v = canonical.validate();
    if !v.passed() {
        return Err(Error::Unsupported(format!("the canonical functor onto the classes is not strict here: {v}")));
    }
    Ok(Localization { category, canonical, window: (window_min, 0), contractions: level.len, stabilized })
}

/// The representable `C^op`-modules followed by one cone per arrow, as a dg-category of
/// strict homs, with the Yoneda matrices `C(x, y) → Hom(h_x, h_y)`.
fn cone_closure(c: &DgCategory, s: &[Arrow]) -> Result<(DgCategory, Vec<Matrix>)> {
    let n = c.n_objects();
    let f = c.field();
    let mut modules = Vec::with_capacity(n + s.len());
    let mut names: Vec<String> = c.objects().to_vec();
    for x in 0..n {
        let cell = CellStep { name: c.object_name(x).to_string(), object: x, degree: 0, boundary: vec![] };
        modules.push(build_cell_module(c, &[cell])?);
    }
    for a in s {
        let plan = [
            CellStep { name: "g".into(), object: a.target, degree: 0, boundary: vec![] },
            CellStep { name: "e".into(), object: a.source, degree: -1, boundary: vec![(0, a.value.clone())] },
        ];
        modules.push(build_cell_module(c, &plan)?);
        names.push(format!("cone({})", c.render(a.source, a.target, &a.value)));
    }
    let total = modules.len();
    let (m, strict) = module_category(&c.opposite(), &modules, names)?;
    // a ∈ C(x, y) acts on h_x(z) = C(z, x) by u ↦ (−1)^{|a||u|} u·a
    let mut yoneda = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut cols = Vec::with_capacity(c.hom_dim(x, y));
            for a in 0..c.hom_dim(x, y) {
                let da = c.basis_degree(x, y, a);
                let mats = (0..n)
                    .map(|z| {
                        let cols = (0..c.hom_dim(z, x))
                            .map(|u| {
                                let odd = is_odd(da) && is_odd(c.basis_degree(z, x, u));
                                c.compose_basis(z, x, y, u, a).scale(&sign(odd, f))
                            })
                            .collect();
                        Matrix::from_columns(c.hom_dim(z, y), f, cols)
                    })
                    .collect::<Result<Vec<_>>>()?;
                cols.push(
                    strict[x * total + y]
                        .coords_of(&mats)
                        .ok_or_else(|| Error::Invalid("a Yoneda image is not a module map".into()))?,
                );
            }
            yoneda.push(Matrix::from_columns(m.hom_dim(x, y), f, cols)?);
        }
    }
    Ok((m, yoneda))
}

fn check_arrow(c: &DgCategory, a: &Arrow) -> Result<()> {
    let n = c.n_objects();
    if a.source >= n || a.target >= n {
        return Err(Error::OutOfRange("arrow between unknown objects".into()));
    }
    let h = c.hom(a.source, a.target);
    if a.value.max_index().is_some_and(|i| i >= h.total_dim()) || !h.is_homogeneous(&a.value, 0) {
        return Err(Error::Invalid(format!(
            "{} is not a degree-0 morphism {} → {}",
            c.render(a.source, a.target, &a.value),
            c.object_name(a.source),
            c.object_name(a.target)
        )));
    }
    if !h.apply_d(&a.value).is_zero() {
        return Err(Error::Invalid(format!("{} is not closed", c.render(a.source, a.target, &a.value))));
    }
    Ok(())
}

/// Per arrow of `S`: an inverse of `[f(s)]` in `[D]`, or `None` when it is not invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationCheck {
    pub inverses: Vec<Option<IsoWitness>>,
}

impl LocalizationCheck {
    pub fn holds(&self) -> bool {
        self.inverses.iter().all(Option::is_some)
    }
}

/// Decides whether `f` sends every arrow of `s` to an isomorphism of `[D]`. An inverse class
/// is unique when it exists, so one linear solve decides it.
pub fn check_localization_property(f: &DgFunctor, s: &[Arrow]) -> Result<LocalizationCheck> {
    let c = &f.source;
    let d = &f.target;
    let h0 = d.h0();
    let mut inverses = Vec::with_capacity(s.len());
    for a in s {
        check_arrow(c, a)?;
        let (x, y) = (f.object_map[a.source], f.object_map[a.target]);
        let u = f.apply(a.source, a.target, &a.value);
        let class = h0
            .cohomology(x, y)
            .class_of(&u)
            .ok_or_else(|| Error::Invalid("the image of an arrow is not closed".into()))?;
        let right = h0.left_mult_matrix(x, y, x, &class).solve(&h0.units[x])?;
        let found = right.and_then(|v| {
            (h0.compose(y, x, y, &v, &class) == h0.units[y])
                .then(|| IsoWitness { x, y, u: u.clone(), v: h0.cohomology(y, x).representative(&v) })
        });
        debug_assert!(found.as_ref().is_none_or(|w| w.verify(d)));
        inverses.push(found);
    }
    Ok(LocalizationCheck { inverses })
}
