use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bimodule::DgBimodule;
use crate::complex::Complex;
use crate::dgcat::{DgCategory, DgFunctor};
use crate::derived::{build_cell_module, CellStep};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SVec};
use crate::module::DgModule;
use crate::validate::{Axiom, Validation};

use super::syntax::{
    index_of, name_token, object_token, read_field, read_lincomb, sections, split_colon, tokenize, unquote, write_lincomb, Line,
    Located, Section,
};

pub const FORMAT: &str = "dgforge 1";

/// A cell plan together with the category its cells live over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPlan {
    pub base: DgCategory,
    pub steps: Vec<CellStep>,
}

impl CellPlan {
    pub fn build(&self) -> Result<DgModule> {
        build_cell_module(&self.base, &self.steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(DgCategory),
    Module(DgModule),
    Functor(DgFunctor),
    Bimodule(DgBimodule),
    Plan(CellPlan),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Module(_) => "module",
            Document::Functor(_) => "functor",
            Document::Bimodule(_) => "bimodule",
            Document::Plan(_) => "plan",
        }
    }

    pub fn validate(&self) -> Validation {
        match self {
            Document::Category(c) => c.validate(),
            Document::Module(m) => {
                let mut v = m.base().validate();
                v.merge(m.validate());
                v
            }
            Document::Functor(f) => {
                let mut v = f.source.validate();
                v.merge(f.target.validate());
                v.merge(f.validate());
                v
            }
            Document::Bimodule(b) => {
                let mut v = b.left().validate();
                v.merge(b.right().validate());
                v.merge(b.validate());
                v
            }
            Document::Plan(p) => {
                let mut v = p.base.validate();
                match p.build() {
                    Ok(m) => v.merge(m.validate()),
                    Err(e) => v.check(false, Axiom::DSquared, || e.to_string()),
                }
                v
            }
        }
    }

    fn wrong(&self, want: &str) -> Error {
        Error::Invalid(format!("expected a {want} document, found a {} document", self.kind()))
    }

    pub fn into_category(self) -> Result<DgCategory> {
        match self {
            Document::Category(c) => Ok(c),
            other => Err(other.wrong("category")),
        }
    }

    pub fn into_module(self) -> Result<DgModule> {
        match self {
            Document::Module(m) => Ok(m),
            other => Err(other.wrong("module")),
        }
    }

    pub fn into_functor(self) -> Result<DgFunctor> {
        match self {
            Document::Functor(f) => Ok(f),
            other => Err(other.wrong("functor")),
        }
    }

    pub fn into_bimodule(self) -> Result<DgBimodule> {
        match self {
            Document::Bimodule(b) => Ok(b),
            other => Err(other.wrong("bimodule")),
        }
    }

    pub fn into_plan(self) -> Result<CellPlan> {
        match self {
            Document::Plan(p) => Ok(p),
            other => Err(other.wrong("plan")),
        }
    }
}

/// Reads a document, checking its structure and `d² = 0` but not the remaining axioms.
pub fn parse(text: &str, file: &str) -> Result<Document> {
    let (header, secs) = sections(text, file)?;
    let head = |key: &str| -> Result<String> {
        let line = header.iter().find(|l| l.key == key).ok_or_else(|| Error::Parse {
            file: file.into(),
            table: "header".into(),
            entry: key.into(),
            message: "missing".into(),
        })?;
        Ok(line.body.iter().map(|t| unquote(t)).collect::<Vec<_>>().join(" "))
    };
    let format = head("format")?;
    if format != FORMAT {
        return Err(Error::Parse {
            file: file.into(),
            table: "header".into(),
            entry: "format".into(),
            message: format!("unsupported format `{format}`, expected `{FORMAT}`"),
        });
    }
    let section = |name: &str| -> Result<&Section> {
        secs.iter().find(|s| s.name == name).ok_or_else(|| Error::Parse {
            file: file.into(),
            table: format!("[{name}]"),
            entry: "section".into(),
            message: "missing".into(),
        })
    };
    let kind = head("kind")?;
    Ok(match kind.as_str() {
        "category" => Document::Category(read_category(section("category")?, file)?),
        "module" => {
            let base = read_category(section("base")?, file)?;
            Document::Module(read_module(section("module")?, file, base)?)
        }
        "functor" => {
            let source = read_category(section("source")?, file)?;
            let target = read_category(section("target")?, file)?;
            Document::Functor(read_functor(section("functor")?, file, source, target)?)
        }
        "bimodule" => {
            let left = read_category(section("left")?, file)?;
            let right = read_category(section("right")?, file)?;
            Document::Bimodule(read_bimodule(section("bimodule")?, file, left, right)?)
        }
        "plan" => {
            let base = read_category(section("base")?, file)?;
            Document::Plan(read_plan(section("plan")?, file, base)?)
        }
        other => {
            return Err(Error::Parse {
                file: file.into(),
                table: "header".into(),
                entry: "kind".into(),
                message: format!("unknown kind `{other}`"),
            })
        }
    })
}

/// [`parse`] followed by full validation; the first failing axiom becomes the error.
pub fn load(text: &str, file: &str) -> Result<Document> {
    let doc = parse(text, file)?;
    let v = doc.validate();
    match v.first_failure() {
        None => Ok(doc),
        Some(f) => Err(Error::Parse {
            file: file.into(),
            table: "validation".into(),
            entry: f.axiom.to_string(),
            message: f.detail.clone(),
        }),
    }
}

pub fn serialize(doc: &Document) -> String {
    let mut out = format!("format: {FORMAT}\nkind: {}\n", doc.kind());
    let mut section = |name: &str, body: String| {
        let _ = write!(out, "\n[{name}]\n{body}");
    };
    match doc {
        Document::Category(c) => section("category", write_category(c)),
        Document::Module(m) => {
            section("base", write_category(m.base()));
            section("module", write_module(m));
        }
        Document::Functor(f) => {
            section("source", write_category(&f.source));
            section("target", write_category(&f.target));
            section("functor", write_functor(f));
        }
        Document::Bimodule(b) => {
            section("left", write_category(b.left()));
            section("right", write_category(b.right()));
            section("bimodule", write_bimodule(b));
        }
        Document::Plan(p) => {
            section("base", write_category(&p.base));
            section("plan", write_plan(p));
        }
    }
    out
}

/// Reads `X:Y:lincomb`, an element of `C(X, Y)` written with object and basis names.
pub fn parse_element(c: &DgCategory, text: &str) -> Result<(usize, usize, SVec)> {
    let bad = |m: String| Error::Invalid(format!("`{text}`: {m}"));
    let (x, rest) = split_colon(text).ok_or_else(|| bad("expected `X:Y:lincomb`".into()))?;
    let (y, body) = split_colon(rest).ok_or_else(|| bad("expected `X:Y:lincomb`".into()))?;
    let x = c.object_index(&unquote(x.trim()))?;
    let y = c.object_index(&unquote(y.trim()))?;
    let toks = tokenize(body).map_err(bad)?;
    let v = read_lincomb(&toks, c.field(), &index_of(c.basis_names(x, y))).map_err(bad)?;
    Ok((x, y, v))
}

/// Inverse of [`parse_element`].
pub fn write_element(c: &DgCategory, x: usize, y: usize, v: &SVec) -> String {
    format!("{}:{}:{}", object_token(c.object_name(x)), object_token(c.object_name(y)), write_lincomb(v, c.basis_names(x, y)))
}

/// A vector on the given basis names, as `c*name + …`.
pub fn write_vector(v: &SVec, names: &[String]) -> String {
    write_lincomb(v, names)
}

// ---- shared pieces -------------------------------------------------------------------

struct Objects {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Objects {
    fn of(c: &DgCategory) -> Objects {
        let names = c.objects().to_vec();
        Objects { index: index_of(&names), names }
    }

    fn get(&self, at: &Located, line: &Line, tok: &str) -> Result<usize> {
        let name = unquote(tok);
        self.index.get(&name).copied().ok_or_else(|| at.err(line, format!("unknown object `{name}`")))
    }

    fn args<const K: usize>(&self, at: &Located, line: &Line) -> Result<[usize; K]> {
        if line.args.len() != K {
            return Err(at.err(line, format!("expected {K} object names before `:`")));
        }
        let mut out = [0; K];
        for (o, tok) in out.iter_mut().zip(&line.args) {
            *o = self.get(at, line, tok)?;
        }
        Ok(out)
    }
}

/// Graded generators of a family of complexes, keyed by position.
struct Gens {
    names: Vec<Vec<String>>,
    degrees: Vec<Vec<i32>>,
    index: Vec<HashMap<String, usize>>,
}

impl Gens {
    fn new(slots: usize) -> Gens {
        Gens { names: vec![Vec::new(); slots], degrees: vec![Vec::new(); slots], index: vec![HashMap::new(); slots] }
    }

    fn push(&mut self, at: &Located, line: &Line, slot: usize) -> Result<()> {
        let [name, deg] = &line.body[..] else {
            return Err(at.err(line, "expected `name degree`"));
        };
        let name = unquote(name);
        let deg: i32 = deg.parse().map_err(|_| at.err(line, format!("bad degree `{deg}`")))?;
        if self.index[slot].contains_key(&name) {
            return Err(at.err(line, format!("duplicate generator `{name}`")));
        }
        if self.degrees[slot].last().is_some_and(|&d| d > deg) {
            return Err(at.err(line, format!("generator `{name}` breaks the nondecreasing degree order")));
        }
        self.index[slot].insert(name.clone(), self.names[slot].len());
        self.names[slot].push(name);
        self.degrees[slot].push(deg);
        Ok(())
    }

    fn get(&self, at: &Located, line: &Line, slot: usize, tok: &str) -> Result<usize> {
        let name = unquote(tok);
        self.index[slot].get(&name).copied().ok_or_else(|| at.err(line, format!("unknown generator `{name}`")))
    }

    fn read(&self, at: &Located, line: &Line, slot: usize, toks: &[String], field: Field) -> Result<SVec> {
        read_lincomb(toks, field, &self.index[slot]).map_err(|m| at.err(line, m))
    }

    /// Reads `d … : name = lincomb` into `cols`, checking the degree.
    fn read_d(&self, at: &Located, line: &Line, slot: usize, field: Field, cols: &mut [Vec<SVec>]) -> Result<()> {
        let (name, rest) = split_eq(at, line, 1)?;
        let g = self.get(at, line, slot, &name[0])?;
        let v = self.read(at, line, slot, rest, field)?;
        let want = self.degrees[slot][g] + 1;
        if let Some((i, _)) = v.iter().find(|(i, _)| self.degrees[slot][*i] != want) {
            return Err(at.err(line, format!("d({}) has a term {} not of degree {want}", self.names[slot][g], self.names[slot][i])));
        }
        cols[slot][g] = v;
        Ok(())
    }

    /// The complexes, with `d² = 0` checked per generator.
    fn complexes(&self, at: &Located, field: Field, cols: Vec<Vec<SVec>>, label: impl Fn(usize) -> String) -> Result<Vec<Complex>> {
        let mut out = Vec::with_capacity(cols.len());
        for (slot, cs) in cols.into_iter().enumerate() {
            let dim = self.names[slot].len();
            let m = Matrix::from_columns(dim, field, cs)?;
            for g in 0..dim {
                if !m.apply(m.column(g)).is_zero() {
                    return Err(Error::Parse {
                        file: at.file.into(),
                        table: format!("[{}] d", at.section),
                        entry: format!("{} {}", label(slot), self.names[slot][g]),
                        message: format!("d² ≠ 0 on generator {}", self.names[slot][g]),
                    });
                }
            }
            out.push(Complex::new(field, self.degrees[slot].clone(), m)?);
        }
        Ok(out)
    }
}

/// Splits `lhs… = rhs…` with exactly `k` tokens on the left.
fn split_eq<'l>(at: &Located, line: &'l Line, k: usize) -> Result<(&'l [String], &'l [String])> {
    match line.body.iter().position(|t| t == "=") {
        Some(p) if p == k => Ok((&line.body[..p], &line.body[p + 1..])),
        _ => Err(at.err(line, "malformed equation")),
    }
}

/// `a * b = …`: the two factors and the right-hand side.
fn split_product<'l>(at: &Located, line: &'l Line) -> Result<(&'l str, &'l str, &'l [String])> {
    let (lhs, rhs) = split_eq(at, line, 3)?;
    if lhs[1] != "*" {
        return Err(at.err(line, "expected `a * b = …`"));
    }
    Ok((&lhs[0], &lhs[2], rhs))
}

fn unknown(at: &Located, line: &Line) -> Error {
    at.err(line, format!("unknown key `{}`", line.key))
}

fn names_line(names: &[String]) -> String {
    names.iter().map(|n| object_token(n)).collect::<Vec<_>>().join(" ")
}

// ---- categories ----------------------------------------------------------------------

fn read_category(sec: &Section, file: &str) -> Result<DgCategory> {
    let at = Located { file, section: &sec.name };
    let mut field = None;
    let mut objects = None;
    for line in &sec.lines {
        match line.key.as_str() {
            "field" => {
                let [f] = &line.body[..] else {
                    return Err(at.err(line, "expected one field"));
                };
                field = Some(read_field(f).map_err(|m| at.err(line, m))?);
            }
            "objects" => {
                let names: Vec<String> = line.body.iter().map(|t| unquote(t)).collect();
                let idx = index_of(&names);
                if idx.len() != names.len() {
                    return Err(at.err(line, "duplicate object name"));
                }
                objects = Some(Objects { names, index: idx });
            }
            _ => {}
        }
    }
    let field = field.ok_or_else(|| at.missing("field"))?;
    let obj = objects.ok_or_else(|| at.missing("objects"))?;
    let n = obj.names.len();
    let mut gens = Gens::new(n * n);
    for line in sec.lines.iter().filter(|l| l.key == "gen") {
        let [x, y] = obj.args(&at, line)?;
        gens.push(&at, line, x * n + y)?;
    }
    let dim = |x: usize, y: usize| gens.names[x * n + y].len();
    let mut dcols: Vec<Vec<SVec>> = gens.names.iter().map(|g| vec![SVec::new(); g.len()]).collect();
    let mut comp: Vec<Vec<SVec>> = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                comp.push(vec![SVec::new(); dim(x, y) * dim(y, z)]);
            }
        }
    }
    let mut units = vec![None; n];
    for line in &sec.lines {
        match line.key.as_str() {
            "field" | "objects" | "gen" => {}
            "d" => {
                let [x, y] = obj.args(&at, line)?;
                gens.read_d(&at, line, x * n + y, field, &mut dcols)?;
            }
            "mul" => {
                let [x, y, z] = obj.args(&at, line)?;
                let (a, b, rhs) = split_product(&at, line)?;
                let i = gens.get(&at, line, x * n + y, a)?;
                let j = gens.get(&at, line, y * n + z, b)?;
                comp[(x * n + y) * n + z][i * dim(y, z) + j] = gens.read(&at, line, x * n + z, rhs, field)?;
            }
            "unit" => {
                let [x] = obj.args(&at, line)?;
                units[x] = Some(gens.read(&at, line, x * n + x, &line.body, field)?);
            }
            _ => return Err(unknown(&at, line)),
        }
    }
    let homs = gens.complexes(&at, field, dcols, |k| format!("{} {}", obj.names[k / n], obj.names[k % n]))?;
    let units = units
        .into_iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| at.missing(&format!("unit {}", obj.names[x]))))
        .collect::<Result<Vec<_>>>()?;
    DgCategory::from_parts(field, obj.names, homs, gens.names, comp, units)
}

fn write_category(c: &DgCategory) -> String {
    let n = c.n_objects();
    let o = |x: usize| object_token(c.object_name(x));
    let mut s = format!("field: {}\nobjects: {}\n", c.field().name(), names_line(c.objects()));
    for x in 0..n {
        for y in 0..n {
            for (i, name) in c.basis_names(x, y).iter().enumerate() {
                let _ = writeln!(s, "gen {} {}: {} {}", o(x), o(y), name_token(name), c.basis_degree(x, y, i));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let names = c.basis_names(x, y);
            for (i, name) in names.iter().enumerate() {
                let d = c.hom(x, y).d_of(i);
                if !d.is_zero() {
                    let _ = writeln!(s, "d {} {}: {} = {}", o(x), o(y), name_token(name), write_lincomb(d, names));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..c.hom_dim(x, y) {
                    for j in 0..c.hom_dim(y, z) {
                        let v = c.compose_basis(x, y, z, i, j);
                        if !v.is_zero() {
                            let _ = writeln!(
                                s,
                                "mul {} {} {}: {} * {} = {}",
                                o(x),
                                o(y),
                                o(z),
                                name_token(&c.basis_names(x, y)[i]),
                                name_token(&c.basis_names(y, z)[j]),
                                write_lincomb(v, c.basis_names(x, z))
                            );
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        let _ = writeln!(s, "unit {}: {}", o(x), write_lincomb(c.unit_of(x), c.basis_names(x, x)));
    }
    s
}

// ---- modules -------------------------------------------------------------------------

fn read_module(sec: &Section, file: &str, base: DgCategory) -> Result<DgModule> {
    let at = Located { file, section: &sec.name };
    let field = base.field();
    let obj = Objects::of(&base);
    let n = obj.names.len();
    let mut gens = Gens::new(n);
    for line in sec.lines.iter().filter(|l| l.key == "value") {
        let [x] = obj.args(&at, line)?;
        gens.push(&at, line, x)?;
    }
    let mut dcols: Vec<Vec<SVec>> = gens.names.iter().map(|g| vec![SVec::new(); g.len()]).collect();
    let mut act: Vec<Vec<SVec>> = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            act.push(vec![SVec::new(); gens.names[x].len() * base.hom_dim(x, y)]);
        }
    }
    let hom_index: Vec<HashMap<String, usize>> =
        (0..n * n).map(|k| index_of(base.basis_names(k / n, k % n))).collect();
    for line in &sec.lines {
        match line.key.as_str() {
            "value" => {}
            "d" => {
                let [x] = obj.args(&at, line)?;
                gens.read_d(&at, line, x, field, &mut dcols)?;
            }
            "act" => {
                let [x, y] = obj.args(&at, line)?;
                let (m, a, rhs) = split_product(&at, line)?;
                let m = gens.get(&at, line, x, m)?;
                let a = base_element(&at, line, &hom_index[x * n + y], a)?;
                act[x * n + y][m * base.hom_dim(x, y) + a] = gens.read(&at, line, y, rhs, field)?;
            }
            _ => return Err(unknown(&at, line)),
        }
    }
    let values = gens.complexes(&at, field, dcols, |x| obj.names[x].clone())?;
    DgModule::from_parts(base, values, gens.names, act)
}

fn base_element(at: &Located, line: &Line, index: &HashMap<String, usize>, tok: &str) -> Result<usize> {
    let name = unquote(tok);
    index.get(&name).copied().ok_or_else(|| at.err(line, format!("unknown morphism `{name}`")))
}

fn write_values(s: &mut String, label: &dyn Fn(usize) -> String, values: &[&Complex], names: &[&[String]]) {
    for (k, v) in values.iter().enumerate() {
        for (i, name) in names[k].iter().enumerate() {
            let _ = writeln!(s, "value {}: {} {}", label(k), name_token(name), v.degree_of(i));
        }
    }
    for (k, v) in values.iter().enumerate() {
        for (i, name) in names[k].iter().enumerate() {
            let d = v.d_of(i);
            if !d.is_zero() {
                let _ = writeln!(s, "d {}: {} = {}", label(k), name_token(name), write_lincomb(d, names[k]));
            }
        }
    }
}

fn write_module(m: &DgModule) -> String {
    let c = m.base();
    let n = c.n_objects();
    let o = |x: usize| object_token(c.object_name(x));
    let mut s = String::new();
    let values: Vec<&Complex> = (0..n).map(|x| m.value(x)).collect();
    let names: Vec<&[String]> = (0..n).map(|x| m.basis_names(x)).collect();
    write_values(&mut s, &o, &values, &names);
    for x in 0..n {
        for y in 0..n {
            for i in 0..m.dim(x) {
                for a in 0..c.hom_dim(x, y) {
                    let v = m.act_basis(x, y, i, a);
                    if !v.is_zero() {
                        let _ = writeln!(
                            s,
                            "act {} {}: {} * {} = {}",
                            o(x),
                            o(y),
                            name_token(&m.basis_names(x)[i]),
                            name_token(&c.basis_names(x, y)[a]),
                            write_lincomb(v, m.basis_names(y))
                        );
                    }
                }
            }
        }
    }
    s
}

// ---- functors ------------------------------------------------------------------------

fn read_functor(sec: &Section, file: &str, source: DgCategory, target: DgCategory) -> Result<DgFunctor> {
    let at = Located { file, section: &sec.name };
    let so = Objects::of(&source);
    let to = Objects::of(&target);
    let n = so.names.len();
    let mut map = vec![None; n];
    for line in sec.lines.iter().filter(|l| l.key == "map") {
        let [x] = so.args(&at, line)?;
        let [y] = &line.body[..] else {
            return Err(at.err(line, "expected one target object"));
        };
        map[x] = Some(to.get(&at, line, y)?);
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| at.missing(&format!("map {}", so.names[x]))))
        .collect::<Result<Vec<_>>>()?;
    let mut cols: Vec<Vec<SVec>> = (0..n * n).map(|k| vec![SVec::new(); source.hom_dim(k / n, k % n)]).collect();
    for line in &sec.lines {
        match line.key.as_str() {
            "map" => {}
            "image" => {
                let [x, y] = so.args(&at, line)?;
                let (a, rhs) = split_eq(&at, line, 1)?;
                let a = base_element(&at, line, &index_of(source.basis_names(x, y)), &a[0])?;
                let idx = index_of(target.basis_names(map[x], map[y]));
                cols[x * n + y][a] = read_lincomb(rhs, target.field(), &idx).map_err(|m| at.err(line, m))?;
            }
            _ => return Err(unknown(&at, line)),
        }
    }
    let components = cols
        .into_iter()
        .enumerate()
        .map(|(k, c)| Matrix::from_columns(target.hom_dim(map[k / n], map[k % n]), target.field(), c))
        .collect::<Result<Vec<_>>>()?;
    DgFunctor::new(source, target, map, components)
}

fn write_functor(f: &DgFunctor) -> String {
    let (c, d) = (&f.source, &f.target);
    let n = c.n_objects();
    let o = |x: usize| object_token(c.object_name(x));
    let mut s = String::new();
    for x in 0..n {
        let _ = writeln!(s, "map {}: {}", o(x), object_token(d.object_name(f.object_map[x])));
    }
    for x in 0..n {
        for y in 0..n {
            let names = d.basis_names(f.object_map[x], f.object_map[y]);
            for (a, name) in c.basis_names(x, y).iter().enumerate() {
                let v = f.component(x, y).column(a);
                if !v.is_zero() {
                    let _ = writeln!(s, "image {} {}: {} = {}", o(x), o(y), name_token(name), write_lincomb(v, names));
                }
            }
        }
    }
    s
}

// ---- bimodules -----------------------------------------------------------------------

fn read_bimodule(sec: &Section, file: &str, left: DgCategory, right: DgCategory) -> Result<DgBimodule> {
    let at = Located { file, section: &sec.name };
    let field = left.field();
    let (lo, ro) = (Objects::of(&left), Objects::of(&right));
    let (nc, nd) = (lo.names.len(), ro.names.len());
    let pair = |line: &Line, toks: &[String]| -> Result<(usize, usize)> {
        Ok((lo.get(&at, line, &toks[0])?, ro.get(&at, line, &toks[1])?))
    };
    let mut gens = Gens::new(nc * nd);
    for line in sec.lines.iter().filter(|l| l.key == "value") {
        if line.args.len() != 2 {
            return Err(at.err(line, "expected `value X Y`"));
        }
        let (x, y) = pair(line, &line.args)?;
        gens.push(&at, line, x * nd + y)?;
    }
    let mut dcols: Vec<Vec<SVec>> = gens.names.iter().map(|g| vec![SVec::new(); g.len()]).collect();
    let mut ract: HashMap<(usize, usize, usize, usize, usize), SVec> = HashMap::new();
    let mut lact: HashMap<(usize, usize, usize, usize, usize), SVec> = HashMap::new();
    for line in &sec.lines {
        match line.key.as_str() {
            "value" => {}
            "d" => {
                if line.args.len() != 2 {
                    return Err(at.err(line, "expected `d X Y`"));
                }
                let (x, y) = pair(line, &line.args)?;
                gens.read_d(&at, line, x * nd + y, field, &mut dcols)?;
            }
            "ract" => {
                if line.args.len() != 3 {
                    return Err(at.err(line, "expected `ract X X2 Y`"));
                }
                let (x, x2, y) = (lo.get(&at, line, &line.args[0])?, lo.get(&at, line, &line.args[1])?, ro.get(&at, line, &line.args[2])?);
                let (m, a, rhs) = split_product(&at, line)?;
                let m = gens.get(&at, line, x * nd + y, m)?;
                let a = base_element(&at, line, &index_of(left.basis_names(x, x2)), a)?;
                ract.insert((x, x2, y, m, a), gens.read(&at, line, x2 * nd + y, rhs, field)?);
            }
            "lact" => {
                if line.args.len() != 3 {
                    return Err(at.err(line, "expected `lact X Y Y2`"));
                }
                let (x, y, y2) = (lo.get(&at, line, &line.args[0])?, ro.get(&at, line, &line.args[1])?, ro.get(&at, line, &line.args[2])?);
                let (b, m, rhs) = split_product(&at, line)?;
                let b = base_element(&at, line, &index_of(right.basis_names(y2, y)), b)?;
                let m = gens.get(&at, line, x * nd + y, m)?;
                lact.insert((x, y, y2, b, m), gens.read(&at, line, x * nd + y2, rhs, field)?);
            }
            _ => return Err(unknown(&at, line)),
        }
    }
    let values = gens.complexes(&at, field, dcols, |k| format!("{} {}", lo.names[k / nd], ro.names[k % nd]))?;
    DgBimodule::from_actions(
        left,
        right,
        values,
        gens.names,
        |x, x2, y, m, a| ract.get(&(x, x2, y, m, a)).cloned().unwrap_or_default(),
        |x, y, y2, b, m| lact.get(&(x, y, y2, b, m)).cloned().unwrap_or_default(),
    )
}

fn write_bimodule(b: &DgBimodule) -> String {
    let (c, d) = (b.left(), b.right());
    let f = c.field();
    let (nc, nd) = (c.n_objects(), d.n_objects());
    let oc = |x: usize| object_token(c.object_name(x));
    let od = |y: usize| object_token(d.object_name(y));
    let mut s = String::new();
    let values: Vec<&Complex> = (0..nc * nd).map(|k| b.value(k / nd, k % nd)).collect();
    let names: Vec<&[String]> = (0..nc * nd).map(|k| b.basis_names(k / nd, k % nd)).collect();
    write_values(&mut s, &|k| format!("{} {}", oc(k / nd), od(k % nd)), &values, &names);
    for x in 0..nc {
        for x2 in 0..nc {
            for y in 0..nd {
                for m in 0..b.value(x, y).total_dim() {
                    for a in 0..c.hom_dim(x, x2) {
                        let v = b.ract(x, x2, y, &SVec::unit(m, f), &SVec::unit(a, f));
                        if !v.is_zero() {
                            let _ = writeln!(
                                s,
                                "ract {} {} {}: {} * {} = {}",
                                oc(x),
                                oc(x2),
                                od(y),
                                name_token(&b.basis_names(x, y)[m]),
                                name_token(&c.basis_names(x, x2)[a]),
                                write_lincomb(&v, b.basis_names(x2, y))
                            );
                        }
                    }
                }
            }
        }
    }
    for x in 0..nc {
        for y in 0..nd {
            for y2 in 0..nd {
                for bb in 0..d.hom_dim(y2, y) {
                    for m in 0..b.value(x, y).total_dim() {
                        let v = b.lact(x, y, y2, &SVec::unit(bb, f), &SVec::unit(m, f));
                        if !v.is_zero() {
                            let _ = writeln!(
                                s,
                                "lact {} {} {}: {} * {} = {}",
                                oc(x),
                                od(y),
                                od(y2),
                                name_token(&d.basis_names(y2, y)[bb]),
                                name_token(&b.basis_names(x, y)[m]),
                                write_lincomb(&v, b.basis_names(x, y2))
                            );
                        }
                    }
                }
            }
        }
    }
    s
}

// ---- plans ---------------------------------------------------------------------------

fn read_plan(sec: &Section, file: &str, base: DgCategory) -> Result<CellPlan> {
    let at = Located { file, section: &sec.name };
    let obj = Objects::of(&base);
    let mut steps: Vec<CellStep> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for line in &sec.lines {
        let name = match &line.args[..] {
            [n] => unquote(n),
            _ => return Err(at.err(line, "expected one cell name before `:`")),
        };
        match line.key.as_str() {
            "cell" => {
                let [o, deg] = &line.body[..] else {
                    return Err(at.err(line, "expected `object degree`"));
                };
                let object = obj.get(&at, line, o)?;
                let degree: i32 = deg.parse().map_err(|_| at.err(line, format!("bad degree `{deg}`")))?;
                if index.insert(name.clone(), steps.len()).is_some() {
                    return Err(at.err(line, format!("duplicate cell `{name}`")));
                }
                steps.push(CellStep { name, object, degree, boundary: Vec::new() });
            }
            "boundary" => {
                let k = *index.get(&name).ok_or_else(|| at.err(line, format!("unknown cell `{name}`")))?;
                let (lhs, rhs) = split_eq(&at, line, 1)?;
                let j_name = unquote(&lhs[0]);
                let j = *index.get(&j_name).ok_or_else(|| at.err(line, format!("unknown cell `{j_name}`")))?;
                let (o, oj) = (steps[k].object, steps[j].object);
                let a = read_lincomb(rhs, base.field(), &index_of(base.basis_names(o, oj))).map_err(|m| at.err(line, m))?;
                steps[k].boundary.push((j, a));
            }
            _ => return Err(unknown(&at, line)),
        }
    }
    Ok(CellPlan { base, steps })
}

fn write_plan(p: &CellPlan) -> String {
    let c = &p.base;
    let mut s = String::new();
    for step in &p.steps {
        let _ = writeln!(s, "cell {}: {} {}", name_token(&step.name), object_token(c.object_name(step.object)), step.degree);
        for (j, a) in &step.boundary {
            let _ = writeln!(
                s,
                "boundary {}: {} = {}",
                name_token(&step.name),
                name_token(&p.steps[*j].name),
                write_lincomb(a, c.basis_names(step.object, p.steps[*j].object))
            );
        }
    }
    s
}
