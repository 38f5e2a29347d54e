//! Lines, tokens, names and linear combinations of the text format.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Field, SVec};

/// Where a parse error points.
#[derive(Clone, Debug)]
pub(crate) struct Located<'a> {
    pub file: &'a str,
    pub section: &'a str,
}

impl Located<'_> {
    pub fn err(&self, line: &Line, message: impl Into<String>) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            table: format!("[{}] {}", self.section, line.key),
            entry: format!("line {}", line.number),
            message: message.into(),
        }
    }

    pub fn missing(&self, what: &str) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            table: format!("[{}]", self.section),
            entry: what.to_string(),
            message: "missing".into(),
        }
    }
}

/// `key arg…: body…`, tokenized; quoted tokens keep their quotes until [`unquote`].
#[derive(Clone, Debug)]
pub(crate) struct Line {
    pub number: usize,
    pub key: String,
    pub args: Vec<String>,
    pub body: Vec<String>,
}

#[derive(Clone, Debug)]
pub(crate) struct Section {
    pub name: String,
    pub lines: Vec<Line>,
}

pub(crate) fn tokenize(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        match ch {
            '"' => {
                quoted = !quoted;
                cur.push(ch);
            }
            '\\' if quoted => {
                cur.push(ch);
                cur.push(chars.next().ok_or("dangling escape")?);
            }
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if quoted {
        return Err("unterminated quote".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Splits at the first `:` outside quotes.
pub(crate) fn split_colon(s: &str) -> Option<(&str, &str)> {
    let mut quoted = false;
    let mut escaped = false;
    for (i, ch) in s.char_indices() {
        match ch {
            _ if escaped => escaped = false,
            '\\' if quoted => escaped = true,
            '"' => quoted = !quoted,
            ':' if !quoted => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Header fields and sections. Blank lines and `#` comments are skipped.
pub(crate) fn sections(text: &str, file: &str) -> Result<(Vec<Line>, Vec<Section>)> {
    let mut header = Vec::new();
    let mut secs: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            file: file.to_string(),
            table: secs.last().map(|s| format!("[{}]", s.name)).unwrap_or_else(|| "header".into()),
            entry: format!("line {number}"),
            message,
        };
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            secs.push(Section { name: name.trim().to_string(), lines: Vec::new() });
            continue;
        }
        let (head, body) = split_colon(t).ok_or_else(|| bad(format!("expected `key: value`, found `{t}`")))?;
        let mut head = tokenize(head).map_err(&bad)?;
        if head.is_empty() {
            return Err(bad("empty key".into()));
        }
        let key = head.remove(0);
        let body = tokenize(body).map_err(bad)?;
        let line = Line { number, key, args: head, body };
        match secs.last_mut() {
            Some(s) => s.lines.push(line),
            None => header.push(line),
        }
    }
    Ok((header, secs))
}

pub(crate) fn unquote(tok: &str) -> String {
    let Some(inner) = tok.strip_prefix('"').and_then(|r| r.strip_suffix('"')) else {
        return tok.to_string();
    };
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            if let Some(n) = chars.next() {
                out.push(n);
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn quote_if(s: &str, special: &[char]) -> String {
    let plain = !s.is_empty()
        && !s.starts_with('[')
        && !s.chars().any(|c| c.is_whitespace() || c == '"' || c == '\\' || c == ':' || c == '#' || special.contains(&c));
    if plain {
        return s.to_string();
    }
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// An object name as written.
pub(crate) fn object_token(s: &str) -> String {
    quote_if(s, &[])
}

/// A basis name as written; `*`, `=` and `+` separate terms.
pub(crate) fn name_token(s: &str) -> String {
    quote_if(s, &['*', '=', '+'])
}

/// `c*name + …`, or `0`.
pub(crate) fn write_lincomb(v: &SVec, names: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| format!("{}*{}", c.to_text(), name_token(&names[i])))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Inverse of [`write_lincomb`] on the given basis.
pub(crate) fn read_lincomb(toks: &[String], field: Field, index: &HashMap<String, usize>) -> std::result::Result<SVec, String> {
    if toks.len() == 1 && toks[0] == "0" {
        return Ok(SVec::new());
    }
    if toks.is_empty() {
        return Err("empty linear combination".into());
    }
    let mut terms = Vec::new();
    for (k, t) in toks.iter().enumerate() {
        if k % 2 == 1 {
            if t != "+" {
                return Err(format!("expected `+`, found `{t}`"));
            }
            continue;
        }
        let (c, name) = t.split_once('*').ok_or_else(|| format!("expected `coefficient*name`, found `{t}`"))?;
        let c = field.parse(c).map_err(|e| e.to_string())?;
        let name = unquote(name);
        let i = *index.get(&name).ok_or_else(|| format!("unknown basis element `{name}`"))?;
        terms.push((i, c));
    }
    if toks.len().is_multiple_of(2) {
        return Err("linear combination ends with `+`".into());
    }
    Ok(SVec::from_pairs(terms))
}

pub(crate) fn read_field(s: &str) -> std::result::Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("unknown field `{s}`; expected Q or GF(p)"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

pub(crate) fn index_of(names: &[String]) -> HashMap<String, usize> {
    names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
}
