use super::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SVec {
    entries: Vec<(usize, Scalar)>,
}

impl SVec {
    pub fn new() -> SVec {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: Field) -> SVec {
        SVec { entries: vec![(i, field.one())] }
    }

    pub fn single(i: usize, c: Scalar) -> SVec {
        if c.is_zero() {
            SVec::new()
        } else {
            SVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary (index, coefficient) pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> SVec {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SVec { entries }
    }

    pub fn from_dense(v: &[Scalar]) -> SVec {
        SVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SVec {
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SVec) -> SVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &SVec) -> SVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(&c.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(&-&c.field().one(), other),
        }
    }

    /// Accumulates `c·other` in place.
    pub fn axpy(&mut self, c: &Scalar, other: &SVec) {
        *self = self.add_scaled(c, other);
    }

    /// Reindexes every entry through `f`; `f` must be injective on the support.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> SVec {
        SVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }

    /// Keeps entries inside `range`, shifting them down to start at 0.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> SVec {
        SVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, c)| (i - range.start, c.clone()))
                .collect(),
        }
    }

    pub fn dot(&self, other: &SVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                let p = x * y;
                acc = Some(match acc {
                    None => p,
                    Some(s) => &s + &p,
                });
                a += 1;
                b += 1;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_cancel() {
        let q = Field::Rationals;
        let v = SVec::from_pairs(vec![(3, q.from_i64(2)), (1, q.one()), (3, q.from_i64(-2))]);
        assert_eq!(v.entries(), &[(1, q.one())]);
    }

    #[test]
    fn axpy_merges() {
        let q = Field::Rationals;
        let a = SVec::from_pairs(vec![(0, q.one()), (2, q.one())]);
        let b = SVec::from_pairs(vec![(2, q.one()), (5, q.one())]);
        let c = a.add_scaled(&q.from_i64(-1), &b);
        assert_eq!(c, SVec::from_pairs(vec![(0, q.one()), (5, q.from_i64(-1))]));
    }
}
