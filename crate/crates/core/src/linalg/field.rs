//! Exact scalars over ℚ or a prime field 𝔽_p.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field of a computation. Fixed for the lifetime of a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds `𝔽_p`, checking primality.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::Small(0, 1)),
            Field::Prime(p) => Scalar::P { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::Small(n, 1)),
            Field::Prime(p) => Scalar::P { v: n.rem_euclid(*p as i64) as u64, p: *p },
        }
    }

    /// `num / den`; fails when the denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::Field("zero denominator".into()));
                }
                Ok(Scalar::Q(Rat::from_big(BigRational::new(num.clone(), den.clone()))))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Field(format!("denominator divisible by {p}")));
                }
                let d = Scalar::P { v: d, p: *p };
                Ok(&Scalar::P { v: n, p: *p } * &d.inv().expect("nonzero residue"))
            }
        }
    }

    /// Parses `n`, `-n` or `n/d`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| Error::Field(format!("bad scalar `{s}`")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Field(format!("bad scalar `{s}`")))?;
        self.from_ratio(&n, &d)
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut i = 3;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

/// Rational number with an overflow-checked machine-word fast path.
///
/// `Small(n, d)` always has `d > 0` and `gcd(n, d) = 1`; `Big` is only used
/// when the reduced value does not fit.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    fn small(n: i128, d: i128) -> Rat {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(r) => r.is_zero(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if b == d {
                return Rat::small(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(s), Some(den)) = (x.checked_add(y), b.checked_mul(d)) {
                    return Rat::small(s, den);
                }
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(den)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Rat::small(n, den);
            }
        }
        Rat::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(r) => Rat::Big(-r),
        }
    }

    fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small(n, d) => {
                if *n < 0 {
                    Rat::Small(-d, -n)
                } else {
                    Rat::Small(*d, *n)
                }
            }
            Rat::Big(r) => Rat::from_big(r.recip()),
        })
    }

    fn cmp_canon(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (a, b).cmp(&(c, d)),
            _ => {
                let (x, y) = (self.to_big(), o.to_big());
                (x.numer(), x.denom()).cmp(&(y.numer(), y.denom()))
            }
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        self.cmp_canon(o) == Ordering::Equal
    }
}
impl Eq for Rat {}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(Rat),
    P { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(1, 1)) => true,
            Scalar::Q(Rat::Small(..)) => false,
            Scalar::Q(Rat::Big(r)) => r.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::P { p, .. } => Field::Prime(*p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::P { v, p } => {
                if *v == 0 {
                    return None;
                }
                Some(Scalar::P { v: pow_mod(*v, p - 2, *p), p: *p })
            }
        }
    }

    /// `(-1)^e · self`.
    pub fn signed(self, negate: bool) -> Scalar {
        if negate {
            -&self
        } else {
            self
        }
    }

    /// Canonical text: `n`, `n/d`, or the least residue.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => n.to_string(),
            Scalar::Q(Rat::Small(n, d)) => format!("{n}/{d}"),
            Scalar::Q(Rat::Big(r)) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::P { v, .. } => v.to_string(),
        }
    }

    /// Negative rationals, used for `a - b` rendering; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(n, _)) => *n < 0,
            Scalar::Q(Rat::Big(r)) => r.is_negative(),
            Scalar::P { .. } => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => {
                Scalar::P { v: (a + b) % p, p: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => {
                Scalar::P { v: a * b % p, p: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::P { v, p } => Scalar::P { v: (p - v) % p, p: *p },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let q = Field::Rationals;
        let a = q.parse("4/-6").unwrap();
        assert_eq!(a.to_text(), "-2/3");
        assert_eq!((&a + &q.parse("2/3").unwrap()).to_text(), "0");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap().to_text(), "6");
        assert_eq!(f7.parse("1/3").unwrap().to_text(), "5");
        assert!(f7.parse("1/7").is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn overflow_falls_back_to_big() {
        let q = Field::Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(Rat::Big(_))));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::Small(..))));
    }

    #[test]
    fn inverses() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        let q = Field::Rationals;
        let x = q.parse("-3/5").unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
    }
}
