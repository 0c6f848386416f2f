//! Ground fields and their elements.
//!
//! Two kinds of field are supported: prime fields `F_p` with `p < 2^31`, and the
//! rationals with arbitrary precision. Elements of a prime field carry their
//! modulus so that arithmetic does not need a field handle.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "kebab-case")]
pub enum Field {
    PrimeField(u32),
    Rationals,
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= (1u32 << 31) {
            return Err(Error::InvalidField(format!("p = {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::PrimeField(p))
    }

    pub const F2: Field = Field::PrimeField(2);

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::PrimeField(p) => Scalar::Fp { v: 0, p },
            Field::Rationals => Scalar::Q(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            Field::PrimeField(p) => Scalar::Fp { v: 1, p },
            Field::Rationals => Scalar::Q(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match *self {
            Field::PrimeField(p) => {
                let v = x.rem_euclid(p as i64) as u32;
                Scalar::Fp { v, p }
            }
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(x)))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidField("zero denominator".into()));
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::InvalidField(format!("{den} is not invertible in {self}")))?;
        Ok(&n * &inv)
    }

    /// Number of elements for prime fields.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::PrimeField(p) => Some(p as u64),
            Field::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::PrimeField(p) => p,
            Field::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::PrimeField(_))
    }

    /// All elements in canonical order (prime fields only).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            Field::PrimeField(p) => Ok((0..p).map(|v| Scalar::Fp { v, p }).collect()),
            Field::Rationals => Err(Error::Unsupported(
                "element enumeration over the rationals".into(),
            )),
        }
    }

    /// Parse a decimal literal, optionally a fraction `a/b`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.trim().parse().map_err(|_| Error::InvalidField(format!("bad number {s:?}")))?;
            let b: i64 = b.trim().parse().map_err(|_| Error::InvalidField(format!("bad number {s:?}")))?;
            return self.from_ratio(a, b);
        }
        let a: i64 = s.parse().map_err(|_| Error::InvalidField(format!("bad number {s:?}")))?;
        Ok(self.from_i64(a))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::PrimeField(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::PrimeField(*p),
            Scalar::Q(_) => Field::Rationals,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp { v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, p: *p })
                }
            }
            Scalar::Q(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(Box::new(q.recip())))
                }
            }
        }
    }

    /// Representative in `0..p` for prime fields.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Symmetric integer representative where one exists, used for display.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v as i64),
            Scalar::Q(q) => {
                if q.is_integer() {
                    q.to_integer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.to_integer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q, "mixed prime fields");
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Scalar::Fp { v: if s >= p64 { (s - p64) as u32 } else { s as u32 }, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() + b.as_ref())),
            _ => panic!("arithmetic across different fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q, "mixed prime fields");
                let v = if a >= b { a - b } else { (*a as u64 + *p as u64 - *b as u64) as u32 };
                Scalar::Fp { v, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() - b.as_ref())),
            _ => panic!("arithmetic across different fields"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() * b.as_ref())),
            _ => panic!("arithmetic across different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
            Scalar::Q(a) => Scalar::Q(Box::new(-a.as_ref())),
        }
    }
}

impl Scalar {
    /// `self + a * b`, the inner step of every elimination loop.
    #[inline]
    pub fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Scalar::Fp { v: s, p }, Scalar::Fp { v: x, .. }, Scalar::Fp { v: y, .. }) => {
                let p64 = *p as u64;
                Scalar::Fp { v: ((*s as u64 + (*x as u64 * *y as u64) % p64) % p64) as u32, p: *p }
            }
            _ => &(a * b) + self,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(2147483647).is_ok());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a - &b, f.from_i64(1));
        assert_eq!(&b - &a, f.from_i64(6));
        assert_eq!(&a * &b, f.from_i64(6));
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert_eq!(-&a, f.from_i64(2));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Field::Rationals;
        let third = q.from_ratio(1, 3).unwrap();
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
        assert_eq!(q.parse_scalar("-2/4").unwrap(), q.from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn large_prime_no_overflow() {
        let f = Field::prime(2147483647).unwrap();
        let a = f.from_i64(2147483646);
        assert_eq!(&a * &a, f.one());
        assert_eq!(a.add_mul(&a, &a), f.zero());
    }
}
