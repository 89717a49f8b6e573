use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldTag {
    Rational,
    Prime(u32),
}

impl FieldTag {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldTag::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "q"),
            FieldTag::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rational" | "rationals" => Ok(FieldTag::Rational),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("gf:"))
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected q or fp:<p>)")))?;
                let p: u32 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad characteristic in `{s}`")))?;
                FieldTag::prime(p)
            }
        }
    }
}

impl From<FieldTag> for String {
    fn from(t: FieldTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for FieldTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. The field value is a cheap handle (a unit struct
/// or a modulus) carried by every matrix.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `(-1)^e`.
    fn sign(&self, e: i64) -> Self::Elem {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

/// The rationals, with normalized arbitrary-precision fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational entry `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// GF(p) for a prime `p < 2^31`, plain modular reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldTag::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut e: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad GF({}) entry `{s}`", self.p));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = self.parse(n)?;
                let d = self.parse(d)?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(self.mul(&n, &self.inv(&d)))
            }
            None => {
                let v: BigInt = s.parse().map_err(|_| bad())?;
                let r = ((v % self.p) + self.p) % self.p;
                Ok(u32::try_from(r.abs()).expect("reduced residue fits"))
            }
        }
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_parse_and_print() {
        assert_eq!("q".parse::<FieldTag>().unwrap(), FieldTag::Rational);
        assert_eq!("fp:101".parse::<FieldTag>().unwrap(), FieldTag::Prime(101));
        assert!("fp:100".parse::<FieldTag>().is_err());
        assert!("fp:1".parse::<FieldTag>().is_err());
        assert_eq!(FieldTag::Prime(7).to_string(), "fp:7");
    }

    #[test]
    fn prime_field_arith() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(k.mul(&3, &k.inv(&3)), 1);
        assert_eq!(k.from_i64(-1), 6);
        assert_eq!(k.parse("-3").unwrap(), 4);
        assert_eq!(k.parse("1/2").unwrap(), 4);
        assert_eq!(k.sign(3), 6);
    }

    #[test]
    fn rationals_roundtrip_text() {
        let q = Rationals;
        let a = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&a), "-3/2");
        assert_eq!(q.format(&q.from_i64(5)), "5");
        assert!(q.parse("1/0").is_err());
    }
}
