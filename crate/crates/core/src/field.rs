//! Exact scalar fields: the rationals and prime fields of characteristic
//! other than 2 and 3.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Which field an algebra lives over. Serialized as `{"type":"Q"}` or
/// `{"type":"Fp","p":10007}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } => {
                if p == 2 || p == 3 {
                    return Err(Error::InvalidField(format!(
                        "characteristic {p} is excluded"
                    )));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if p >= 1 << 31 {
                    return Err(Error::InvalidField(format!(
                        "{p} exceeds the single-word modulus bound 2^31"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field with exact arithmetic. Field values carry any runtime context
/// (the modulus), elements are plain data.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Uniform over a prime field; small-height integers over the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Canonical text form (`"5"`, `"-3/4"`).
    fn format(&self, a: &Self::Elem) -> String;

    /// Distinct roots lying in the field of a nonzero univariate polynomial
    /// (coefficients low to high), sorted canonically. `None` when the
    /// search is inconclusive.
    fn roots(&self, coeffs: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let b_inv = self.inv(b).expect("division by zero");
        self.mul(a, &b_inv)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let (num, den) = parse_ratio(s)?;
        self.from_ratio(&num, &den)
    }
}

fn parse_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let bad = || Error::InvalidField(format!("cannot parse scalar {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok((num, den))
}

/// The prime field with `p` elements, values stored as canonical
/// representatives in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime { p }.validate()?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64().unwrap();
        let d = den.mod_floor(&p).to_u64().unwrap();
        let d_inv = self.inv(&d).ok_or_else(|| {
            Error::InvalidField(format!("denominator {den} vanishes modulo {}", self.p))
        })?;
        Ok(n * d_inv % self.p)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn roots(&self, coeffs: &[u64]) -> Option<Vec<u64>> {
        Some(poly::fp_roots(self, coeffs))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}

/// The rational numbers with arbitrary-precision normalized fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn roots(&self, coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
        poly::rational_roots(coeffs)
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
}

/// Reduces a rational value modulo `p`.
pub fn reduce_rational(field: &PrimeField, a: &BigRational) -> Result<u64> {
    field.from_ratio(a.numer(), a.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_characteristics() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn inverse_by_extended_euclid() {
        let f = PrimeField::new(10007).unwrap();
        for a in [1u64, 2, 3, 5000, 10006] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn parses_fractions() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert!(f.parse("1/7").is_err());
        let q = Rationals;
        assert_eq!(q.format(&q.parse("6/-4").unwrap()), "-3/2");
    }

    #[test]
    fn field_spec_json_shape() {
        let s: FieldSpec = serde_json::from_str(r#"{"type":"Fp","p":10007}"#).unwrap();
        assert_eq!(s, FieldSpec::Prime { p: 10007 });
        let q: FieldSpec = serde_json::from_str(r#"{"type":"Q"}"#).unwrap();
        assert_eq!(q, FieldSpec::Rationals);
    }
}
