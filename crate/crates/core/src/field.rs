//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact field. Every algorithm in the crate is generic over this trait.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// 0 for the rationals, otherwise the prime `p`.
    const CHARACTERISTIC: u64;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Parses the exact textual form produced by `Display` (`"n"` or `"n/d"`).
    fn parse_exact(s: &str) -> Result<Self>;

    /// Canonical residue in `0..p` for prime fields; `None` in characteristic 0.
    fn residue(&self) -> Option<u64>;

    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;

    /// The value as a rational number, in characteristic 0.
    fn to_rational(&self) -> Option<Rational>;

    /// Image of a rational number; `None` when its denominator vanishes.
    fn from_rational(r: &Rational) -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self = self.sub_ref(&prod);
    }

    fn spec() -> FieldSpec {
        FieldSpec {
            characteristic: Self::CHARACTERISTIC,
        }
    }
}

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

impl Field for BigRational {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }

    fn residue(&self) -> Option<u64> {
        None
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() - a.numer() * b.numer();
            *self = BigRational::from_integer(v);
        } else {
            *self -= a * b;
        }
    }
}

pub(crate) const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn from_i64(n: i64) -> Self {
        Fp::new(n.rem_euclid(P as i64) as u64)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an element of F_{P}: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = Self::from_i64(n.trim().parse::<i64>().map_err(|_| bad())?);
                let d = Self::from_i64(d.trim().parse::<i64>().map_err(|_| bad())?);
                let inv = d.inverse().ok_or_else(bad)?;
                Ok(n * inv)
            }
            None => Ok(Self::from_i64(s.parse::<i64>().map_err(|_| bad())?)),
        }
    }

    fn residue(&self) -> Option<u64> {
        Some(self.0)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp::new).collect())
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 {
            let m = ((x % &p) + &p) % &p;
            m.to_u64_digits().1.first().copied().unwrap_or(0)
        };
        let n = Fp::new(reduce(r.numer()));
        let d = Fp::new(reduce(r.denom()));
        d.inverse().map(|inv| n * inv)
    }

    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = *self - *a * *b;
    }
}

/// Runtime description of a field: characteristic 0 (rationals) or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    pub characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        let spec = FieldSpec { characteristic };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.characteristic != 0 && !is_prime(self.characteristic) {
            return Err(Error::Parse(format!(
                "field characteristic {} is neither 0 nor prime",
                self.characteristic
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F2 = Fp<2>;
    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::from_i64(3);
        let b = F7::from_i64(5);
        assert_eq!(a + b, F7::from_i64(1));
        assert_eq!(a - b, F7::from_i64(5));
        assert_eq!(a * b, F7::from_i64(1));
        assert_eq!(a.inverse(), Some(b));
        assert_eq!(F7::from_i64(-1), F7::from_i64(6));
        assert_eq!(F2::from_i64(2), F2::zero());
        assert_eq!(F7::zero().inverse(), None);
    }

    #[test]
    fn rational_parse_roundtrip() {
        let x = Rational::parse_exact("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Rational::parse_exact(&x.to_string()).unwrap(), x);
        assert_eq!(Rational::parse_exact("7").unwrap(), Rational::from_i64(7));
        assert!(Rational::parse_exact("1/0").is_err());
        assert!(Rational::parse_exact("0.5").is_err());
    }

    #[test]
    fn fp_parse() {
        assert_eq!(F7::parse_exact("10").unwrap(), F7::from_i64(3));
        assert_eq!(F7::parse_exact("1/2").unwrap(), F7::from_i64(4));
        assert!(F2::parse_exact("1/2").is_err());
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(5).is_ok());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
    }

    #[test]
    fn sub_mul_assign_matches_naive() {
        let mut x = Rational::parse_exact("5/3").unwrap();
        let a = Rational::parse_exact("2").unwrap();
        let b = Rational::parse_exact("-1/6").unwrap();
        x.sub_mul_assign(&a, &b);
        assert_eq!(x, Rational::parse_exact("2").unwrap());
    }
}
