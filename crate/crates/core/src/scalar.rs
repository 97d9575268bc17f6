//! Exact scalars over `Q` and `Q(i)`.
//!
//! A [`Scalar`] is a Gaussian rational `a + b i` with `a, b` exact rationals.
//! Values with `b = 0` are ordinary rationals and every operation takes a
//! real-only fast path on them, so the same type serves both fields.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Which field a value (or a whole polynomial) is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldTag {
    Rational,
    Gaussian,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.numer().hash(state);
        self.re.denom().hash(state);
        self.im.numer().hash(state);
        self.im.denom().hash(state);
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::from_rational(rat(p, q))
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn field(&self) -> FieldTag {
        if self.is_real() {
            FieldTag::Rational
        } else {
            FieldTag::Gaussian
        }
    }

    pub fn conj(&self) -> Self {
        if self.im.is_zero() {
            return self.clone();
        }
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2`, always rational.
    pub fn norm_sqr(&self) -> Rational {
        if self.im.is_zero() {
            return &self.re * &self.re;
        }
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero, like integer division.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        if self.im.is_zero() {
            return Scalar::from_rational(self.re.recip());
        }
        let n = self.norm_sqr();
        Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b` without intermediate clones of `self`.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
            return;
        }
        let p = a * b;
        *self += &p;
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.im.is_zero() && b.im.is_zero() {
            self.re -= &a.re * &b.re;
            return;
        }
        let p = a * b;
        *self -= &p;
    }

    pub fn to_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact rational conversion of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        Rational::from_float(x).map(Scalar::from_rational)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        fmt_rational(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        fmt_rational(&self.im.abs(), f)?;
        write!(f, " i")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `p/q+r/s i`, `p/q-r/s i`, `r/s i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Scalar::from_rational);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_part)?
        };
        Ok(Scalar { re, im })
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re + &o.re);
        }
        Scalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re - &o.re);
        }
        Scalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re * &o.re);
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re / &o.re);
        }
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
forward_by_value!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        if self.im.is_zero() && o.im.is_zero() {
            self.re *= &o.re;
        } else {
            *self = &*self * o;
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["3", "-2/5", "1/2+3/4 i", "1/2-3/4 i", "7 i", "-i", "i"] {
            let x: Scalar = s.parse().unwrap();
            let y: Scalar = x.to_string().parse().unwrap();
            assert_eq!(x, y, "{s}");
        }
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Scalar::i());
        assert_eq!("2/4".parse::<Scalar>().unwrap().to_string(), "1/2");
        assert_eq!(
            "1/2-3/4 i".parse::<Scalar>().unwrap(),
            Scalar::gaussian(rat(1, 2), rat(-3, 4))
        );
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let z: Scalar = "1+2 i".parse().unwrap();
        let w = z.inv();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(&z * &z.conj(), Scalar::from_int(5));
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        let mut acc = Scalar::zero();
        acc.add_mul(&z, &Scalar::i());
        assert_eq!(acc, "-2+1 i".parse().unwrap());
    }
}
