//! Exact scalars over the ground field: rationals, with an optional Gaussian
//! (rational + rational·i) part for the complex flavour.
//!
//! Every value is kept canonical by `num-rational`: gcd-reduced, positive
//! denominator. All arithmetic is exact; there is no floating point anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact scalar `re + im·i` with rational `re`, `im`.
///
/// Plain rationals simply have `im = 0`; the Gaussian mode needs no separate
/// type since all formulas are field-generic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `p/q` as a scalar. Errors when `q = 0`.
    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { re: BigRational::new(BigInt::from(p), BigInt::from(q)), im: BigRational::zero() })
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Scalar> {
        // 1/(a+bi) = (a-bi)/(a²+b²)
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { re: &self.re / &norm, im: -&self.im / &norm })
    }

    /// Divide an integer by this scalar; used for the `1/k!` factors of the
    /// exponential series (characteristic 0 keeps every factorial invertible).
    pub fn recip_int(n: i64) -> Result<Scalar> {
        Scalar::ratio(1, n)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            write!(f, "i")
        } else if (-&self.im).is_one() {
            write!(f, "-i")
        } else {
            fmt_rational(&self.im, f)?;
            write!(f, "i")
        }
    }
}

fn parse_plain_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse { offset: 0, msg: format!("invalid rational `{s}`") };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s.trim()).map_err(|_| err())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `i`, `-i`, `p/qi`, and `p/q+r/si` / `p/q-r/si`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse { offset: 0, msg: "empty scalar".into() });
        }
        if let Some(body) = s.strip_suffix('i') {
            // split a trailing imaginary part off a possible real part:
            // scan for a '+'/'-' that is not the leading sign
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if bytes[k] == b'+' || bytes[k] == b'-' {
                    if bytes[k - 1] == b'/' {
                        continue; // sign inside a fraction like "1/-2" is invalid anyway
                    }
                    split = Some(k);
                    break;
                }
            }
            match split {
                Some(k) => {
                    let re = parse_plain_rational(&body[..k])?;
                    let im_str = &body[k..];
                    let im = if im_str == "+" {
                        BigRational::one()
                    } else if im_str == "-" {
                        -BigRational::one()
                    } else {
                        parse_plain_rational(im_str)?
                    };
                    Ok(Scalar { re, im })
                }
                None => {
                    let im = if body.is_empty() {
                        BigRational::one()
                    } else if body == "-" {
                        -BigRational::one()
                    } else {
                        parse_plain_rational(body)?
                    };
                    Ok(Scalar { re: BigRational::zero(), im })
                }
            }
        } else {
            Ok(Scalar { re: parse_plain_rational(s)?, im: BigRational::zero() })
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the inverse
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}
