//! Exact Gaussian-rational scalars.
//!
//! Every coefficient in this crate is an element of Q(i): a pair of
//! arbitrary-precision rationals (real and imaginary part). There is no
//! floating point anywhere; equality of scalars is decidable and all
//! arithmetic is closed.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(k: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(k)), BigRational::zero())
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Scalar::new(BigRational::from_integer(k), BigRational::zero())
    }

    /// Exact fraction `num/den`; `den` must be nonzero.
    pub fn from_fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        ))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the scalar lies in Z (real with denominator one).
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let f = BigRational::from_integer(BigInt::from(k));
        Scalar::new(&self.re * &f, &self.im * &f)
    }

    /// Canonical string for a rational: `p` or `p/q` with `q > 1`.
    pub fn rational_to_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Parses `p` or `p/q` into an exact rational, rejecting a zero
    /// denominator instead of panicking.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let bad = |reason: &str| Error::BadScalar {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = s.splitn(2, '/');
        let numer_str = parts.next().ok_or_else(|| bad("empty literal"))?;
        let numer = BigInt::from_str(numer_str.trim()).map_err(|_| bad("bad numerator"))?;
        match parts.next() {
            None => Ok(BigRational::from_integer(numer)),
            Some(denom_str) => {
                let denom = BigInt::from_str(denom_str.trim()).map_err(|_| bad("bad denominator"))?;
                if denom.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(BigRational::new(numer, denom))
            }
        }
    }

    /// Parses the serialized pair form `[re, im]`.
    pub fn from_parts_str(re: &str, im: &str) -> Result<Self> {
        Ok(Scalar::new(Self::parse_rational(re)?, Self::parse_rational(im)?))
    }

    pub fn to_parts_string(&self) -> (String, String) {
        (
            Self::rational_to_string(&self.re),
            Self::rational_to_string(&self.im),
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", Self::rational_to_string(&self.re));
        }
        let im_abs = Self::rational_to_string(&self.im.abs());
        let im_part = if im_abs == "1" {
            "i".to_string()
        } else {
            format!("{}i", im_abs)
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{}", im_part);
            }
            return write!(f, "{}", im_part);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", Self::rational_to_string(&self.re), sign, im_part)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op_re:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $op_re(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $op_re(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $op_re(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $op_re(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| Scalar::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| Scalar::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| Scalar::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

impl Div<&Scalar> for &Scalar {
    type Output = Result<Scalar>;
    fn div(self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

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

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        let out = &*self * rhs;
        *self = out;
    }
}

/// Scalars serialize as the pair `["re", "im"]` of canonical rational
/// strings, so arbitrary precision survives a round trip bit for bit.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = self.to_parts_string();
        (re, im).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(String, String)>::deserialize(deserializer)?;
        Scalar::from_parts_str(&re, &im).map_err(D::Error::custom)
    }
}

/// A coefficient vector over the scalars; `u` in `D(u, r)` is one of these.
pub type CoeffVec = Vec<Scalar>;

/// Componentwise sum of two coefficient vectors of equal length.
pub fn coeff_add(a: &[Scalar], b: &[Scalar]) -> CoeffVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Scales a coefficient vector by an exact scalar.
pub fn coeff_scale(a: &[Scalar], k: &Scalar) -> CoeffVec {
    a.iter().map(|x| x * k).collect()
}

pub fn coeff_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn coeff_zero(n: usize) -> CoeffVec {
    vec![Scalar::zero(); n]
}

/// Exact dot product of a coefficient vector with an integer vector.
pub fn coeff_dot_int(a: &[Scalar], m: &[i64]) -> Scalar {
    debug_assert_eq!(a.len(), m.len());
    let mut acc = Scalar::zero();
    for (x, k) in a.iter().zip(m) {
        if *k != 0 && !x.is_zero() {
            acc += &x.scale_int(*k);
        }
    }
    acc
}

/// Exact dot product of two coefficient vectors (no conjugation).
pub fn coeff_dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(re: &str, im: &str) -> Scalar {
        Scalar::from_parts_str(re, im).unwrap()
    }

    #[test]
    fn field_arithmetic_is_exact() {
        let third = Scalar::from_fraction(1, 3).unwrap();
        let sum = &third + &third + third.clone();
        assert!(sum.is_one());
        let z = s("2", "-1/2");
        let w = (&z * &z.inv().unwrap()).clone();
        assert!(w.is_one());
    }

    #[test]
    fn complex_multiplication() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = s("1", "1");
        assert_eq!(&z * &z, s("0", "2"));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("").is_err());
        assert!(Scalar::parse_rational("x").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(s("0", "0").to_string(), "0");
        assert_eq!(s("1/2", "0").to_string(), "1/2");
        assert_eq!(s("0", "1").to_string(), "i");
        assert_eq!(s("0", "-1").to_string(), "-i");
        assert_eq!(s("3", "-2/5").to_string(), "3-2/5i");
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let z = s("-7/3", "22/7");
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, r#"["-7/3","22/7"]"#);
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn noncanonical_input_normalizes() {
        let z: Scalar = serde_json::from_str(r#"["2/4","-0"]"#).unwrap();
        assert_eq!(z, Scalar::from_fraction(1, 2).unwrap());
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"["1/2","0"]"#);
    }
}
