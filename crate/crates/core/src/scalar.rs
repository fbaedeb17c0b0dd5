//! Weight and coefficient scalars.
//!
//! A [`Scalar`] is either an exact rational or a complex double. Weightings
//! that are entirely rational keep matching-polynomial coefficients exact;
//! anything complex promotes the whole computation to floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// A tagged weight value.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Complex(Complex64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse scalar from {0:?}")]
pub struct ParseScalarError(pub String);

impl Scalar {
    pub fn integer(value: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Complex(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Complex(c) => *c,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Complex(c) => c.is_zero(),
        }
    }

    /// Real value if the scalar has no imaginary part.
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Scalar::Rational(r) => Some(rational_to_f64(r)),
            Scalar::Complex(c) if c.im == 0.0 => Some(c.re),
            Scalar::Complex(_) => None,
        }
    }

    pub fn is_real_nonnegative(&self) -> bool {
        match self {
            Scalar::Rational(r) => !r.is_negative(),
            Scalar::Complex(c) => c.im == 0.0 && c.re >= 0.0,
        }
    }

    pub fn is_real_positive(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_positive(),
            Scalar::Complex(c) => c.im == 0.0 && c.re > 0.0,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        float: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(exact(a, b)),
            _ => Scalar::Complex(float(self.to_complex(), rhs.to_complex())),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // numerator/denominator beyond f64 range individually
            let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b| a * b)
    }
}

/// Division by an exact zero panics, as for [`BigRational`].
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Complex(c) => Scalar::Complex(-c),
        }
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::integer(value)
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar::Rational(value)
    }
}

impl From<Complex64> for Scalar {
    fn from(value: Complex64) -> Self {
        Scalar::Complex(value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Complex(c) => write!(f, "{}{:+}i", c.re, c.im),
        }
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.25"` exactly.
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::Rational(BigRational::new(p, q)));
        }
        parse_decimal(t).map(Scalar::Rational).ok_or_else(err)
    }
}

/// Exact rational value of a decimal literal, with optional exponent.
pub(crate) fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all_digits.is_empty() { BigInt::zero() } else { all_digits.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Wire form: integers as JSON numbers, other rationals as `"p/q"`,
/// complex values as `[re, im]`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) if r.is_integer() => match r.numer().to_i64() {
                Some(i) => serializer.serialize_i64(i),
                None => serializer.serialize_str(&r.numer().to_string()),
            },
            Scalar::Rational(r) => serializer.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
            Scalar::Complex(c) => {
                let mut seq = serializer.serialize_seq(Some(2))?;
                seq.serialize_element(&c.re)?;
                seq.serialize_element(&c.im)?;
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        scalar_from_json(&value).map_err(de::Error::custom)
    }
}

/// Interprets a JSON value as a scalar.
///
/// JSON numbers become exact rationals: integers directly, other numbers
/// through their shortest round-trip decimal text (so `0.1` is `1/10`).
pub fn scalar_from_json(value: &serde_json::Value) -> Result<Scalar, ParseScalarError> {
    use serde_json::Value;
    let err = || ParseScalarError(value.to_string());
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::integer(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Scalar::Rational(BigRational::from_integer(BigInt::from(u))))
            } else {
                let f = n.as_f64().ok_or_else(err)?;
                parse_decimal(&format!("{f:e}")).map(Scalar::Rational).ok_or_else(err)
            }
        }
        Value::String(s) => s.parse(),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64().ok_or_else(err)?;
            let im = parts[1].as_f64().ok_or_else(err)?;
            Ok(Scalar::complex(re, im))
        }
        _ => Err(err()),
    }
}

/// Serde adapter writing a complex number as `[re, im]`.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, serializer: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(deserializer)?;
        Ok(Complex64::new(re, im))
    }
}

/// Serde adapter for a vector of complex numbers as `[[re, im], ...]`.
pub mod complex_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(zs: &[Complex64], serializer: S) -> Result<S::Ok, S::Error> {
        zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Complex64>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_in_lowest_terms() {
        let s: Scalar = "6/-4".parse().unwrap();
        assert_eq!(s, Scalar::ratio(-3, 2));
        if let Scalar::Rational(r) = s {
            assert!(r.denom().is_positive());
        }
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("0.25".parse::<Scalar>().unwrap(), Scalar::ratio(1, 4));
        assert_eq!("-1.5e2".parse::<Scalar>().unwrap(), Scalar::integer(-150));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn json_numbers_stay_exact() {
        let v: serde_json::Value = serde_json::from_str("[3, 0.1, \"2/6\", [1.0, -2.0]]").unwrap();
        let parsed: Vec<Scalar> = v.as_array().unwrap().iter().map(|x| scalar_from_json(x).unwrap()).collect();
        assert_eq!(parsed[0], Scalar::integer(3));
        assert_eq!(parsed[1], Scalar::ratio(1, 10));
        assert_eq!(parsed[2], Scalar::ratio(1, 3));
        assert_eq!(parsed[3], Scalar::complex(1.0, -2.0));
    }

    #[test]
    fn mixed_arithmetic_promotes() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::complex(0.0, 1.0);
        assert_eq!(&a + &a, Scalar::integer(1));
        assert_eq!(&a * &b, Scalar::complex(0.0, 0.5));
    }

    #[test]
    fn serializes_wire_form() {
        let v = vec![Scalar::integer(-1), Scalar::ratio(1, 3), Scalar::complex(1.5, 0.0)];
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[-1,"1/3",[1.5,0.0]]"#);
    }
}
