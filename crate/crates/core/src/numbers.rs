//! Exact number types, their text forms, and a few combinatorial helpers.
//!
//! Rationals are written `p/q` (or `p` when the denominator is one); complex
//! rationals as `p/q`, `r/s i` or `p/q+r/s i`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational.
pub type Rational = BigRational;
/// Complex number with exact rational real and imaginary parts.
pub type ExactComplex = Complex<BigRational>;
/// Double-precision complex number.
pub type Complex64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number `{text}`: {reason}")]
pub struct ParseNumberError {
    pub text: String,
    pub reason: &'static str,
}

impl ParseNumberError {
    fn new(text: &str, reason: &'static str) -> Self {
        Self {
            text: text.to_string(),
            reason,
        }
    }
}

pub fn rational_from_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseNumberError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseNumberError::new(text, "empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseNumberError::new(text, "bad numerator"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseNumberError::new(text, "bad denominator"))?;
        if den.is_zero() {
            return Err(ParseNumberError::new(text, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int_digits.is_empty() {
            return Err(ParseNumberError::new(text, "no digits"));
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
        {
            return Err(ParseNumberError::new(text, "bad decimal"));
        }
        let digits = format!("{int_digits}{frac}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| ParseNumberError::new(text, "bad decimal"))?
        };
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| ParseNumberError::new(text, "not an integer, fraction or decimal"))?;
    Ok(Rational::from_integer(n))
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational_to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn parse_complex(text: &str) -> Result<ExactComplex, ParseNumberError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ParseNumberError::new(text, "empty"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&s)?, Rational::zero()));
    };
    let split = body
        .char_indices()
        .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
        .map(|(idx, _)| idx)
        .next_back();
    let (re, im) = match split {
        Some(idx) => (parse_rational(&body[..idx])?, &body[idx..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.trim_start_matches('+'))?,
    };
    Ok(Complex::new(re, im))
}

pub fn format_complex(value: &ExactComplex) -> String {
    if value.im.is_zero() {
        return format_rational(&value.re);
    }
    let im = format!("{} i", format_rational(&value.im.abs()));
    if value.re.is_zero() {
        if value.im.is_negative() {
            format!("-{im}")
        } else {
            im
        }
    } else {
        let sign = if value.im.is_negative() { '-' } else { '+' };
        format!("{}{sign}{im}", format_rational(&value.re))
    }
}

pub fn complex_to_f64(value: &ExactComplex) -> Complex64 {
    Complex::new(rational_to_f64(&value.re), rational_to_f64(&value.im))
}

pub fn real(value: Rational) -> ExactComplex {
    Complex::new(value, Rational::zero())
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `(2k-1)!! = 1·3·5···(2k-1)`; equal to 1 for `k = 0`.
pub fn odd_double_factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * (2 * j - 1))
}

pub fn multinomial(parts: &[u64]) -> BigUint {
    let total: u64 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(total), |acc, &p| acc / factorial(p))
}

/// Whether a Hermitian matrix of exact complex numbers is positive
/// semidefinite, by symmetric Gaussian elimination with exact pivots.
pub fn is_psd_hermitian(matrix: &[Vec<ExactComplex>]) -> bool {
    let n = matrix.len();
    let mut a: Vec<Vec<ExactComplex>> = matrix.to_vec();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.im.is_zero() || pivot.re.is_negative() {
            return false;
        }
        if pivot.re.is_zero() {
            // a zero pivot needs a zero row
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            let row = a[k].clone();
            for (j, akj) in row.iter().enumerate().skip(k + 1) {
                a[i][j] = &a[i][j] - &factor * akj;
            }
        }
    }
    true
}

/// Wrapper giving a rational the `p/q` display form.
pub struct DisplayRational<'a>(pub &'a Rational);

impl fmt::Display for DisplayRational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Serde adapter storing a [`Rational`] as a `p/q` string.
pub mod rational_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter storing an [`ExactComplex`] as a `p/q+r/s i` string.
pub mod complex_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_complex, parse_complex, ExactComplex};

    pub fn serialize<S: Serializer>(value: &ExactComplex, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_complex(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactComplex, D::Error> {
        let text = String::deserialize(d)?;
        parse_complex(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter storing a [`BigUint`] as a decimal string.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}
