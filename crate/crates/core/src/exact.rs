//! Exact scalars: rationals and the coefficient field Q(i)(h), h² = r.
//!
//! Coefficients of the free algebra live in the Gaussian rationals with one
//! adjoined square root `h` (the deformation parameter), so identities that
//! involve `iħ` can be tested for exact zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a decimal with optional exponent, losslessly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in `{s}`")));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: `{s}`")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().expect("digits checked")
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Gauss {
    re: Rational,
    im: Rational,
}

impl Gauss {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn scale(&self, q: &Rational) -> Gauss {
        Gauss {
            re: &self.re * q,
            im: &self.im * q,
        }
    }
    fn neg(&self) -> Gauss {
        Gauss {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Element `a + b·h` of Q(i)(h) with `a, b` Gaussian rationals and `h² = h_sq`.
///
/// `h_sq` is only consulted when two `h`-carrying values are multiplied; pure
/// Gaussian rationals may leave it unset.
#[derive(Clone, Debug, Default)]
pub struct Coeff {
    a: Gauss,
    b: Gauss,
    h_sq: Option<Rational>,
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}
impl Eq for Coeff {}

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    pub fn i() -> Self {
        Coeff {
            a: Gauss {
                re: Rational::zero(),
                im: Rational::one(),
            },
            ..Self::default()
        }
    }

    /// The adjoined root `h` with `h² = h_sq`.
    pub fn root(h_sq: Rational) -> Self {
        Coeff {
            a: Gauss::default(),
            b: Gauss {
                re: Rational::one(),
                im: Rational::zero(),
            },
            h_sq: Some(h_sq),
        }
    }

    pub fn complex(re: Rational, im: Rational) -> Self {
        Coeff {
            a: Gauss { re, im },
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn re(&self) -> &Rational {
        &self.a.re
    }

    pub fn im(&self) -> &Rational {
        &self.a.im
    }

    pub fn has_root_part(&self) -> bool {
        !self.b.is_zero()
    }

    /// Returns the value when it is a plain rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.a.im.is_zero() && self.b.is_zero()).then_some(&self.a.re)
    }

    pub fn scale(&self, q: &Rational) -> Coeff {
        Coeff {
            a: self.a.scale(q),
            b: self.b.scale(q),
            h_sq: self.h_sq.clone(),
        }
    }

    /// Numerical value with `h = +sqrt(h_sq)`.
    pub fn to_c64(&self) -> Complex64 {
        let a = Complex64::new(to_f64(&self.a.re), to_f64(&self.a.im));
        if self.b.is_zero() {
            return a;
        }
        let h = self.h_sq.as_ref().map(to_f64).unwrap_or(f64::NAN).sqrt();
        a + Complex64::new(to_f64(&self.b.re), to_f64(&self.b.im)) * h
    }

    fn merged_root(&self, other: &Coeff) -> Option<Rational> {
        match (&self.h_sq, &other.h_sq) {
            (Some(x), Some(y)) => {
                debug_assert_eq!(x, y, "mixing two different adjoined roots");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl From<Rational> for Coeff {
    fn from(q: Rational) -> Self {
        Coeff {
            a: Gauss {
                re: q,
                im: Rational::zero(),
            },
            ..Self::default()
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::from(int(v))
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
            h_sq: self.merged_root(o),
        }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff {
            a: self.a.sub(&o.a),
            b: self.b.sub(&o.b),
            h_sq: self.merged_root(o),
        }
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let h_sq = self.merged_root(o);
        let mut a = self.a.mul(&o.a);
        let bd = self.b.mul(&o.b);
        if !bd.is_zero() {
            let r = h_sq
                .as_ref()
                .expect("product of two root-carrying coefficients needs h^2");
            a = a.add(&bd.scale(r));
        }
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Coeff { a, b, h_sq }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            a: self.a.neg(),
            b: self.b.neg(),
            h_sq: self.h_sq.clone(),
        }
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        *self = &*self + o;
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.a.re, ""),
            (&self.a.im, "*i"),
            (&self.b.re, "*h"),
            (&self.b.im, "*i*h"),
        ];
        let mut first = true;
        for (value, suffix) in parts {
            if value.is_zero() {
                continue;
            }
            if !first && !value.is_negative() {
                f.write_str("+")?;
            }
            write!(f, "{value}{suffix}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("4/6").unwrap(), rational(2, 3));
        assert_eq!(parse_rational("1.3").unwrap(), rational(13, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1e-3").unwrap(), rational(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn root_arithmetic() {
        let h = Coeff::root(rational(1, 3));
        let ih = &Coeff::i() * &h;
        // (ih)^2 = -h^2 = -1/3
        assert_eq!(&ih * &ih, Coeff::from(rational(-1, 3)));
        assert_eq!(ih.to_string(), "1*i*h");
        let z = &Coeff::from(rational(4, 3)) + &Coeff::complex(int(0), rational(-1, 2));
        assert_eq!(z.to_string(), "4/3-1/2*i");
        assert_eq!(Coeff::zero().to_string(), "0");
        assert!((ih.to_c64() - Complex64::new(0.0, (1.0f64 / 3.0).sqrt())).norm() < 1e-15);
    }
}
