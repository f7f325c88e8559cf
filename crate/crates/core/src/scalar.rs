//! Exact coefficient fields: the rationals and the Gaussian rationals.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

/// Coefficient ring used by [`crate::poly::Polynomial`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: Rational) -> Self;
    fn conj(&self) -> Self;
    /// Real part when the imaginary part vanishes.
    fn as_rational(&self) -> Option<Rational>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Coeff for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_json(&self) -> Value {
        Value::String(fmt_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(Error::Parse(format!("expected rational, got {v}"))),
        }
    }
}

impl Coeff for Gaussian {
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn to_json(&self) -> Value {
        if self.im.is_zero() {
            Value::String(fmt_rational(&self.re))
        } else {
            json!({ "re": fmt_rational(&self.re), "im": fmt_rational(&self.im) })
        }
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let re = m.get("re").map(Rational::from_json).transpose()?;
                let im = m.get("im").map(Rational::from_json).transpose()?;
                Ok(Complex::new(
                    re.unwrap_or_else(Rational::zero),
                    im.unwrap_or_else(Rational::zero),
                ))
            }
            other => Rational::from_json(other).map(Self::from_rational),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> Gaussian {
    Complex::new(re, im)
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn fmt_gaussian(g: &Gaussian) -> String {
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => fmt_rational(&g.re),
        (true, false) => format!("{}i", fmt_rational(&g.im)),
        (false, false) => {
            let sign = if g.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}i", fmt_rational(&g.re), sign, fmt_rational(&g.im.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-3", "7/12", "-5/6"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(fmt_rational(&r), s);
        }
        assert_eq!(fmt_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_json() {
        let g = gauss(rat(1, 2), rat(-3, 4));
        let v = g.to_json();
        assert_eq!(Gaussian::from_json(&v).unwrap(), g);
        assert_eq!(g.conj().im, rat(3, 4));
        assert_eq!(fmt_gaussian(&g), "1/2-3/4i");
    }
}
