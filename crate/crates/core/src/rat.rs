//! Exact rational and Gaussian-rational scalars.
//!
//! `Rat` is `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator. `GaussRat` adds an imaginary part and
//! is used only for evaluating polynomials at points of `Q(i)^n`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rat;

/// Builds `num / den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` with optional leading sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Canonical text of a rational: `n` or `n/d`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Self { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rat::zero(), im: Rat::one() }
    }

    pub fn zero() -> Self {
        Self::real(Rat::zero())
    }

    pub fn one() -> Self {
        Self::real(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussRat) -> GaussRat {
        let inv = o.inv().expect("division by zero in Q(i)");
        self * &inv
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() { "i".to_string() } else { format!("{}*i", fmt_rat(&im_abs)) };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_txt}")
            } else {
                write!(f, "{im_txt}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{im_txt}", fmt_rat(&self.re))
        }
    }
}

/// Error from [`GaussRat::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational `{0}`")]
pub struct ParseGaussError(pub String);

impl FromStr for GaussRat {
    type Err = ParseGaussError;

    /// Accepts `a`, `b*i`, `bi`, `i`, `-i`, `a+b*i`, `a-i`, with `a`, `b` rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.ends_with('i') {
            return parse_rat(&t).map(GaussRat::real).ok_or_else(err);
        }
        let body = &t[..t.len() - 1];
        // split at the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let (re_txt, im_txt) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im_txt = im_txt.strip_suffix('*').unwrap_or(im_txt);
        let im = match im_txt {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => parse_rat(other).ok_or_else(err)?,
        };
        let re = parse_rat(re_txt).ok_or_else(err)?;
        Ok(GaussRat { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_gauss_forms() {
        assert_eq!("i".parse::<GaussRat>().unwrap(), GaussRat::i());
        assert_eq!("-i".parse::<GaussRat>().unwrap(), -GaussRat::i());
        assert_eq!("3/4".parse::<GaussRat>().unwrap(), GaussRat::real(rat(3, 4)));
        assert_eq!("1-2*i".parse::<GaussRat>().unwrap(), GaussRat::new(int(1), int(-2)));
        assert_eq!("-1/2+i".parse::<GaussRat>().unwrap(), GaussRat::new(rat(-1, 2), int(1)));
        assert_eq!("5i".parse::<GaussRat>().unwrap(), GaussRat::new(int(0), int(5)));
        assert!("x".parse::<GaussRat>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "i", "-i", "3/4", "1-2*i", "-1/2+i", "5*i"] {
            let g: GaussRat = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::real(int(-1)));
        assert_eq!(i.pow(4), GaussRat::one());
        let z = GaussRat::new(int(3), int(4));
        assert_eq!(&z * &z.inv().unwrap(), GaussRat::one());
    }
}
