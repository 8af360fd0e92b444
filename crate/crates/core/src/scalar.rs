//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` is the coefficient substrate (always reduced, positive
//! denominator); [`GaussianRational`] is the field Q(i) used everywhere as the
//! stand-in for the complex scalars. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator. `BigRational` maintains the
/// canonical form (gcd 1, denominator > 0) on every operation.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p/q" or "p" (decimal digits with optional sign).
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}")))
}

/// Best rational approximation to `x` with denominator at most `bound`,
/// by the continued-fraction / semiconvergent construction.
pub fn rationalize(x: f64, bound: &BigUint) -> Rational {
    assert!(!bound.is_zero(), "denominator bound must be >= 1");
    assert!(x.is_finite(), "cannot rationalize a non-finite float");
    let bound = BigInt::from(bound.clone());
    let negative = x < 0.0;
    let mut v = x.abs();

    // convergents h/k of the continued fraction of |x|
    let (mut h0, mut k0) = (BigInt::one(), BigInt::zero());
    let (mut h1, mut k1) = (BigInt::from(v.floor() as i64), BigInt::one());
    v -= v.floor();
    while !v.is_zero() {
        v = 1.0 / v;
        if !v.is_finite() || v > 1e15 {
            break;
        }
        let a = BigInt::from(v.floor() as i64);
        v -= v.floor();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > bound {
            // best semiconvergent still within the bound
            let t = (&bound - &k0) / &k1;
            let hs = &t * &h1 + &h0;
            let ks = &t * &k1 + &k0;
            let cand = Rational::new(hs, ks.max(BigInt::one()));
            let conv = Rational::new(h1.clone(), k1.clone());
            let target = Rational::from_float(x.abs()).unwrap_or_else(|| conv.clone());
            let best = if (&cand - &target).abs() < (&conv - &target).abs() {
                cand
            } else {
                conv
            };
            return if negative { -best } else { best };
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    let r = Rational::new(h1, k1.max(BigInt::one()));
    if negative {
        -r
    } else {
        r
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division for extreme magnitudes
        let num = r.numer().to_f64().unwrap_or(f64::MAX);
        let den = r.denom().to_f64().unwrap_or(f64::MAX);
        num / den
    })
}

/// Greedy decomposition of a nonnegative integer into a short list of squares
/// (repeatedly subtract the largest square). The list length stays small even
/// for huge inputs, which keeps expanded certificates compact.
pub fn sum_of_integer_squares(mut m: BigUint) -> Vec<BigUint> {
    let mut parts = Vec::new();
    while !m.is_zero() {
        let s = m.sqrt();
        m -= &s * &s;
        parts.push(s);
    }
    parts
}

/// Gaussian scalars q_1..q_r with |q_1|^2 + ... + |q_r|^2 = w exactly, for a
/// positive rational weight w. Pairs of squares are packed into single
/// Gaussian scalars, so r is about half the square count.
pub fn gaussian_weight_factors(w: &Rational) -> Vec<GaussianRational> {
    assert!(w.is_positive(), "weight must be positive");
    // w = u/v = (sum of n_i^2) / v^2 with the n_i from u*v
    let u = w.numer().magnitude().clone();
    let v = w.denom().magnitude().clone();
    let squares = sum_of_integer_squares(&u * &v);
    let den = BigInt::from(v);
    let mut out = Vec::new();
    let mut it = squares.into_iter();
    while let Some(a) = it.next() {
        let re = Rational::new(BigInt::from(a), den.clone());
        let im = match it.next() {
            Some(b) => Rational::new(BigInt::from(b), den.clone()),
            None => Rational::zero(),
        };
        out.push(GaussianRational::new(re, im));
    }
    out
}

/// Exact complex number re + im*i with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
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

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |x|^2 = re^2 + im^2, a nonnegative rational.
    pub fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale_rat(&self, r: &Rational) -> GaussianRational {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        let n = self.abs_sq();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Canonical exact string: "p/q", "r/s*i", "p/q+r/s*i" or "p/q-r/s*i",
    /// with unit denominators and unit imaginary coefficients elided.
    pub fn to_exact_string(&self) -> String {
        format!("{self}")
    }

    /// Parse the forms produced by `to_exact_string` (plus harmless spacing).
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Invalid("empty scalar".into()));
        }
        // split at the last top-level +/- that is not the leading sign
        let bytes = t.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && bytes[idx - 1] as char != '/' {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let head = &t[..idx];
                let tail = &t[idx..];
                let a = Self::parse_part(head)?;
                let b = Self::parse_part(tail)?;
                Ok(a + b)
            }
            None => Self::parse_part(&t),
        }
    }

    fn parse_part(s: &str) -> Result<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let val = if body == "i" {
            GaussianRational::i()
        } else if let Some(coeff) = body.strip_suffix("*i").or_else(|| body.strip_suffix('i')) {
            GaussianRational::new(Rational::zero(), parse_rational(coeff)?)
        } else {
            GaussianRational::from_rational(parse_rational(body)?)
        };
        Ok(if neg { -val } else { val })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(im: &Rational) -> String {
            if im.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}*i", im.abs())
            }
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, imag(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", self.re, sign, imag(&self.im))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> Neg for &'a GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self).mul(rhs);
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        (&self).mul(&rhs.inv().expect("division by zero"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let half = rat(1, 2);
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(parse_rational("1/2").unwrap(), half);
        assert_eq!(rat_int(5).to_string(), "5");
        assert_eq!(rat(-6, 4), rat(-3, 2));
    }

    #[test]
    fn rationalize_simple() {
        assert_eq!(rationalize(0.5, &BigUint::from(10u32)), rat(1, 2));
        assert_eq!(rationalize(0.3333339, &BigUint::from(100u32)), rat(1, 3));
        assert_eq!(rationalize(-0.25, &BigUint::from(100u32)), rat(-1, 4));
        assert_eq!(rationalize(3.0, &BigUint::from(1u32)), rat_int(3));
    }

    #[test]
    fn rationalize_pi_matches_exhaustive_scan() {
        let x = 3.14159265_f64;
        // independent oracle: scan every denominator up to the bound
        let mut best = rat_int(0);
        let mut best_err = f64::INFINITY;
        for q in 1..=120i64 {
            let p = (x * q as f64).round() as i64;
            let err = (x - p as f64 / q as f64).abs();
            if err < best_err {
                best_err = err;
                best = rat(p, q);
            }
        }
        assert_eq!(best, rat(355, 113));
        assert_eq!(rationalize(x, &BigUint::from(120u32)), best);
    }

    #[test]
    fn gaussian_field_ops() {
        let x = GaussianRational::new(rat(1, 2), rat(3, 1));
        let y = GaussianRational::new(rat(-2, 1), rat(1, 5));
        assert_eq!(x.conj().conj(), x);
        let z = (&x * &y).clone();
        let back = z / y.clone();
        assert_eq!(back, x);
        assert_eq!(
            GaussianRational::i() * GaussianRational::i(),
            GaussianRational::from_int(-1)
        );
        assert_eq!(x.abs_sq(), rat(1, 4) + rat(9, 1));
    }

    #[test]
    fn gaussian_strings_round_trip() {
        for s in [
            "0",
            "1",
            "-3/4",
            "i",
            "-i",
            "1/2*i",
            "1+i",
            "1-i",
            "2/3-5/7*i",
            "-2+3*i",
        ] {
            let v = GaussianRational::parse(s).unwrap();
            assert_eq!(v.to_exact_string(), s, "canonical form of {s}");
            assert_eq!(GaussianRational::parse(&v.to_exact_string()).unwrap(), v);
        }
    }

    #[test]
    fn greedy_squares_sum_back() {
        for m in [0u64, 1, 2, 3, 7, 12, 1023, 999_999_937] {
            let parts = sum_of_integer_squares(BigUint::from(m));
            let total: BigUint = parts.iter().map(|s| s * s).sum();
            assert_eq!(total, BigUint::from(m));
            assert!(parts.len() <= 8, "greedy blowup for {m}: {}", parts.len());
        }
    }

    #[test]
    fn weight_factors_recompose() {
        for w in [rat(1, 1), rat(1, 2), rat(3, 1), rat(7, 4), rat(355, 113)] {
            let qs = gaussian_weight_factors(&w);
            let total: Rational = qs.iter().map(|q| q.abs_sq()).sum();
            assert_eq!(total, w);
        }
    }
}
