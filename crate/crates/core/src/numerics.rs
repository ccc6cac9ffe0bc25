//! Arbitrary-precision complex scalars, precision plumbing and constants.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Constant as MpConst;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

const LOG2_10: f64 = 3.321_928_094_887_362;

/// Target and guard digits; the working precision is their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionConfig {
    pub target_digits: u32,
    pub guard_digits: u32,
}

impl PrecisionConfig {
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, 10)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits < 10 {
            return Err(Error::PrecisionTooLow(target_digits));
        }
        Ok(PrecisionConfig { target_digits, guard_digits: guard_digits.max(10) })
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Binary precision used for every MPFR value.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// `10^-(target - slack)`.
    pub fn tol(&self, slack: u32) -> Float {
        pow10_neg(self.bits(), self.target_digits.saturating_sub(slack))
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 8
}

pub fn pow10_neg(bits: u32, k: u32) -> Float {
    let ten = Float::with_val(bits, 10);
    Float::with_val(bits, ten.pow(-(k as i32)))
}

/// Complex number with two MPFR parts of equal precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        BigComplex { re: Float::new(bits), im: Float::new(bits) }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_i64(bits, 1)
    }

    pub fn i(bits: u32) -> Self {
        BigComplex { re: Float::new(bits), im: Float::with_val(bits, 1) }
    }

    pub fn from_i64(bits: u32, n: i64) -> Self {
        BigComplex { re: Float::with_val(bits, n), im: Float::new(bits) }
    }

    pub fn from_ratio(bits: u32, num: i64, den: i64) -> Self {
        let q = Rational::from((num, den));
        BigComplex { re: Float::with_val(bits, &q), im: Float::new(bits) }
    }

    pub fn from_real(re: Float) -> Self {
        let bits = re.prec();
        BigComplex { re, im: Float::new(bits) }
    }

    pub fn from_imag(im: Float) -> Self {
        let bits = im.prec();
        BigComplex { re: Float::new(bits), im }
    }

    /// `e^{iθ}`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        BigComplex { re: c, im: s }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex { re: Float::with_val(self.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let b = self.prec();
        BigComplex { re: Float::with_val(b, &self.re * s), im: Float::with_val(b, &self.im * s) }
    }

    pub fn scale_i64(&self, s: i64) -> Self {
        let b = self.prec();
        BigComplex { re: Float::with_val(b, &self.re * s), im: Float::with_val(b, &self.im * s) }
    }

    pub fn norm_sqr(&self) -> Float {
        let b = self.prec();
        Float::with_val(b, self.re.mul_add_mul_ref(&self.re, &self.im, &self.im))
    }

    pub fn abs(&self) -> Float {
        let b = self.prec();
        Float::with_val(b, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let b = self.prec();
        BigComplex {
            re: Float::with_val(b, &self.re / &n),
            im: Float::with_val(b, -Float::with_val(b, &self.im / &n)),
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let b = self.prec();
        BigComplex { re: self.abs().ln(), im: Float::with_val(b, self.im.atan2_ref(&self.re)) }
    }

    pub fn exp(&self) -> Self {
        let e = Float::with_val(self.prec(), self.re.exp_ref());
        let c = BigComplex::cis(&self.im);
        c.scale(&e)
    }

    pub fn pow_u(&self, n: u32) -> Self {
        let mut acc = BigComplex::one(self.prec());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Accumulate `self += a * b` without temporaries on the caller side.
    pub fn add_mul(&mut self, a: &BigComplex, b: &BigComplex, scratch: &mut Float) {
        scratch.assign_mul(&a.re, &b.re);
        self.re += &*scratch;
        scratch.assign_mul(&a.im, &b.im);
        self.re -= &*scratch;
        scratch.assign_mul(&a.re, &b.im);
        self.im += &*scratch;
        scratch.assign_mul(&a.im, &b.re);
        self.im += &*scratch;
    }

    /// Max of |re|, |im|; cheap magnitude for tolerance checks.
    pub fn max_abs(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (fmt_float(&self.re, digits), fmt_float(&self.im, digits))
    }

    pub fn parse(bits: u32, re: &str, im: &str) -> Result<Self> {
        Ok(BigComplex { re: parse_float(bits, re)?, im: parse_float(bits, im)? })
    }

    pub fn with_prec(&self, bits: u32) -> Self {
        BigComplex { re: Float::with_val(bits, &self.re), im: Float::with_val(bits, &self.im) }
    }
}

trait AssignMul {
    fn assign_mul(&mut self, a: &Float, b: &Float);
}

impl AssignMul for Float {
    fn assign_mul(&mut self, a: &Float, b: &Float) {
        use rug::Assign;
        self.assign(a * b);
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", fmt_float(&self.re, 20), fmt_float(&self.im, 20))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let (re, im) = self.to_decimal(digits);
        if im.starts_with('-') {
            write!(f, "{} - {}i", re, &im[1..])
        } else {
            write!(f, "{} + {}i", re, im)
        }
    }
}

/// Decimal rendering with `digits` significant digits, e.g. `-1.2345e-3`.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

pub fn parse_float(bits: u32, s: &str) -> Result<Float> {
    let t = s.trim();
    Float::parse(t).map(|p| Float::with_val(bits, p)).map_err(|_| Error::Parse(s.to_string()))
}

/// Decimal digits needed to round-trip a value of `bits` precision.
pub fn roundtrip_digits(bits: u32) -> usize {
    (bits as f64 / LOG2_10).ceil() as usize + 2
}

/// Number of agreeing decimal digits, `-log10(|a-b| / max(|b|, 1))`.
pub fn agreeing_digits(a: &BigComplex, b: &BigComplex) -> f64 {
    let d = (a - b).abs();
    if d.is_zero() {
        return f64::INFINITY;
    }
    let mut scale = b.abs();
    if scale < 1 {
        scale = Float::with_val(scale.prec(), 1);
    }
    let r = Float::with_val(d.prec(), &d / &scale);
    -r.log10().to_f64()
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &'a BigComplex) -> BigComplex {
                let f: fn(&BigComplex, &BigComplex) -> BigComplex = $body;
                f(self, o)
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &'a BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let p = a.prec();
    BigComplex { re: Float::with_val(p, &a.re + &b.re), im: Float::with_val(p, &a.im + &b.im) }
});
binop!(Sub, sub, |a, b| {
    let p = a.prec();
    BigComplex { re: Float::with_val(p, &a.re - &b.re), im: Float::with_val(p, &a.im - &b.im) }
});
binop!(Mul, mul, |a, b| {
    let p = a.prec();
    let re = Float::with_val(p, a.re.mul_sub_mul_ref(&b.re, &a.im, &b.im));
    let im = Float::with_val(p, a.re.mul_add_mul_ref(&b.im, &a.im, &b.re));
    BigComplex { re, im }
});
binop!(Div, div, |a, b| a * &b.recip());

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -(self.clone())
    }
}

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, o: &BigComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, o: &BigComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, o: &BigComplex) {
        *self = &*self * o;
    }
}

/// Named constants accepted by [`constant`].
#[derive(Debug, Clone, PartialEq)]
pub enum Constant {
    Pi,
    Log2,
    /// Natural logarithm of an exact decimal or rational argument.
    EulerLog(String),
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "pi" => Ok(Constant::Pi),
            "log2" => Ok(Constant::Log2),
            _ => {
                if let Some(arg) = t.strip_prefix("euler_log(").and_then(|r| r.strip_suffix(')')) {
                    Ok(Constant::EulerLog(arg.trim().to_string()))
                } else {
                    Err(Error::UnknownConstant(t.to_string()))
                }
            }
        }
    }
}

pub fn constant(name: &Constant, cfg: &PrecisionConfig) -> Result<BigComplex> {
    let b = cfg.bits();
    match name {
        Constant::Pi => Ok(BigComplex::from_real(pi(b))),
        Constant::Log2 => Ok(BigComplex::from_real(log2(b))),
        Constant::EulerLog(arg) => {
            let x = parse_exact(b, arg)?;
            if x <= 0 {
                return Err(Error::NonpositiveLog(arg.clone()));
            }
            Ok(BigComplex::from_real(x.ln()))
        }
    }
}

fn parse_exact(bits: u32, s: &str) -> Result<Float> {
    if let Ok(q) = Rational::from_str(s.trim()) {
        return Ok(Float::with_val(bits, &q));
    }
    parse_float(bits, s)
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, MpConst::Pi)
}

pub fn log2(bits: u32) -> Float {
    Float::with_val(bits, MpConst::Log2)
}

/// Riemann zeta at an integer `n >= 2`.
pub fn zeta(n: i64, cfg: &PrecisionConfig) -> Result<BigComplex> {
    Ok(BigComplex::from_real(zeta_real(n, cfg.bits())?))
}

pub fn zeta_real(n: i64, bits: u32) -> Result<Float> {
    if n < 2 {
        return Err(Error::ZetaDomain(n));
    }
    Ok(Float::with_val(bits, Float::zeta_u(n as u32)))
}

/// An angle given exactly: a rational multiple of π or a decimal literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Angle {
    PiTimes(Rational),
    Decimal(String),
}

impl Angle {
    pub fn pi_over(d: i64) -> Self {
        Angle::PiTimes(Rational::from((1, d)))
    }

    pub fn eval(&self, bits: u32) -> Float {
        match self {
            Angle::PiTimes(q) => pi(bits) * Float::with_val(bits, q),
            Angle::Decimal(s) => parse_exact(bits, s).expect("validated at parse time"),
        }
    }

    pub fn is_quarter_pi(&self) -> bool {
        matches!(self, Angle::PiTimes(q) if *q == Rational::from((1, 4)))
    }

    /// Errors unless the angle lies strictly inside (0, π/2).
    pub fn check_open_quadrant(&self) -> Result<()> {
        let ok = match self {
            Angle::PiTimes(q) => *q > 0 && *q < Rational::from((1, 2)),
            Angle::Decimal(_) => {
                let x = self.eval(128);
                let half = pi(128) / 2u32;
                x > 0 && x < half
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AngleOutOfRange(self.to_string()))
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiTimes(q) => {
                let (n, d) = (q.numer(), q.denom());
                let head = if *n == 1 {
                    "pi".to_string()
                } else if *n == -1 {
                    "-pi".to_string()
                } else {
                    format!("{}pi", n)
                };
                if *d == 1 {
                    write!(f, "{}", head)
                } else {
                    write!(f, "{}/{}", head, d)
                }
            }
            Angle::Decimal(s) => write!(f, "{}", s),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;
    /// Accepts `pi`, `pi/4`, `3pi/8`, `3*pi/8` and plain decimals like `0.3`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(s.to_string());
        if let Some(pos) = t.find("pi") {
            let num = t[..pos].trim_end_matches('*');
            let rest = &t[pos + 2..];
            let n = match num {
                "" => Integer::from(1),
                "-" => Integer::from(-1),
                x => Integer::from_str(x).map_err(|_| bad())?,
            };
            let d = match rest {
                "" => Integer::from(1),
                r => {
                    let r = r.strip_prefix('/').ok_or_else(bad)?;
                    Integer::from_str(r).map_err(|_| bad())?
                }
            };
            if d == 0 {
                return Err(bad());
            }
            return Ok(Angle::PiTimes(Rational::from((n, d))));
        }
        Float::parse(&t).map_err(|_| bad())?;
        Ok(Angle::Decimal(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_log2_at_12_digits() {
        let cfg = PrecisionConfig::new(12).unwrap();
        let p = constant(&Constant::Pi, &cfg).unwrap();
        assert_eq!(fmt_float(&p.re, 12), "3.14159265359");
        let l = constant(&"log2".parse().unwrap(), &cfg).unwrap();
        assert_eq!(fmt_float(&l.re, 12), "6.93147180560e-1");
        let z = constant(&"euler_log(1)".parse().unwrap(), &cfg).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn constant_errors() {
        assert!("tau".parse::<Constant>().is_err());
        let cfg = PrecisionConfig::new(20).unwrap();
        assert!(constant(&Constant::EulerLog("-2".into()), &cfg).is_err());
        assert!(constant(&Constant::EulerLog("0".into()), &cfg).is_err());
        assert!(zeta(1, &cfg).is_err());
        assert!(PrecisionConfig::new(9).is_err());
    }

    #[test]
    fn angles_parse_and_print() {
        let a: Angle = "pi/4".parse().unwrap();
        assert!(a.is_quarter_pi());
        assert_eq!(a.to_string(), "pi/4");
        assert_eq!("3*pi/8".parse::<Angle>().unwrap().to_string(), "3pi/8");
        assert_eq!("0.3".parse::<Angle>().unwrap(), Angle::Decimal("0.3".into()));
        assert!("pi/x".parse::<Angle>().is_err());
        assert!("pi/2".parse::<Angle>().unwrap().check_open_quadrant().is_err());
        assert!("1.6".parse::<Angle>().unwrap().check_open_quadrant().is_err());
        assert!("1.5".parse::<Angle>().unwrap().check_open_quadrant().is_ok());
    }

    #[test]
    fn complex_field_ops() {
        let b = 200;
        let z = BigComplex::new(Float::with_val(b, 3), Float::with_val(b, -4));
        assert_eq!(z.abs(), 5);
        let w = &z * &z.recip();
        assert!((w - BigComplex::one(b)).abs() < 1e-55);
        let e = BigComplex::i(b).pow_u(4);
        assert_eq!(e, BigComplex::one(b));
        let l = BigComplex::from_i64(b, -1).ln();
        assert!((l.im - pi(b)).abs() < 1e-55);
    }
}
