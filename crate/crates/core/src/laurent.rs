//! Finite Laurent polynomials in λ with the loop-algebra involutions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{fmt_float, roundtrip_digits, BigComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Plus,
    Minus,
    Zero,
    Geq0,
}

/// Sparse Laurent polynomial; terms sorted by degree, no exact zeros stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly {
    bits: u32,
    terms: Vec<(i32, BigComplex)>,
}

impl LaurentPoly {
    pub fn zero(bits: u32) -> Self {
        LaurentPoly { bits, terms: Vec::new() }
    }

    pub fn constant(c: BigComplex) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: i32, c: BigComplex) -> Self {
        let bits = c.prec();
        let mut p = LaurentPoly { bits, terms: vec![(deg, c)] };
        p.drop_zeros();
        p
    }

    /// Builds from arbitrary (degree, coefficient) pairs, summing repeats.
    pub fn from_terms(bits: u32, terms: impl IntoIterator<Item = (i32, BigComplex)>) -> Self {
        let mut v: Vec<(i32, BigComplex)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigComplex)> = Vec::with_capacity(v.len());
        for (d, c) in v {
            match out.last_mut() {
                Some((ld, lc)) if *ld == d => *lc += &c,
                _ => out.push((d, c.with_prec(bits))),
            }
        }
        let mut p = LaurentPoly { bits, terms: out };
        p.drop_zeros();
        p
    }

    fn drop_zeros(&mut self) {
        self.terms.retain(|(_, c)| !c.is_zero());
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i32, BigComplex)] {
        &self.terms
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, deg: i32) -> BigComplex {
        match self.terms.binary_search_by_key(&deg, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigComplex::zero(self.bits),
        }
    }

    fn check(&self, o: &LaurentPoly) -> Result<()> {
        if self.bits != o.bits {
            Err(Error::PrecisionMismatch(self.bits, o.bits))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(o)?;
        Ok(self.merge(o, false))
    }

    pub fn checked_sub(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(o)?;
        Ok(self.merge(o, true))
    }

    fn merge(&self, o: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let di = self.terms.get(i).map(|t| t.0).unwrap_or(i32::MAX);
            let dj = o.terms.get(j).map(|t| t.0).unwrap_or(i32::MAX);
            if di < dj {
                out.push(self.terms[i].clone());
                i += 1;
            } else if dj < di {
                let c = if negate { -&o.terms[j].1 } else { o.terms[j].1.clone() };
                out.push((dj, c));
                j += 1;
            } else {
                let c = if negate {
                    &self.terms[i].1 - &o.terms[j].1
                } else {
                    &self.terms[i].1 + &o.terms[j].1
                };
                out.push((di, c));
                i += 1;
                j += 1;
            }
        }
        let mut p = LaurentPoly { bits: self.bits, terms: out };
        p.drop_zeros();
        p
    }

    pub fn checked_mul(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(LaurentPoly::zero(self.bits));
        }
        let lo = self.terms[0].0 + o.terms[0].0;
        let hi = self.max_degree().unwrap() + o.max_degree().unwrap();
        let mut acc: Vec<Option<BigComplex>> = vec![None; (hi - lo + 1) as usize];
        let mut scratch = Float::new(self.bits);
        for (da, ca) in &self.terms {
            for (db, cb) in &o.terms {
                let slot = &mut acc[(da + db - lo) as usize];
                let target = slot.get_or_insert_with(|| BigComplex::zero(self.bits));
                target.add_mul(ca, cb, &mut scratch);
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(k, c)| c.map(|c| (k as i32 + lo, c)))
            .collect();
        let mut p = LaurentPoly { bits: self.bits, terms };
        p.drop_zeros();
        Ok(p)
    }

    pub fn scale(&self, s: &BigComplex) -> LaurentPoly {
        let terms = self.terms.iter().map(|(d, c)| (*d, c * s)).collect();
        let mut p = LaurentPoly { bits: self.bits, terms };
        p.drop_zeros();
        p
    }

    pub fn scale_real(&self, s: &Float) -> LaurentPoly {
        let terms = self.terms.iter().map(|(d, c)| (*d, c.scale(s))).collect();
        let mut p = LaurentPoly { bits: self.bits, terms };
        p.drop_zeros();
        p
    }

    /// Multiply by λ^k.
    pub fn shift(&self, k: i32) -> LaurentPoly {
        LaurentPoly {
            bits: self.bits,
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    /// h*(λ) = conj(h(1/conj λ)): coefficient k becomes conj of coefficient -k.
    pub fn star(&self) -> LaurentPoly {
        let terms = self.terms.iter().rev().map(|(d, c)| (-d, c.conj())).collect();
        LaurentPoly { bits: self.bits, terms }
    }

    /// Coefficient-wise conjugation.
    pub fn bar(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(d, c)| (*d, c.conj())).collect();
        LaurentPoly { bits: self.bits, terms }
    }

    /// h(-λ).
    pub fn flip(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| (*d, if d % 2 == 0 { c.clone() } else { -c }))
            .collect();
        LaurentPoly { bits: self.bits, terms }
    }

    pub fn project(&self, part: Part) -> LaurentPoly {
        let keep = |d: i32| match part {
            Part::Plus => d > 0,
            Part::Minus => d < 0,
            Part::Zero => d == 0,
            Part::Geq0 => d >= 0,
        };
        let terms = self.terms.iter().filter(|(d, _)| keep(*d)).cloned().collect();
        LaurentPoly { bits: self.bits, terms }
    }

    pub fn eval(&self, x: &BigComplex) -> Result<BigComplex> {
        if x.is_zero() {
            if self.min_degree().map_or(false, |d| d < 0) {
                return Err(Error::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        let inv = x.recip();
        let mut acc = BigComplex::zero(self.bits);
        for (d, c) in &self.terms {
            let p = if *d >= 0 { x.pow_u(*d as u32) } else { inv.pow_u((-d) as u32) };
            acc += &(c * &p);
        }
        Ok(acc)
    }

    /// Division by λ²−1 of a polynomial; remainder has degree ≤ 1.
    pub fn divrem_l2m1(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        if self.min_degree().map_or(false, |d| d < 0) {
            return Err(Error::Invariant {
                order: 0,
                what: "divrem_l2m1 needs a polynomial without negative degrees".into(),
            });
        }
        let n = match self.max_degree() {
            None => return Ok((LaurentPoly::zero(self.bits), LaurentPoly::zero(self.bits))),
            Some(n) => n as usize,
        };
        let mut r: Vec<BigComplex> = (0..=n).map(|k| self.coeff(k as i32)).collect();
        let mut q: Vec<(i32, BigComplex)> = Vec::new();
        for k in (2..=n).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            r[k - 2] += &c;
            r[k] = BigComplex::zero(self.bits);
            q.push(((k - 2) as i32, c));
        }
        let quotient = LaurentPoly::from_terms(self.bits, q);
        let rem = LaurentPoly::from_terms(self.bits, r.into_iter().take(2).enumerate().map(|(k, c)| (k as i32, c)));
        Ok((quotient, rem))
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_abs(&self) -> Float {
        let mut m = Float::new(self.bits);
        for (_, c) in &self.terms {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Drop coefficients below `10^-digits` relative to the largest one.
    pub fn trimmed(&self, digits: u32) -> LaurentPoly {
        let cut = self.max_abs() * crate::numerics::pow10_neg(self.bits, digits);
        let terms = self.terms.iter().filter(|(_, c)| c.abs() >= cut).cloned().collect();
        LaurentPoly { bits: self.bits, terms }
    }

    /// Largest coefficient modulus of `self - o`.
    pub fn distance(&self, o: &LaurentPoly) -> Float {
        self.merge(o, true).max_abs()
    }

    pub fn to_json(&self) -> Vec<CoeffJson> {
        let digits = roundtrip_digits(self.bits);
        self.terms
            .iter()
            .map(|(d, c)| CoeffJson { deg: *d, re: fmt_float(&c.re, digits), im: fmt_float(&c.im, digits) })
            .collect()
    }

    pub fn from_json(bits: u32, v: &[CoeffJson]) -> Result<Self> {
        let mut terms = Vec::with_capacity(v.len());
        for t in v {
            terms.push((t.deg, BigComplex::parse(bits, &t.re, &t.im)?));
        }
        Ok(LaurentPoly::from_terms(bits, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub deg: i32,
    pub re: String,
    pub im: String,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{:?}·λ^{}", c, d)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on precision mismatch; use the `checked_` form to get an error.
            fn $m(self, o: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(o).expect("LaurentPoly precision mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}

poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { bits: self.bits, terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// 2×2 matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentMatrix2 {
    pub e: [[LaurentPoly; 2]; 2],
}

impl LaurentMatrix2 {
    pub fn zero(bits: u32) -> Self {
        let z = LaurentPoly::zero(bits);
        LaurentMatrix2 { e: [[z.clone(), z.clone()], [z.clone(), z]] }
    }

    pub fn identity(bits: u32) -> Self {
        let mut m = Self::zero(bits);
        m.e[0][0] = LaurentPoly::constant(BigComplex::one(bits));
        m.e[1][1] = LaurentPoly::constant(BigComplex::one(bits));
        m
    }

    pub fn from_scalars(s: [[BigComplex; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = s;
        LaurentMatrix2 {
            e: [
                [LaurentPoly::constant(a), LaurentPoly::constant(b)],
                [LaurentPoly::constant(c), LaurentPoly::constant(d)],
            ],
        }
    }

    pub fn bits(&self) -> u32 {
        self.e[0][0].bits()
    }

    pub fn mul(&self, o: &LaurentMatrix2) -> Result<LaurentMatrix2> {
        let mut out = Self::zero(self.bits());
        for i in 0..2 {
            for j in 0..2 {
                let a = self.e[i][0].checked_mul(&o.e[0][j])?;
                let b = self.e[i][1].checked_mul(&o.e[1][j])?;
                out.e[i][j] = a.checked_add(&b)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &LaurentMatrix2) -> Result<LaurentMatrix2> {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].checked_add(&o.e[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &LaurentPoly) -> Result<LaurentMatrix2> {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].checked_mul(s)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u32 = 200;

    fn c(x: i64) -> BigComplex {
        BigComplex::from_i64(B, x)
    }

    fn poly(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(B, t.iter().map(|&(d, x)| (d, c(x))))
    }

    #[test]
    fn products() {
        assert_eq!(poly(&[(1, 1), (0, 1)]) * poly(&[(1, 1), (0, -1)]), poly(&[(2, 1), (0, -1)]));
        assert!((poly(&[(3, 2), (-1, 5)]) * LaurentPoly::zero(B)).is_zero());
        assert_eq!(poly(&[(-1, 1), (1, -1)]) * poly(&[(-1, 1), (1, 1)]), poly(&[(-2, 1), (2, -1)]));
        assert!(poly(&[(0, 1)]).checked_mul(&LaurentPoly::zero(B + 64)).is_err());
    }

    #[test]
    fn involutions_and_parts() {
        assert_eq!(poly(&[(1, 1)]).star(), poly(&[(-1, 1)]));
        let a_bar = poly(&[(-1, 1), (1, -1)]).scale(&BigComplex::from_ratio(B, 1, 2));
        assert_eq!(a_bar.star(), -&a_bar);
        let il = LaurentPoly::monomial(1, BigComplex::i(B));
        assert_eq!(il.bar(), -&il);
        let h = poly(&[(-1, 1), (0, 2), (1, 3)]);
        assert_eq!(h.project(Part::Plus), poly(&[(1, 3)]));
        let sum = h.project(Part::Plus) + h.project(Part::Minus) + h.project(Part::Zero);
        assert_eq!(sum, h);
        assert_eq!(a_bar.project(Part::Geq0), LaurentPoly::monomial(1, BigComplex::from_ratio(B, -1, 2)));
    }

    #[test]
    fn evaluation_at_i() {
        let i = BigComplex::i(B);
        assert!(poly(&[(-1, 1), (1, 1)]).eval(&i).unwrap().is_zero());
        assert_eq!(poly(&[(2, 1)]).eval(&i).unwrap(), c(-1));
        assert!(poly(&[(-1, 1)]).eval(&BigComplex::zero(B)).is_err());
    }

    #[test]
    fn division_by_l2m1() {
        let (q, r) = poly(&[(3, 1)]).divrem_l2m1().unwrap();
        assert_eq!((q, r), (poly(&[(1, 1)]), poly(&[(1, 1)])));
        let (q, r) = poly(&[(2, 1), (0, -1)]).divrem_l2m1().unwrap();
        assert_eq!((q, r.is_zero()), (poly(&[(0, 1)]), true));
        let (q, r) = poly(&[(1, 2)]).divrem_l2m1().unwrap();
        assert_eq!((q.is_zero(), r), (true, poly(&[(1, 2)])));
    }

    #[test]
    fn json_round_trip() {
        let h = poly(&[(-2, 3), (5, -7)]).scale(&BigComplex::i(B).recip());
        let back = LaurentPoly::from_json(B, &h.to_json()).unwrap();
        assert_eq!(back, h);
    }
}
