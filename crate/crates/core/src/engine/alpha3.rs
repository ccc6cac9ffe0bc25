//! α₃ written directly as a polynomial in Ω values at z = 1.
//!
//! Terms are stored as `"coef factor factor ..."` where a factor is a word
//! like `2,1`, optionally raised to a power with `^k`.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{pi, BigComplex};
use crate::omega::OmegaTable;
use crate::words::Word;

const A_TERMS: &[&str] = &[
    "-3 1^2 2^2 1,2", "3 1^2 2^2 2,1", "3 1 2 1,2^2", "3 1 2 2,1^2", "-6 1 2 1,2 2,1",
    "-1 1,2^3", "1 2,1^3", "-3 1,2 2,1^2", "3 1,2^2 2,1", "1 1^3 2^3",
];

const B_TERMS: &[&str] = &[
    "-6 3 1^2 1,2", "-12 2 1^2 1,3", "6 3 1^2 2,1", "12 2 1^2 3,1", "12 1 1,2 1,3",
    "-12 1 1,3 2,1", "-2 2^2 1 2,3", "-12 1 1,2 3,1", "12 1 2,1 3,1", "2 2^2 1 3,2",
    "12 2 1 1,1,3", "-12 2 1 1,3,1", "-2 2 1 2,2,3", "2 2 1 2,3,2", "12 2 1 3,1,1",
    "-2 2 1 3,2,2", "-4 3^3 1,2", "1 2^2 3 1,2", "4 3^3 2,1", "-1 2^2 3 2,1",
    "2 2 1,2 2,3", "-2 2 2,1 2,3", "-2 2 1,2 3,2", "2 2 2,1 3,2", "-12 1,2 1,1,3",
    "12 2,1 1,1,3", "12 1,2 1,3,1", "-12 2,1 1,3,1", "2 1,2 2,2,3", "-2 2,1 2,2,3",
    "-2 1,2 2,3,2", "2 2,1 2,3,2", "-12 1,2 3,1,1", "12 2,1 3,1,1", "2 1,2 3,2,2",
    "-2 2,1 3,2,2", "6 2 3 1^3", "4 2 3^3 1", "-1 2^3 3 1",
];

const C_TERMS: &[&str] = &[
    "-18 1^2 1,2", "18 1^2 2,1", "36 1 1,1,2", "-36 1 1,2,1", "36 1 2,1,1",
    "6 1 2,3,3", "-6 1 3,2,3", "6 1 3,3,2", "-3 2^2 1,2", "-3 3^2 1,2",
    "3 2^2 2,1", "3 3^2 2,1", "6 1,3 2,3", "-6 2,3 3,1", "-6 1,3 3,2",
    "6 3,1 3,2", "6 2 1,2,2", "-6 3 1,2,3", "6 3 1,3,2", "6 2 1,3,3",
    "-6 2 2,1,2", "6 3 2,1,3", "6 2 2,2,1", "-6 3 2,3,1", "-6 3 3,1,2",
    "-6 2 3,1,3", "6 3 3,2,1", "6 2 3,3,1", "-36 1,1,1,2", "36 1,1,2,1",
    "-36 1,2,1,1", "-6 1,2,2,2", "-6 1,2,3,3", "6 1,3,2,3", "-6 1,3,3,2",
    "36 2,1,1,1", "6 2,1,2,2", "6 2,1,3,3", "-6 2,2,1,2", "6 2,2,2,1",
    "-6 2,3,1,3", "6 2,3,3,1", "-6 3,1,2,3", "6 3,1,3,2", "6 3,2,1,3",
    "-6 3,2,3,1", "-6 3,3,1,2", "6 3,3,2,1", "6 2 1^3", "1 2^3 1",
];

/// The three word polynomials and the α₃ value they combine to.
#[derive(Debug, Clone)]
pub struct Alpha3Parts {
    pub a: BigComplex,
    pub b: BigComplex,
    pub c: BigComplex,
    pub alpha3: BigComplex,
}

fn eval_terms(terms: &[&str], table: &OmegaTable) -> Result<BigComplex> {
    let mut acc = BigComplex::zero(table.bits());
    for t in terms {
        let mut it = t.split_whitespace();
        let coef: i64 = it.next().and_then(|c| c.parse().ok()).ok_or_else(|| Error::Parse(t.to_string()))?;
        let mut prod = BigComplex::from_i64(table.bits(), coef);
        for f in it {
            let (w, p) = match f.split_once('^') {
                Some((w, p)) => (w, p.parse::<u32>().map_err(|_| Error::Parse(f.to_string()))?),
                None => (f, 1),
            };
            let w: Word = w.parse()?;
            prod = &prod * &table.get(&w)?.pow_u(p);
        }
        acc += &prod;
    }
    Ok(acc)
}

/// Number of (A, B, C) terms, for reporting.
pub fn term_counts() -> (usize, usize, usize) {
    (A_TERMS.len(), B_TERMS.len(), C_TERMS.len())
}

/// −i/(8π³)·A − 1/(32π²)·B + i/(96π)·C with A, B, C in fully expanded form.
pub fn raw(table: &OmegaTable) -> Result<Alpha3Parts> {
    let a = eval_terms(A_TERMS, table)?;
    let b = eval_terms(B_TERMS, table)?;
    let c = eval_terms(C_TERMS, table)?;
    let alpha3 = combine(&a, &b, &c);
    Ok(Alpha3Parts { a, b, c, alpha3 })
}

/// Same quantity after the shuffle simplifications.
pub fn simplified(table: &OmegaTable) -> Result<Alpha3Parts> {
    let o = |s: &str| -> Result<BigComplex> { Ok(table.get(&s.parse()?)?.clone()) };
    let two_o21 = o("2,1")?.scale_i64(2);
    let a = two_o21.pow_u(3);
    let inner = &(&o("2,2,3")?.scale_i64(-8) + &o("3,1,1")?.scale_i64(48)) + &o("3")?.pow_u(3).scale_i64(4);
    let b = &two_o21 * &inner;
    let mut c = o("2,1,1,1")?.scale_i64(288);
    c += &o("2,1,3,3")?.scale_i64(48);
    c += &o("2,2,2,1")?.scale_i64(48);
    c -= &o("3,1,2,3")?.scale_i64(48);
    c += &o("3,3,2,1")?.scale_i64(48);
    let alpha3 = combine(&a, &b, &c);
    Ok(Alpha3Parts { a, b, c, alpha3 })
}

fn combine(a: &BigComplex, b: &BigComplex, c: &BigComplex) -> BigComplex {
    let bits = a.prec();
    let p = pi(bits);
    let p2 = Float::with_val(bits, &p * &p);
    let p3 = Float::with_val(bits, &p2 * &p);
    let ka = Float::with_val(bits, 8 * p3).recip();
    let kb = Float::with_val(bits, 32 * p2).recip();
    let kc = Float::with_val(bits, 96 * p).recip();
    let mut out = -a.mul_i().scale(&ka);
    out -= &b.scale(&kb);
    out += &c.mul_i().scale(&kc);
    out
}
