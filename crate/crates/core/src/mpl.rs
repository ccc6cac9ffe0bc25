//! Multiple polylogarithms and alternating multiple zeta values.
//!
//! Summation convention: `Li_{n1..nd}(z1..zd) = Σ_{0<k1<…<kd} Π z_i^{k_i} / k_i^{n_i}`,
//! so the LAST index carries the largest summation variable. The other
//! common convention runs the indices the opposite way; mixing them up
//! silently reverses arguments.
//!
//! Evaluation goes through the hyperlogarithm `G(a1,…,aw; y)`, where `a1`
//! is the outermost integration, using Hölder convolution to move every
//! series into a region where it converges geometrically.

use std::str::FromStr;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{pi, pow10_neg, BigComplex, PrecisionConfig};
use crate::omega::{PunctureConfig, EPS};
use crate::words::Word;

#[derive(Debug, Clone)]
pub struct MplSpec {
    pub indices: Vec<u32>,
    pub args: Vec<BigComplex>,
}

impl MplSpec {
    pub fn new(indices: Vec<u32>, args: Vec<BigComplex>) -> Result<Self> {
        if indices.len() != args.len() || indices.is_empty() || indices.contains(&0) {
            return Err(Error::Parse(format!("indices {:?} do not match {} arguments", indices, args.len())));
        }
        Ok(MplSpec { indices, args })
    }

    pub fn depth(&self) -> usize {
        self.indices.len()
    }

    pub fn weight(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// Letters of the equivalent hyperlogarithm at 1 (sign `(-1)^depth` not included).
    fn g_letters(&self, bits: u32) -> Result<Vec<BigComplex>> {
        let d = self.depth();
        let one = Float::with_val(bits, 1);
        let slack = pow10_neg(bits, 6);
        let mut letters = Vec::new();
        let mut prod = BigComplex::one(bits);
        for i in (0..d).rev() {
            prod = &prod * &self.args[i].with_prec(bits);
            if prod.is_zero() {
                return Err(Error::NotConvergent("zero argument".into()));
            }
            if Float::with_val(bits, prod.abs() - &one) > slack {
                return Err(Error::NotConvergent(format!(
                    "|z_{}⋯z_{}| > 1",
                    i + 1,
                    d
                )));
            }
            for _ in 1..self.indices[i] {
                letters.push(BigComplex::zero(bits));
            }
            letters.push(prod.recip());
        }
        Ok(letters)
    }
}

#[derive(Debug, Clone)]
pub struct SignedMplSum {
    pub terms: Vec<(i64, MplSpec)>,
}

impl SignedMplSum {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, cfg: &PrecisionConfig) -> Result<BigComplex> {
        let vals = crate::par::map(&self.terms, |(k, s)| li(s, cfg).map(|v| v.scale_i64(*k)));
        let mut acc = BigComplex::zero(cfg.bits());
        for v in vals {
            acc += &v?;
        }
        Ok(acc)
    }
}

/// Multiple polylogarithm in the convention documented at module level.
pub fn li(spec: &MplSpec, cfg: &PrecisionConfig) -> Result<BigComplex> {
    let bits = cfg.bits() + 32;
    let d = spec.depth();
    let last = &spec.args[d - 1];
    if spec.indices[d - 1] == 1 && is_one(last, bits) {
        return Err(Error::Divergent(format!("Li_{:?} with z_d = 1", spec.indices)));
    }
    let letters = spec.g_letters(bits)?;
    let g = g_at_one(&letters, bits)?;
    let v = if d % 2 == 1 { -g } else { g };
    Ok(v.with_prec(cfg.bits()))
}

fn is_one(z: &BigComplex, bits: u32) -> bool {
    let one = BigComplex::one(bits);
    (z.with_prec(bits) - one).abs() < pow10_neg(bits, 20)
}

/// Letters come in at the caller's precision, 32 bits below `bits`, so the
/// snapping threshold sits well above their rounding error.
fn snap(a: &BigComplex, bits: u32) -> BigComplex {
    let tiny = pow10_neg(bits, (bits as f64 / 3.33) as u32 - 20);
    let one = BigComplex::one(bits);
    if a.abs() < tiny {
        BigComplex::zero(bits)
    } else if (a - &one).abs() < tiny {
        one
    } else {
        a.clone()
    }
}

/// `G(a1,…,aw; 1)` for a word with `a1 ≠ 1`, `aw ≠ 0`, and every nonzero
/// letter of modulus ≥ 1.
pub fn g_at_one(letters: &[BigComplex], bits: u32) -> Result<BigComplex> {
    let a: Vec<BigComplex> = letters.iter().map(|x| snap(x, bits)).collect();
    if a.is_empty() {
        return Ok(BigComplex::one(bits));
    }
    if a[a.len() - 1].is_zero() {
        return Err(Error::Divergent("hyperlogarithm with trailing zero letter".into()));
    }
    if a[0] == BigComplex::one(bits) {
        return Err(Error::Divergent("hyperlogarithm with leading letter 1".into()));
    }
    let m1 = min_modulus(a.iter());
    if m1 >= 2.0 {
        return g_series(&a, &BigComplex::one(bits), bits);
    }
    let one = BigComplex::one(bits);
    let shifted: Vec<BigComplex> = a.iter().map(|x| &one - x).collect();
    let m2 = min_modulus(shifted.iter());
    let qf = m1 / (m1 + m2);
    let q = BigComplex::from_real(Float::with_val(bits, qf));
    let q1 = &one - &q;
    let w = a.len();
    let mut acc = BigComplex::zero(bits);
    for k in 0..=w {
        let left: Vec<BigComplex> = shifted[..k].iter().rev().cloned().collect();
        let l = g_series(&left, &q1, bits)?;
        let r = g_series(&a[k..], &q, bits)?;
        let t = &l * &r;
        if k % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    Ok(acc)
}

fn min_modulus<'a>(it: impl Iterator<Item = &'a BigComplex>) -> f64 {
    it.filter(|x| !x.is_zero()).map(|x| x.abs().to_f64()).fold(f64::INFINITY, f64::min)
}

/// Series for `G(a; y)` valid when |y| < |c| for every nonzero letter c.
pub fn g_series(a: &[BigComplex], y: &BigComplex, bits: u32) -> Result<BigComplex> {
    if a.is_empty() {
        return Ok(BigComplex::one(bits));
    }
    if a[a.len() - 1].is_zero() {
        return Err(Error::Divergent("hyperlogarithm with trailing zero letter".into()));
    }
    if y.is_zero() {
        return Ok(BigComplex::zero(bits));
    }
    // group into 0^{m-1} c
    let mut groups: Vec<(u32, BigComplex)> = Vec::new();
    let mut m = 1;
    for x in a {
        if x.is_zero() {
            m += 1;
        } else {
            groups.push((m, x.clone()));
            m = 1;
        }
    }
    let ratio = y.abs().to_f64() / min_modulus(a.iter());
    if !(ratio < 1.0) {
        return Err(Error::NotConvergent(format!("series ratio {}", ratio)));
    }
    let k = groups.len();
    // x_1 = y/c_1, x_j = c_{j-1}/c_j
    let mut xs = Vec::with_capacity(k);
    xs.push(y / &groups[0].1);
    for j in 1..k {
        xs.push(&groups[j - 1].1 / &groups[j].1);
    }
    let digits = bits as f64 / 3.3219;
    let n_terms = ((digits + 3.0) * std::f64::consts::LN_10 / -ratio.ln()).ceil() as usize + 8 * k + 4;
    let weights: Vec<u32> = groups.iter().map(|g| g.0).collect();
    let v = nested_sum(&xs, &weights, n_terms, bits);
    Ok(if k % 2 == 1 { -v } else { v })
}

/// `Σ_{n1>…>nk>0} Π x_j^{n_j} / n_j^{m_j}` truncated at n1 < n_terms.
fn nested_sum(xs: &[BigComplex], ms: &[u32], n_terms: usize, bits: u32) -> BigComplex {
    let k = xs.len();
    // p[j] = Σ over n_j < n of the tail product from j on; p[k] = 1.
    let mut p: Vec<BigComplex> = (0..k).map(|_| BigComplex::zero(bits)).collect();
    p.push(BigComplex::one(bits));
    let mut pw: Vec<BigComplex> = xs.to_vec();
    let mut scratch = Float::new(bits);
    for n in 1..n_terms {
        let nf = Float::with_val(bits, n);
        for j in 0..k {
            let mut t = pw[j].clone();
            for _ in 0..ms[j] {
                t.re /= &nf;
                t.im /= &nf;
            }
            let (head, tail) = p.split_at_mut(j + 1);
            head[j].add_mul(&t, &tail[0], &mut scratch);
        }
        for j in 0..k {
            pw[j] = &pw[j] * &xs[j];
        }
    }
    p.swap_remove(0)
}

/// The 4^n-term expansion of `Ω_w(1)` as depth-n polylogarithms `Li_{1,…,1}`.
pub fn omega_to_mpl(w: &Word, punct: &PunctureConfig) -> Result<SignedMplSum> {
    let n = w.len();
    if n == 0 {
        return Err(Error::BadWord("empty word has no polylogarithm expansion".into()));
    }
    let mut terms = Vec::with_capacity(4usize.pow(n as u32));
    for code in 0..4usize.pow(n as u32) {
        let mut js = vec![0usize; n];
        let mut c = code;
        for m in (0..n).rev() {
            js[m] = c % 4;
            c /= 4;
        }
        let mut coef: i64 = if n % 2 == 0 { 1 } else { -1 };
        for m in 0..n {
            coef *= EPS[(w.0[m] - 1) as usize][js[m]];
        }
        let p = &punct.p;
        let mut args = Vec::with_capacity(n);
        for m in 0..n - 1 {
            args.push(&p[js[m + 1]] / &p[js[m]]);
        }
        args.push(p[js[n - 1]].recip());
        terms.push((coef, MplSpec::new(vec![1; n], args)?));
    }
    Ok(SignedMplSum { terms })
}

/// Alternating multiple zeta value `ζ(n1,…,nd)` with sign twists `ε_i`.
pub fn zeta_signed(indices: &[u32], signs: &[i8], cfg: &PrecisionConfig) -> Result<BigComplex> {
    if indices.len() != signs.len() || indices.is_empty() {
        return Err(Error::Parse("indices and signs differ in length".into()));
    }
    let d = indices.len();
    if indices[d - 1] == 1 && signs[d - 1] > 0 {
        return Err(Error::Divergent(format!("ζ{:?} with last index 1 unsigned", indices)));
    }
    let b = cfg.bits();
    let args = signs.iter().map(|&s| BigComplex::from_i64(b, if s < 0 { -1 } else { 1 })).collect();
    li(&MplSpec::new(indices.to_vec(), args)?, cfg)
}

/// Parse one argument: `1`, `-1`, `I`, `-I`, `e(q)` for e^{iπq} with
/// rational q, or a decimal pair `re:im`.
pub fn parse_arg(s: &str, bits: u32) -> Result<BigComplex> {
    let t = s.trim();
    let bad = || Error::Parse(s.to_string());
    match t {
        "1" => return Ok(BigComplex::one(bits)),
        "-1" => return Ok(BigComplex::from_i64(bits, -1)),
        "I" | "i" => return Ok(BigComplex::i(bits)),
        "-I" | "-i" => return Ok(-BigComplex::i(bits)),
        _ => {}
    }
    if let Some(q) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
        let q = Rational::from_str(q.trim()).map_err(|_| bad())?;
        let theta = pi(bits) * Float::with_val(bits, &q);
        return Ok(BigComplex::cis(&theta));
    }
    if let Some((re, im)) = t.split_once(':') {
        return BigComplex::parse(bits, re, im);
    }
    BigComplex::parse(bits, t, "0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{agreeing_digits, log2};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(40).unwrap()
    }

    fn li1(n: u32, z: BigComplex) -> BigComplex {
        li(&MplSpec::new(vec![n], vec![z]).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn classical_values() {
        let b = cfg().bits();
        let pi2 = Float::with_val(b, pi(b).square_ref());
        let z2 = BigComplex::from_real(Float::with_val(b, &pi2 / 6));
        assert!(agreeing_digits(&li1(2, BigComplex::one(b)), &z2) > 40.0);
        let m = BigComplex::from_real(Float::with_val(b, &pi2 / 12) * -1i32);
        assert!(agreeing_digits(&li1(2, BigComplex::from_i64(b, -1)), &m) > 40.0);
        let l2 = BigComplex::from_real(log2(b));
        assert!(agreeing_digits(&li1(1, BigComplex::from_ratio(b, 1, 2)), &l2) > 40.0);
        // the series gives Li1(-1) = -log 2
        assert!(agreeing_digits(&li1(1, BigComplex::from_i64(b, -1)), &-l2) > 40.0);
    }

    #[test]
    fn divergence_rejected() {
        let b = cfg().bits();
        assert!(li(&MplSpec::new(vec![1], vec![BigComplex::one(b)]).unwrap(), &cfg()).is_err());
        assert!(li(&MplSpec::new(vec![2], vec![BigComplex::from_i64(b, 2)]).unwrap(), &cfg()).is_err());
        assert!(zeta_signed(&[2, 1], &[1, 1], &cfg()).is_err());
    }

    #[test]
    fn arg_parsing() {
        let b = 128;
        assert_eq!(parse_arg("-1", b).unwrap(), BigComplex::from_i64(b, -1));
        let e = parse_arg("e(1/2)", b).unwrap();
        assert!((e - BigComplex::i(b)).abs() < 1e-35);
        assert!(parse_arg("0.5:0.25", b).is_ok());
        assert!(parse_arg("e(x)", b).is_err());
    }
}
