//! Iterated integrals `Ω_w(z)` of the three forms along straight paths.
//!
//! `Ω_{i1..in}(z) = ∫_0^z Ω_{i1..i(n-1)} ω_{in}`, so the first letter is the
//! innermost integration. Values for all words up to a given length are
//! produced together by power-series transport on short segments whose
//! results are glued with Chen's composition rule.

pub mod cache;

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{Angle, BigComplex, PrecisionConfig};
use crate::par::{self, Parallelism};
use crate::words::{layer_offset, Word};

/// Residue pattern of ω_a, ω_b, ω_c at p1..p4.
pub const EPS: [[i64; 4]; 3] = [[1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];

/// Largest word length a table may hold.
pub const MAX_LENGTH: usize = 10;

/// Segment half-length over distance to the nearest puncture.
const SEGMENT_RATIO: f64 = 0.2;

#[derive(Debug, Clone)]
pub struct PunctureConfig {
    pub phi: Angle,
    pub phi_value: Float,
    /// p1 = e^{iφ}, p2 = −e^{−iφ}, p3 = −p1, p4 = −p2.
    pub p: [BigComplex; 4],
}

impl PunctureConfig {
    pub fn new(phi: &Angle, bits: u32) -> Result<Self> {
        phi.check_open_quadrant()?;
        let v = phi.eval(bits);
        let p1 = BigComplex::cis(&v);
        let p2 = -p1.conj();
        let p3 = -p1.clone();
        let p4 = -p2.clone();
        Ok(PunctureConfig { phi: phi.clone(), phi_value: v, p: [p1, p2, p3, p4] })
    }

    pub fn bits(&self) -> u32 {
        self.phi_value.prec()
    }

    /// ω_i(z) = Σ_k ε_ik / (z − p_k), i in 1..=3.
    pub fn form(&self, i: u8, z: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero(self.bits());
        for k in 0..4 {
            let r = (z - &self.p[k]).recip();
            if EPS[(i - 1) as usize][k] > 0 {
                acc += &r;
            } else {
                acc -= &r;
            }
        }
        acc
    }

    fn approx(&self) -> [(f64, f64); 4] {
        let mut out = [(0.0, 0.0); 4];
        for k in 0..4 {
            out[k] = (self.p[k].re.to_f64(), self.p[k].im.to_f64());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    One,
    I,
}

impl Endpoint {
    pub fn value(self, bits: u32) -> BigComplex {
        match self {
            Endpoint::One => BigComplex::one(bits),
            Endpoint::I => BigComplex::i(bits),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::One => "1",
            Endpoint::I => "i",
        })
    }
}

impl FromStr for Endpoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Endpoint::One),
            "i" | "I" => Ok(Endpoint::I),
            other => Err(Error::Parse(format!("endpoint `{}` (expected 1 or i)", other))),
        }
    }
}

/// All `Ω_w` with `|w| ≤ max_length` along the straight path `start → end`.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    pub phi: Angle,
    pub cfg: PrecisionConfig,
    pub max_length: usize,
    pub start: BigComplex,
    pub end: BigComplex,
    values: Vec<BigComplex>,
}

impl OmegaTable {
    pub(crate) fn from_values(
        phi: Angle,
        cfg: PrecisionConfig,
        start: BigComplex,
        end: BigComplex,
        values: Vec<BigComplex>,
    ) -> Self {
        let mut l = 0;
        while layer_offset(l + 1) < values.len() {
            l += 1;
        }
        assert_eq!(layer_offset(l + 1), values.len(), "value count must fill whole layers");
        OmegaTable { phi, cfg, max_length: l, start, end, values }
    }

    pub fn get(&self, w: &Word) -> Result<&BigComplex> {
        if w.len() > self.max_length {
            return Err(Error::TableTooShallow { have: self.max_length, need: w.len() });
        }
        Ok(&self.values[w.index()])
    }

    /// Value by dense index (see [`Word::index`]).
    pub fn at(&self, index: usize) -> &BigComplex {
        &self.values[index]
    }

    pub fn values(&self) -> &[BigComplex] {
        &self.values
    }

    pub fn bits(&self) -> u32 {
        self.cfg.bits()
    }

    pub fn endpoint(&self) -> Option<Endpoint> {
        if !self.start.is_zero() {
            return None;
        }
        let b = self.bits();
        [Endpoint::One, Endpoint::I].into_iter().find(|e| e.value(b) == self.end)
    }

    /// Iterator over (word, value) for every stored word, by length.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &BigComplex)> {
        self.values.iter().enumerate().map(|(i, v)| (Word::from_index(i), v))
    }
}

pub fn build_table(endpoint: Endpoint, phi: &Angle, max_length: usize, cfg: &PrecisionConfig) -> Result<OmegaTable> {
    build_table_with(endpoint, phi, max_length, cfg, Parallelism::Auto)
}

pub fn build_table_with(
    endpoint: Endpoint,
    phi: &Angle,
    max_length: usize,
    cfg: &PrecisionConfig,
    mode: Parallelism,
) -> Result<OmegaTable> {
    let bits = cfg.bits();
    build_path(&BigComplex::zero(bits), &endpoint.value(bits), phi, max_length, cfg, mode)
}

/// Transport along the straight path `start → end`, subdividing as needed.
pub fn build_path(
    start: &BigComplex,
    end: &BigComplex,
    phi: &Angle,
    max_length: usize,
    cfg: &PrecisionConfig,
    mode: Parallelism,
) -> Result<OmegaTable> {
    if max_length == 0 {
        return Err(Error::Parse("max word length must be at least 1".into()));
    }
    if max_length > MAX_LENGTH {
        return Err(Error::TableTooLarge(max_length));
    }
    let bits = cfg.bits();
    let punct = PunctureConfig::new(phi, bits)?;
    let breaks = subdivide(start, end, &punct)?;
    let dir = end - start;
    let point = |x: f64| start + &dir.scale(&Float::with_val(bits, x));
    let mut table: Option<OmegaTable> = None;
    for win in breaks.windows(2) {
        let (z0, z1) = (point(win[0]), point(win[1]));
        let values = transport_segment(&z0, &z1, &punct, max_length, cfg, mode);
        let seg = OmegaTable::from_values(phi.clone(), *cfg, z0, z1, values);
        table = Some(match table {
            None => seg,
            Some(left) => chen_compose(&left, &seg)?,
        });
    }
    let mut t = table.expect("at least one segment");
    t.start = start.clone();
    t.end = end.clone();
    Ok(t)
}

/// Breakpoints in [0,1] along the path; every piece has half-length at
/// most `SEGMENT_RATIO` times the distance from its midpoint to the
/// nearest puncture.
fn subdivide(start: &BigComplex, end: &BigComplex, punct: &PunctureConfig) -> Result<Vec<f64>> {
    let s = (start.re.to_f64(), start.im.to_f64());
    let e = (end.re.to_f64(), end.im.to_f64());
    let poles = punct.approx();
    let len = ((e.0 - s.0).powi(2) + (e.1 - s.1).powi(2)).sqrt();
    let dist = |x: f64| {
        let z = (s.0 + x * (e.0 - s.0), s.1 + x * (e.1 - s.1));
        poles.iter().map(|p| ((z.0 - p.0).powi(2) + (z.1 - p.1).powi(2)).sqrt()).fold(f64::INFINITY, f64::min)
    };
    let mut out = vec![0.0];
    let mut x = 0.0;
    while x < 1.0 {
        let r = dist(x);
        if r < 1e-6 {
            return Err(Error::AngleOutOfRange(format!("{} (path passes through a puncture)", punct.phi)));
        }
        let h = 2.0 * SEGMENT_RATIO * r / (1.0 + SEGMENT_RATIO) / len;
        x = if x + h >= 1.0 { 1.0 } else { x + h };
        out.push(x);
        if out.len() > 10_000 {
            return Err(Error::AngleOutOfRange(punct.phi.to_string()));
        }
    }
    Ok(out)
}

/// Taylor data of the three forms on one segment in the local variable
/// s ∈ [−1, 1], z = mid + s·half.
struct SegmentForms {
    /// coefficients of s^j in half·ω_i(mid + s·half), j < t
    coef: Vec<Vec<BigComplex>>,
    /// F[i][a] = ∫_{-1}^{1} s^a f_i(s) ds, truncated consistently
    moment: Vec<Vec<BigComplex>>,
    /// 1/(j+1)
    inv: Vec<Float>,
    t: usize,
}

fn segment_forms(z0: &BigComplex, z1: &BigComplex, punct: &PunctureConfig, cfg: &PrecisionConfig) -> SegmentForms {
    let bits = cfg.bits();
    let two = Float::with_val(bits, 2);
    let mid = (z0 + z1).scale(&Float::with_val(bits, 0.5));
    let half = (z1 - z0).scale(&Float::with_val(bits, 0.5));
    let u: Vec<BigComplex> = punct.p.iter().map(|p| &half / &(&mid - p)).collect();
    let rho = u.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
    let need = cfg.working_digits() as f64 + 4.0;
    let t = (need / -rho.log10()).ceil() as usize + 2;
    let mut coef = vec![vec![BigComplex::zero(bits); t]; 3];
    let mut pw: Vec<BigComplex> = u.clone();
    for j in 0..t {
        for (k, pk) in pw.iter().enumerate() {
            let term = if j % 2 == 0 { pk.clone() } else { -pk };
            for i in 0..3 {
                if EPS[i][k] > 0 {
                    coef[i][j] += &term;
                } else {
                    coef[i][j] -= &term;
                }
            }
        }
        for k in 0..4 {
            pw[k] = &pw[k] * &u[k];
        }
    }
    let inv: Vec<Float> = (0..=t).map(|j| Float::with_val(bits, 1) / Float::with_val(bits, j + 1)).collect();
    let mut moment = vec![vec![BigComplex::zero(bits); t]; 3];
    for i in 0..3 {
        for a in 0..t {
            let mut acc = BigComplex::zero(bits);
            for b in 0..t - a {
                if (a + b) % 2 == 0 {
                    acc += &coef[i][b].scale(&inv[a + b]);
                }
            }
            moment[i][a] = acc.scale(&two);
        }
    }
    SegmentForms { coef, moment, inv, t }
}

/// Dense values of all words up to `max_length` on one short segment.
fn transport_segment(
    z0: &BigComplex,
    z1: &BigComplex,
    punct: &PunctureConfig,
    max_length: usize,
    cfg: &PrecisionConfig,
    mode: Parallelism,
) -> Vec<BigComplex> {
    let bits = cfg.bits();
    let sf = segment_forms(z0, z1, punct, cfg);
    let t = sf.t;
    let mut values = vec![BigComplex::zero(bits); layer_offset(max_length + 1)];
    values[0] = BigComplex::one(bits);
    let mut unit = vec![BigComplex::zero(bits); t];
    unit[0] = BigComplex::one(bits);
    let mut layer: Vec<Vec<BigComplex>> = vec![unit];
    for len in 1..=max_length {
        let last = len == max_length;
        let prev = &layer;
        let children = par::map_range(mode, prev.len(), |p| {
            let mut scratch = Float::new(bits);
            let mut out = Vec::with_capacity(3);
            for i in 0..3 {
                if last {
                    let mut v = BigComplex::zero(bits);
                    for (a, la) in prev[p].iter().enumerate() {
                        v.add_mul(la, &sf.moment[i][a], &mut scratch);
                    }
                    out.push((v, Vec::new()));
                } else {
                    let poly = integrate_product(&prev[p], &sf.coef[i], &sf.inv, bits, &mut scratch);
                    let mut v = BigComplex::zero(bits);
                    for c in &poly {
                        v += c;
                    }
                    out.push((v, poly));
                }
            }
            out
        });
        let off = layer_offset(len);
        let mut next = Vec::with_capacity(if last { 0 } else { prev.len() * 3 });
        for (p, trio) in children.into_iter().enumerate() {
            for (i, (v, poly)) in trio.into_iter().enumerate() {
                values[off + 3 * p + i] = v;
                if !last {
                    next.push(poly);
                }
            }
        }
        layer = next;
    }
    values
}

/// ∫_{-1}^{s} L(σ) f(σ) dσ as a polynomial of degree < t.
fn integrate_product(l: &[BigComplex], f: &[BigComplex], inv: &[Float], bits: u32, scratch: &mut Float) -> Vec<BigComplex> {
    let t = l.len();
    let mut prod = vec![BigComplex::zero(bits); t - 1];
    for (a, la) in l.iter().enumerate() {
        if la.is_zero() {
            continue;
        }
        for (b, fb) in f.iter().take(t - 1 - a).enumerate() {
            prod[a + b].add_mul(la, fb, scratch);
        }
    }
    let mut q = Vec::with_capacity(t);
    q.push(BigComplex::zero(bits));
    let mut c0 = BigComplex::zero(bits);
    for (j, pj) in prod.into_iter().enumerate() {
        let v = pj.scale(&inv[j]);
        if j % 2 == 0 {
            c0 += &v;
        } else {
            c0 -= &v;
        }
        q.push(v);
    }
    q[0] = c0;
    q
}

/// Chen composition: tables for α and β give the table for α followed by β.
pub fn chen_compose(left: &OmegaTable, right: &OmegaTable) -> Result<OmegaTable> {
    if left.cfg != right.cfg {
        return Err(Error::Incompatible("precision differs".into()));
    }
    if left.phi != right.phi {
        return Err(Error::Incompatible(format!("φ {} vs {}", left.phi, right.phi)));
    }
    let tol = left.cfg.tol(0);
    if (&left.end - &right.start).abs() > tol {
        return Err(Error::Incompatible("left path does not end where right path starts".into()));
    }
    let l = left.max_length.min(right.max_length);
    let bits = left.bits();
    let mut values = Vec::with_capacity(layer_offset(l + 1));
    let mut scratch = Float::new(bits);
    for idx in 0..layer_offset(l + 1) {
        let w = Word::from_index(idx);
        let mut v = BigComplex::zero(bits);
        for k in 0..=w.len() {
            let a = Word(w.0[..k].to_vec()).index();
            let b = Word(w.0[k..].to_vec()).index();
            v.add_mul(&left.values[a], &right.values[b], &mut scratch);
        }
        values.push(v);
    }
    Ok(OmegaTable::from_values(left.phi.clone(), left.cfg, left.start.clone(), right.end.clone(), values))
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize, bits: u32) -> Vec<(Float, Float)> {
    let work = bits + 32;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let guess = (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(work, guess);
        let mut dp = Float::new(work);
        for _ in 0..100 {
            let (p, d) = legendre(n, &x);
            let step = Float::with_val(work, &p / &d);
            x -= &step;
            dp = d;
            if step.is_zero() || step.get_exp().map_or(true, |e| e < -(work as i32)) {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        let one_minus = Float::with_val(work, 1 - Float::with_val(work, x.square_ref()));
        let w = Float::with_val(work, 2) / (one_minus * Float::with_val(work, dp.square_ref()));
        out.push((Float::with_val(bits, &x), Float::with_val(bits, &w)));
    }
    out
}

fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let b = x.prec();
    let mut p0 = Float::with_val(b, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let t = Float::with_val(b, (2 * k - 1) as u32) * x * &p1;
        let p2 = (t - Float::with_val(b, (k - 1) as u32) * &p0) / Float::with_val(b, k as u32);
        p0 = p1;
        p1 = p2;
    }
    let x2m1 = Float::with_val(b, x.square_ref()) - 1u32;
    let d = Float::with_val(b, n as u32) * (Float::with_val(b, x * &p1) - &p0) / x2m1;
    (p1, d)
}

/// Independent check of the transport: nested composite Gauss–Legendre
/// quadrature of the iterated integral along the straight path 0 → endpoint.
pub fn quadrature_oracle(w: &Word, endpoint: Endpoint, phi: &Angle, cfg: &PrecisionConfig) -> Result<BigComplex> {
    if w.len() > 3 {
        return Err(Error::WordTooLong(w.len()));
    }
    let bits = cfg.bits();
    let punct = PunctureConfig::new(phi, bits)?;
    if w.is_empty() {
        return Ok(BigComplex::one(bits));
    }
    let sf = punct.phi_value.to_f64().sin().min(punct.phi_value.to_f64().cos());
    let panels = ((4.0 / sf).ceil() as usize).max(8);
    let n = (cfg.target_digits as usize * 2) / 5 + 6;
    let rule = gauss_legendre(n, bits);
    let e = endpoint.value(bits);
    nested(&w.0, &Float::with_val(bits, 1), &e, &punct, &rule, panels)
}

fn nested(
    letters: &[u8],
    upper: &Float,
    e: &BigComplex,
    punct: &PunctureConfig,
    rule: &[(Float, Float)],
    panels: usize,
) -> Result<BigComplex> {
    let bits = punct.bits();
    let (last, inner) = letters.split_last().expect("nonempty");
    let width = Float::with_val(bits, upper / panels as u32);
    let half = Float::with_val(bits, &width / 2u32);
    let mut acc = BigComplex::zero(bits);
    for k in 0..panels {
        let center = Float::with_val(bits, &width * k as u32) + &half;
        for (x, wt) in rule {
            let t = Float::with_val(bits, x * &half) + &center;
            let z = e.scale(&t);
            let mut f = punct.form(*last, &z);
            if !inner.is_empty() {
                f = &f * &nested(inner, &t, e, punct, rule, panels)?;
            }
            acc += &f.scale(&Float::with_val(bits, wt * &half));
        }
    }
    Ok(&acc * e)
}
