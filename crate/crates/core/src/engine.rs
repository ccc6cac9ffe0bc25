//! Order-by-order Taylor expansion in t of the potential coefficients
//! a, b, c, r at φ = π/4, and the resulting area series.
//!
//! Everything is stored as Taylor coefficients (`X_k = X^{(k)}/k!`), so the
//! factorials of the derivative formulation never appear. The frame
//! `Φ(t) = Σ_w t^{|w|} Π_j Y_{w_j}(t) 𝔪_w Ω_w` with `Y_i = r·x_i` is
//! assembled by letter multiset: the scalar prefactor only depends on how
//! often each letter occurs, so the Ω values are pre-summed per multiset.

pub mod alpha3;

use std::collections::BTreeMap;

use rug::Float;
use serde_json::json;

use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix2, LaurentPoly, Part};
use crate::numerics::{fmt_float, pi, roundtrip_digits, Angle, BigComplex, PrecisionConfig};
use crate::omega::{self, Endpoint, OmegaTable};
use crate::par::{self, Parallelism};
use crate::words::Word;

/// Gaussian integer 2×2 matrix.
type GMat = [[(i64, i64); 2]; 2];

fn letter_matrix(l: u8) -> GMat {
    match l {
        1 => [[(0, 1), (0, 0)], [(0, 0), (0, -1)]],
        2 => [[(0, 0), (1, 0)], [(1, 0), (0, 0)]],
        _ => [[(0, 0), (0, 1)], [(0, -1), (0, 0)]],
    }
}

fn gmul(a: &GMat, b: &GMat) -> GMat {
    let mut out = [[(0i64, 0i64); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let (x, y) = a[i][k];
                let (u, v) = b[k][j];
                out[i][j].0 += x * u - y * v;
                out[i][j].1 += x * v + y * u;
            }
        }
    }
    out
}

/// `𝔪_w = 𝔪_{i1}⋯𝔪_{in}`.
pub fn word_matrix(w: &Word) -> GMat {
    let mut m = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    for &l in w.letters() {
        m = gmul(&m, &letter_matrix(l));
    }
    m
}

fn gscale(z: &BigComplex, g: (i64, i64)) -> BigComplex {
    let mut out = z.scale_i64(g.0);
    if g.1 != 0 {
        out += &z.mul_i().scale_i64(g.1);
    }
    out
}

/// Letter counts of a word.
type Counts = [usize; 3];

fn multisets(len: usize) -> Vec<Counts> {
    let mut out = Vec::new();
    for e1 in 0..=len {
        for e2 in 0..=len - e1 {
            out.push([e1, e2, len - e1 - e2]);
        }
    }
    out
}

fn words_with_counts(e: Counts, buf: &mut Vec<u8>, out: &mut Vec<Word>) {
    if e == [0, 0, 0] {
        out.push(Word(buf.clone()));
        return;
    }
    for l in 0..3 {
        if e[l] > 0 {
            let mut f = e;
            f[l] -= 1;
            buf.push(l as u8 + 1);
            words_with_counts(f, buf, out);
            buf.pop();
        }
    }
}

/// `S_e = Σ_{w has counts e} 𝔪_w Ω_w` for every multiset up to the table depth.
#[derive(Debug, Clone)]
pub struct MultisetSums {
    pub max_length: usize,
    sums: BTreeMap<Counts, [[BigComplex; 2]; 2]>,
}

impl MultisetSums {
    pub fn new(table: &OmegaTable, mode: Parallelism) -> Result<Self> {
        let bits = table.bits();
        let all: Vec<Counts> = (1..=table.max_length).flat_map(multisets).collect();
        let sums = par::map_with(mode, &all, |&e| -> Result<[[BigComplex; 2]; 2]> {
            let mut words = Vec::new();
            words_with_counts(e, &mut Vec::new(), &mut words);
            let z = BigComplex::zero(bits);
            let mut s = [[z.clone(), z.clone()], [z.clone(), z]];
            for w in &words {
                let m = word_matrix(w);
                let v = table.get(w)?;
                for i in 0..2 {
                    for j in 0..2 {
                        if m[i][j] != (0, 0) {
                            s[i][j] += &gscale(v, m[i][j]);
                        }
                    }
                }
            }
            Ok(s)
        });
        let mut map = BTreeMap::new();
        for (e, s) in all.into_iter().zip(sums) {
            map.insert(e, s?);
        }
        Ok(MultisetSums { max_length: table.max_length, sums: map })
    }

    pub fn get(&self, e: &Counts) -> &[[BigComplex; 2]; 2] {
        &self.sums[e]
    }
}

/// Taylor coefficients of a, b, c, r in t, each a Laurent polynomial in λ.
#[derive(Debug, Clone)]
pub struct DerivativeState {
    pub phi: Angle,
    pub bits: u32,
    pub a: Vec<LaurentPoly>,
    pub b: Vec<LaurentPoly>,
    pub c: Vec<LaurentPoly>,
    pub r: Vec<Float>,
    /// Sym point angle; constant π/2 on the symmetric line.
    pub theta: Float,
}

impl DerivativeState {
    /// Order 0: ā = ½(λ⁻¹−λ), b̄ = −½sinφ(λ⁻¹+λ), c̄ = −½cosφ(λ⁻¹+λ), r̄ = 1.
    pub fn central(phi: &Angle, bits: u32) -> Result<Self> {
        phi.check_open_quadrant()?;
        let v = phi.eval(bits);
        let (s, c) = v.sin_cos(Float::new(bits));
        let half = |x: Float| BigComplex::from_real(x / 2u32);
        let one = Float::with_val(bits, 1);
        let a = LaurentPoly::from_terms(bits, [(-1, half(one.clone())), (1, -half(one.clone()))]);
        let b = LaurentPoly::from_terms(bits, [(-1, -half(s.clone())), (1, -half(s))]);
        let c = LaurentPoly::from_terms(bits, [(-1, -half(c.clone())), (1, -half(c))]);
        let theta = Float::with_val(bits, pi(bits) / 2u32);
        Ok(DerivativeState { phi: phi.clone(), bits, a: vec![a], b: vec![b], c: vec![c], r: vec![one], theta })
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    fn x(&self, i: usize) -> &[LaurentPoly] {
        match i {
            0 => &self.a,
            1 => &self.b,
            _ => &self.c,
        }
    }

    /// Taylor coefficients of `Y_i = r·x_i` through `t^upto`; missing orders count as zero.
    fn y_series(&self, upto: usize) -> [Vec<LaurentPoly>; 3] {
        let make = |i: usize| {
            let x = self.x(i);
            (0..=upto)
                .map(|k| {
                    let mut acc = LaurentPoly::zero(self.bits);
                    for j in 0..=k.min(self.r.len() - 1) {
                        if self.r[j].is_zero() || k - j >= x.len() {
                            continue;
                        }
                        acc = &acc + &x[k - j].scale_real(&self.r[j]);
                    }
                    acc
                })
                .collect()
        };
        [make(0), make(1), make(2)]
    }
}

fn series_mul(a: &[LaurentPoly], b: &[LaurentPoly], upto: usize, bits: u32) -> Vec<LaurentPoly> {
    (0..=upto)
        .map(|k| {
            let mut acc = LaurentPoly::zero(bits);
            for i in 0..=k {
                if i < a.len() && k - i < b.len() && !a[i].is_zero() && !b[k - i].is_zero() {
                    acc = &acc + &(&a[i] * &b[k - i]);
                }
            }
            acc
        })
        .collect()
}

fn series_one(bits: u32) -> Vec<LaurentPoly> {
    vec![LaurentPoly::constant(BigComplex::one(bits))]
}

/// Frame Taylor coefficients `𝒫_m = Φ_m(1)`, with `𝒫_0 = I`.
#[derive(Debug, Clone)]
pub struct FrameDerivatives {
    pub p: Vec<LaurentMatrix2>,
}

/// `𝒫_m` from the current state: Σ_ℓ Σ_{|e|=ℓ} [t^{m−ℓ}] Y₁^{e₁}Y₂^{e₂}Y₃^{e₃} · S_e.
/// Only Taylor orders below m of the state enter.
pub fn frame_coefficient(
    m: usize,
    state: &DerivativeState,
    sums: &MultisetSums,
    mode: Parallelism,
) -> Result<LaurentMatrix2> {
    if m > sums.max_length {
        return Err(Error::TableTooShallow { have: sums.max_length, need: m });
    }
    let bits = state.bits;
    if m == 0 {
        return Ok(LaurentMatrix2::identity(bits));
    }
    let upto = m - 1;
    let y = state.y_series(upto);
    let mut pows: Vec<Vec<Vec<LaurentPoly>>> = Vec::with_capacity(3);
    for yi in &y {
        let mut v = vec![series_one(bits)];
        for k in 1..=m {
            let next = series_mul(&v[k - 1], yi, upto, bits);
            v.push(next);
        }
        pows.push(v);
    }
    let all: Vec<Counts> = (1..=m).flat_map(multisets).collect();
    let parts = par::map_with(mode, &all, |e| {
        let l = e[0] + e[1] + e[2];
        let d = m - l;
        let t12 = series_mul(&pows[0][e[0]], &pows[1][e[1]], d, bits);
        let mut coeff = LaurentPoly::zero(bits);
        for i in 0..=d {
            if i < t12.len() && d - i < pows[2][e[2]].len() {
                let (u, v) = (&t12[i], &pows[2][e[2]][d - i]);
                if !u.is_zero() && !v.is_zero() {
                    coeff = &coeff + &(u * v);
                }
            }
        }
        let s = sums.get(e);
        let mut out = LaurentMatrix2::zero(bits);
        if !coeff.is_zero() {
            for i in 0..2 {
                for j in 0..2 {
                    if !s[i][j].is_zero() {
                        out.e[i][j] = coeff.scale(&s[i][j]);
                    }
                }
            }
        }
        out
    });
    let mut total = LaurentMatrix2::zero(bits);
    for p in &parts {
        total = total.add(p)?;
    }
    Ok(total)
}

/// `𝔭_m = Σ_k (𝒫₁₁,k 𝒫₂₁,m−k − 𝒫₁₂,k 𝒫₂₂,m−k)` from frames `𝒫_0..𝒫_m`.
pub fn p_coefficient(m: usize, frames: &[LaurentMatrix2]) -> Result<LaurentPoly> {
    let bits = frames[0].bits();
    let mut acc = LaurentPoly::zero(bits);
    for k in 0..=m {
        let (u, v) = (&frames[k], &frames[m - k]);
        acc = acc.checked_add(&u.e[0][0].checked_mul(&v.e[1][0])?)?;
        acc = acc.checked_sub(&u.e[0][1].checked_mul(&v.e[1][1])?)?;
    }
    Ok(acc)
}

/// `c_n` from `𝔭_lower = 𝔭_{n+1} − 2π c_n − 2π r_n c̄`, using that `𝔭` is
/// star-symmetric and vanishes at λ = i.
pub fn extract_c(p_lower: &LaurentPoly) -> Result<LaurentPoly> {
    let bits = p_lower.bits();
    let inv2pi = Float::with_val(bits, 2 * pi(bits)).recip();
    let plus = p_lower
        .project(Part::Minus)
        .star()
        .checked_sub(&p_lower.project(Part::Plus))?
        .scale_real(&inv2pi);
    let i = BigComplex::i(bits);
    let c0 = -&(&plus.eval(&i)? + &p_lower.eval(&i)?.scale(&inv2pi));
    plus.checked_add(&LaurentPoly::constant(c0))
}

/// `K_n = [t^n](Y₁² − Y₂² − Y₃²)` of the given state.
fn k_coefficient(n: usize, state: &DerivativeState) -> Result<LaurentPoly> {
    let bits = state.bits;
    let y = state.y_series(n);
    let mut acc = LaurentPoly::zero(bits);
    for (idx, sign) in [(0usize, 1i64), (1, -1), (2, -1)] {
        let sq = series_mul(&y[idx], &y[idx], n, bits);
        let term = sq[n].scale(&BigComplex::from_i64(bits, sign));
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// Solves `λ·K_lower = (λ²−1)·a_n + 2λ·r_n`; returns (a_n, r_n, constant remainder).
pub fn extract_a_r(k_lower: &LaurentPoly) -> Result<(LaurentPoly, BigComplex, BigComplex)> {
    let (q, rem) = k_lower.shift(1).divrem_l2m1()?;
    let r = rem.coeff(1).scale_i64(1);
    let r = BigComplex::new(r.re / 2u32, r.im / 2u32);
    Ok((q, r, rem.coeff(0)))
}

/// Residuals of one order of the recursion, before cleanup.
#[derive(Debug, Clone)]
pub struct OrderDiagnostics {
    pub order: usize,
    /// Constant remainder of the (λ²−1) division, relative to the polynomial size.
    pub divisibility: Float,
    /// Largest imaginary part among the new coefficients.
    pub imag_leak: Float,
    /// Largest coefficient at a degree of the wrong parity.
    pub parity_leak: Float,
    /// Largest coefficient above degree n+1.
    pub degree_leak: Float,
    /// |r_n| for odd n, else 0.
    pub r_odd: Float,
    /// Max coefficient of 𝔭_{n+1} − star(𝔭_{n+1}).
    pub star: Float,
    /// |𝔭_{n+1}(i)|.
    pub sym: Float,
    /// Max coefficient of the full K_n.
    pub k_residual: Float,
}

impl OrderDiagnostics {
    pub fn worst(&self) -> Float {
        let mut m = self.divisibility.clone();
        for x in [&self.imag_leak, &self.parity_leak, &self.degree_leak, &self.r_odd, &self.star, &self.sym, &self.k_residual] {
            if *x > m {
                m = x.clone();
            }
        }
        m
    }
}

/// Engine output: the state, frames and per-order residuals.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub cfg: PrecisionConfig,
    pub state: DerivativeState,
    pub frames: FrameDerivatives,
    pub diagnostics: Vec<OrderDiagnostics>,
}

fn relative(x: Float, scale: &Float) -> Float {
    let s = Float::with_val(x.prec(), scale + 1u32);
    x / s
}

fn max_imag(p: &LaurentPoly) -> Float {
    let mut m = Float::new(p.bits());
    for (_, c) in p.terms() {
        let a = Float::with_val(p.bits(), c.im.abs_ref());
        if a > m {
            m = a;
        }
    }
    m
}

/// Split off coefficients with `deg + n` even or `deg` outside `0..=n+1`.
fn clean(p: &LaurentPoly, n: usize) -> (LaurentPoly, Float, Float) {
    let bits = p.bits();
    let mut parity = Float::new(bits);
    let mut degree = Float::new(bits);
    let mut keep = Vec::new();
    for (d, c) in p.terms() {
        let a = c.abs();
        if *d < 0 || *d > n as i32 + 1 {
            if a > degree {
                degree = a;
            }
        } else if (d + n as i32) % 2 == 0 {
            if a > parity {
                parity = a;
            }
        } else {
            keep.push((*d, BigComplex::from_real(c.re.clone())));
        }
    }
    (LaurentPoly::from_terms(bits, keep), parity, degree)
}

fn bigger(a: Float, b: Float) -> Float {
    if a > b {
        a
    } else {
        b
    }
}

/// One step of the recursion: extends `state` from order n−1 to n and
/// appends `𝒫_{n+1}` to `frames`.
pub fn step(
    state: &mut DerivativeState,
    frames: &mut FrameDerivatives,
    sums: &MultisetSums,
    cfg: &PrecisionConfig,
    mode: Parallelism,
) -> Result<OrderDiagnostics> {
    let n = state.order() + 1;
    let bits = state.bits;
    if !state.phi.is_quarter_pi() {
        return Err(Error::GeneralPhiOrder);
    }
    if frames.p.len() != n + 1 {
        return Err(Error::Invariant { order: n, what: "frames out of step with state".into() });
    }
    let zero = LaurentPoly::zero(bits);
    state.a.push(zero.clone());
    state.b.push(zero.clone());
    state.c.push(zero);
    state.r.push(Float::new(bits));

    let p_lower = frame_coefficient(n + 1, state, sums, mode)?;
    let mut fl = frames.p.clone();
    fl.push(p_lower);
    let pl = p_coefficient(n + 1, &fl)?;
    let scale = pl.max_abs();

    let c_raw = extract_c(&pl)?;
    let (c, par_c, deg_c) = clean(&c_raw, n);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let b = c.scale(&BigComplex::from_i64(bits, sign));
    state.c[n] = c.clone();
    state.b[n] = b;

    let kl = k_coefficient(n, state)?;
    let (a_raw, r_raw, rem0) = extract_a_r(&kl)?;
    let (a, par_a, deg_a) = clean(&a_raw, n);
    let kscale = kl.max_abs();
    state.a[n] = a;
    let r_odd = if n % 2 == 1 { r_raw.abs() } else { Float::new(bits) };
    state.r[n] = if n % 2 == 1 { Float::new(bits) } else { r_raw.re.clone() };

    let p_full = frame_coefficient(n + 1, state, sums, mode)?;
    frames.p.push(p_full);
    let pf = p_coefficient(n + 1, &frames.p)?;
    let star = pf.distance(&pf.star());
    let sym = pf.eval(&BigComplex::i(bits))?.abs();
    let k_res = k_coefficient(n, state)?.max_abs();

    let imag = bigger(bigger(max_imag(&c_raw), max_imag(&a_raw)), Float::with_val(bits, r_raw.im.abs_ref()));
    let diag = OrderDiagnostics {
        order: n,
        divisibility: relative(rem0.abs(), &kscale),
        imag_leak: relative(imag, &scale),
        parity_leak: relative(bigger(par_c, par_a), &scale),
        degree_leak: relative(bigger(deg_c, deg_a), &scale),
        r_odd: relative(r_odd, &kscale),
        star: relative(star, &scale),
        sym: relative(sym, &scale),
        k_residual: relative(k_res, &kscale),
    };
    let tol = cfg.tol(8);
    let checks = [
        ("(λ²−1) divisibility", &diag.divisibility),
        ("imaginary leakage", &diag.imag_leak),
        ("λ-parity", &diag.parity_leak),
        ("degree bound", &diag.degree_leak),
        ("r vanishes at odd order", &diag.r_odd),
        ("𝔭 star symmetry", &diag.star),
        ("𝔭 vanishes at λ = i", &diag.sym),
        ("K = −1", &diag.k_residual),
    ];
    for (what, v) in checks {
        if *v > tol {
            return Err(Error::Invariant { order: n, what: format!("{} residual {}", what, fmt_float(v, 5)) });
        }
    }
    Ok(diag)
}

/// Runs the recursion to order `order` with a prebuilt table at z = 1.
pub fn run_with_table(order: usize, table: &OmegaTable, mode: Parallelism) -> Result<Expansion> {
    if order == 0 {
        return Err(Error::Invariant { order: 0, what: "order must be at least 1".into() });
    }
    if table.endpoint() != Some(Endpoint::One) {
        return Err(Error::Incompatible("engine needs a table along 0 → 1".into()));
    }
    if !table.phi.is_quarter_pi() {
        return Err(Error::GeneralPhiOrder);
    }
    if table.max_length < order + 1 {
        return Err(Error::TableTooShallow { have: table.max_length, need: order + 1 });
    }
    let cfg = table.cfg.clone();
    let sums = MultisetSums::new(table, mode)?;
    let mut state = DerivativeState::central(&table.phi, table.bits())?;
    let p1 = frame_coefficient(1, &state, &sums, mode)?;
    let mut frames = FrameDerivatives { p: vec![LaurentMatrix2::identity(table.bits()), p1] };
    let mut diagnostics = Vec::with_capacity(order);
    for _ in 0..order {
        diagnostics.push(step(&mut state, &mut frames, &sums, &cfg, mode)?);
    }
    Ok(Expansion { cfg, state, frames, diagnostics })
}

/// Builds the Ω table of depth `order + 1` and runs the recursion.
pub fn run(order: usize, phi: &Angle, cfg: &PrecisionConfig) -> Result<Expansion> {
    if !phi.is_quarter_pi() {
        return Err(Error::GeneralPhiOrder);
    }
    let table = omega::build_table(Endpoint::One, phi, order + 1, cfg)?;
    run_with_table(order, &table, Parallelism::Auto)
}

/// Taylor coefficients of area, Willmore energy and mean curvature.
#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub cfg: PrecisionConfig,
    pub phi: Angle,
    /// `alphas[k-1] = α_k` with Area = 8π(1 − Σ α_k t^k).
    pub alphas: Vec<Float>,
    /// Willmore energy coefficients W_k, k ≥ 0, in t.
    pub willmore: Vec<Float>,
    /// Mean curvature coefficients H_k, k ≥ 0, in t.
    pub mean_curvature: Vec<Float>,
    pub diagnostics: Vec<OrderDiagnostics>,
}

impl ExpansionResult {
    /// α_k as coefficients of (1/(g+1))^k; since t = 1/(2g+2) this is α_k/2^k.
    pub fn alphas_genus(&self) -> Vec<Float> {
        self.alphas.iter().enumerate().map(|(k, a)| Float::with_val(a.prec(), a >> (k as u32 + 1))).collect()
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let f = |v: &[Float]| v.iter().map(|x| fmt_float(x, digits)).collect::<Vec<_>>();
        let diags: Vec<_> = self
            .diagnostics
            .iter()
            .map(|d| {
                json!({
                    "order": d.order,
                    "divisibility": fmt_float(&d.divisibility, 3),
                    "imag_leak": fmt_float(&d.imag_leak, 3),
                    "parity_leak": fmt_float(&d.parity_leak, 3),
                    "degree_leak": fmt_float(&d.degree_leak, 3),
                    "r_odd": fmt_float(&d.r_odd, 3),
                    "star": fmt_float(&d.star, 3),
                    "sym": fmt_float(&d.sym, 3),
                    "k_residual": fmt_float(&d.k_residual, 3),
                })
            })
            .collect();
        json!({
            "version": 1,
            "phi": self.phi.to_string(),
            "precision": self.cfg.target_digits,
            "guard_digits": self.cfg.guard_digits,
            "alphas": f(&self.alphas),
            "alphas_genus": f(&self.alphas_genus()),
            "willmore": f(&self.willmore),
            "mean_curvature": f(&self.mean_curvature),
            "diagnostics": diags,
        })
    }
}

/// `Σ α_k t^k = r·(cos φ·b_0 − sin φ·c_0)` expanded by Cauchy product.
pub fn area_series(state: &DerivativeState, order: usize, cfg: &PrecisionConfig) -> Result<ExpansionResult> {
    if state.order() < order {
        return Err(Error::Invariant { order, what: format!("state only reaches order {}", state.order()) });
    }
    let bits = state.bits;
    let (s, c) = state.phi.eval(bits).sin_cos(Float::new(bits));
    let mut alphas = Vec::with_capacity(order);
    for k in 1..=order {
        let mut acc = Float::new(bits);
        for j in 0..=k {
            if j >= state.r.len() || state.r[j].is_zero() {
                continue;
            }
            let inner = Float::with_val(bits, &c * &state.b[k - j].coeff(0).re)
                - Float::with_val(bits, &s * &state.c[k - j].coeff(0).re);
            acc += inner * &state.r[j];
        }
        alphas.push(acc);
    }
    let eight_pi = Float::with_val(bits, 8 * pi(bits));
    let mut willmore = vec![eight_pi.clone()];
    willmore.extend(alphas.iter().map(|a| -Float::with_val(bits, a * &eight_pi)));
    let mean_curvature = vec![Float::new(bits); order + 1];
    Ok(ExpansionResult {
        cfg: cfg.clone(),
        phi: state.phi.clone(),
        alphas,
        willmore,
        mean_curvature,
        diagnostics: Vec::new(),
    })
}

impl Expansion {
    pub fn result(&self) -> Result<ExpansionResult> {
        let mut r = area_series(&self.state, self.state.order(), &self.cfg)?;
        r.diagnostics = self.diagnostics.clone();
        Ok(r)
    }
}

/// Closed-form first derivatives in t at t = 0, any φ.
#[derive(Debug, Clone)]
pub struct FirstOrder {
    pub phi: Angle,
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub r: Float,
    pub theta: Float,
    pub mean_curvature: Float,
    /// ∂W/∂t at t = 0.
    pub willmore_slope: Float,
    /// α₁(φ) = −(∂W/∂t)/(8π).
    pub alpha1: Float,
}

pub fn first_order_general_phi(phi: &Angle, bits: u32) -> Result<FirstOrder> {
    phi.check_open_quadrant()?;
    let v = phi.eval(bits);
    let (s, c) = v.clone().sin_cos(Float::new(bits));
    let (s2, c2) = Float::with_val(bits, &v * 2u32).sin_cos(Float::new(bits));
    let ls = Float::with_val(bits, s.ln_ref());
    let lc = Float::with_val(bits, c.ln_ref());
    let ltan = Float::with_val(bits, &ls - &lc);
    let a0 = Float::with_val(bits, &s2 * &ltan);
    let b2 = Float::with_val(bits, -2 * Float::with_val(bits, &c * &lc));
    let c2v = Float::with_val(bits, 2 * Float::with_val(bits, &s * &ls));
    let b0 = Float::with_val(bits, &b2 * &c2) - Float::with_val(bits, &c2v * &s2);
    let c0 = -(Float::with_val(bits, &b2 * &s2) + Float::with_val(bits, &c2v * &c2));
    let poly = |x0: &Float, x2: &Float| {
        LaurentPoly::from_terms(bits, [(0, BigComplex::from_real(x0.clone())), (2, BigComplex::from_real(x2.clone()))])
    };
    let theta = Float::with_val(bits, 2 * Float::with_val(bits, &s2 * &ltan));
    let mean_curvature = Float::with_val(bits, -&theta);
    let cc = Float::with_val(bits, &c * &c);
    let ss = Float::with_val(bits, &s * &s);
    let inner = Float::with_val(bits, &cc * &lc) + Float::with_val(bits, &ss * &ls);
    let willmore_slope = Float::with_val(bits, 16 * pi(bits)) * inner;
    let alpha1 = Float::with_val(bits, &c * &b0) - Float::with_val(bits, &s * &c0);
    Ok(FirstOrder {
        phi: phi.clone(),
        a: poly(&a0, &a0),
        b: poly(&b0, &b2),
        c: poly(&c0, &c2v),
        r: Float::new(bits),
        theta,
        mean_curvature,
        willmore_slope,
        alpha1,
    })
}

/// `max |i(𝒬'₂₁ + 𝒬'₁₂) − 2π b̄|` with `𝒬' = Σ x̄_i 𝔪_i Ω_i(i)`.
pub fn q_first_order_check(table: &OmegaTable) -> Result<Float> {
    if table.endpoint() != Some(Endpoint::I) {
        return Err(Error::Incompatible("need a table along 0 → i".into()));
    }
    let bits = table.bits();
    let state = DerivativeState::central(&table.phi, bits)?;
    let mut q = LaurentMatrix2::zero(bits);
    for l in 1..=3u8 {
        let m = letter_matrix(l);
        let v = table.get(&Word(vec![l]))?;
        let x = &state.x(l as usize - 1)[0];
        for i in 0..2 {
            for j in 0..2 {
                if m[i][j] != (0, 0) {
                    q.e[i][j] = q.e[i][j].checked_add(&x.scale(&gscale(v, m[i][j])))?;
                }
            }
        }
    }
    let lhs = q.e[1][0].checked_add(&q.e[0][1])?.scale(&BigComplex::i(bits));
    let rhs = state.b[0].scale_real(&Float::with_val(bits, 2 * pi(bits)));
    Ok(lhs.distance(&rhs))
}

/// Decimal rendering of a Laurent polynomial's real coefficients, for reports.
pub fn render_real(p: &LaurentPoly, digits: usize) -> Vec<(i32, String)> {
    let d = digits.min(roundtrip_digits(p.bits()));
    p.terms().iter().map(|(k, c)| (*k, fmt_float(&c.re, d))).collect()
}
