//! Identity suites with pass/fail reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;

use crate::engine::{self, alpha3};
use crate::error::{Error, Result};
use crate::mpl::{li, zeta_signed, MplSpec};
use crate::numerics::{fmt_float, log2, pi, pow10_neg, zeta_real, Angle, BigComplex, PrecisionConfig};
use crate::omega::{cache, Endpoint, OmegaTable};
use crate::par::{self, Parallelism};
use crate::words::{shuffle, stuffle, MplLetter, Word};

/// α₅ to 50 digits.
pub const ALPHA5: &str = "3.69962699449761843989338013547104461773632954830910";
/// α₇ to 50 digits.
pub const ALPHA7: &str = "-53.1688000602634657601186493744463143722221041377109";

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub residual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub precision: u32,
    pub tolerance: String,
    pub stretch: bool,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.checks.iter().filter(|c| c.pass).count(), self.checks.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let (p, n) = self.counts();
        let mut s = String::new();
        let kind = if self.stretch { " (stretch)" } else { "" };
        let _ = writeln!(s, "suite {}{}: {}/{} pass, precision {}, tol {}", self.suite, kind, p, n, self.precision, self.tolerance);
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  {:<w$}  {}  residual {:<10}  computed {}",
                c.id,
                if c.pass { "PASS" } else { "FAIL" },
                c.residual,
                c.computed,
                w = w
            );
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub cfg: PrecisionConfig,
    pub seed: u64,
    pub mode: Parallelism,
    /// Ω tables are read from and written to this directory when set.
    pub cache_dir: Option<PathBuf>,
    /// Include α₇ in the conjecture suite (depth-8 table).
    pub alpha7: bool,
}

impl VerifyOptions {
    pub fn new(cfg: PrecisionConfig) -> Self {
        VerifyOptions { cfg, seed: 0, mode: Parallelism::Auto, cache_dir: None, alpha7: true }
    }

    fn table(&self, endpoint: Endpoint, phi: &Angle, depth: usize) -> Result<OmegaTable> {
        Ok(cache::load_or_build(self.cache_dir.as_deref(), endpoint, phi, depth, &self.cfg, self.mode)?.0)
    }

    fn digits(&self) -> usize {
        self.cfg.target_digits as usize
    }
}

fn make_check(id: &str, expected: &BigComplex, computed: &BigComplex, tol: &Float, digits: usize) -> Check {
    let res = (computed - expected).abs();
    Check {
        id: id.to_string(),
        expected: render(expected, digits),
        computed: render(computed, digits),
        residual: fmt_float(&res, 3),
        pass: res < *tol,
    }
}

fn render(z: &BigComplex, digits: usize) -> String {
    if z.im.is_zero() {
        fmt_float(&z.re, digits)
    } else {
        format!("{:.*}", digits, z)
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Check> + Send + Sync + 'a>;

fn run_jobs(mode: Parallelism, jobs: Vec<Job<'_>>) -> Result<Vec<Check>> {
    let mut out = par::map_with(mode, &jobs, |j| j()).into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

fn report(name: &str, opts: &VerifyOptions, tol: &Float, stretch: bool, checks: Vec<Check>) -> SuiteReport {
    SuiteReport {
        suite: name.to_string(),
        precision: opts.cfg.target_digits,
        tolerance: fmt_float(tol, 3),
        stretch,
        seed: opts.seed,
        checks,
    }
}

/// The nine Ω values at φ = π/4 of weight ≤ 4 with known closed forms, as
/// (word, imaginary part); every one of them is purely imaginary.
pub fn closed_forms(bits: u32) -> Vec<(Word, Float)> {
    let p = pi(bits);
    let l = log2(bits);
    let z3 = zeta_real(3, bits).expect("ζ(3)");
    let f = |x: Float| Float::with_val(bits, x);
    let p3 = f(p.clone() * &p * &p);
    let pl = f(p.clone() * &l);
    let pl2 = f(pl.clone() * &l);
    let pl3 = f(pl2.clone() * &l);
    let p3l = f(p3.clone() * &l);
    let pz = f(p.clone() * &z3);
    let w = |s: &str| s.parse::<Word>().expect("word");
    vec![
        (w("3"), p.clone()),
        (w("2,1"), f(-pl.clone())),
        (w("2,2,3"), f(p3.clone() / 12u32)),
        (w("3,1,1"), f(pl2.clone() / 2u32) - f(p3.clone() / 12u32)),
        (w("2,1,1,1"), f(p3l.clone() / 12u32) - f(pl3.clone() / 6u32) - f(pz.clone() / 4u32)),
        (w("2,1,3,3"), f(p3l.clone() / 4u32) - pz.clone()),
        (w("2,2,2,1"), f(pz.clone() / 4u32) - f(p3l.clone() / 12u32)),
        (w("3,1,2,3"), f(pz.clone() * 13u32 / 8u32) - f(p3l.clone() / 4u32)),
        (w("3,3,2,1"), f(p3l / 6u32) - f(pz * 5u32 / 8u32)),
    ]
}

pub fn closed_form_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let cfg = &opts.cfg;
    let tol = cfg.tol(6);
    let table = opts.table(Endpoint::One, &Angle::pi_over(4), 4)?;
    let mut checks = Vec::new();
    for (w, im) in closed_forms(cfg.bits()) {
        let id = format!("omega[{}]", w);
        checks.push(make_check(&id, &BigComplex::from_imag(im), table.get(&w)?, &tol, opts.digits()));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(report("closed-forms", opts, &tol, false, checks))
}

pub fn alpha3_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let cfg = &opts.cfg;
    let bits = cfg.bits();
    let tol = cfg.tol(6);
    let table = opts.table(Endpoint::One, &Angle::pi_over(4), 4)?;
    let raw = alpha3::raw(&table)?;
    let simp = alpha3::simplified(&table)?;
    let exp = engine::run_with_table(3, &table, opts.mode)?;
    let res = exp.result()?;
    let eng = BigComplex::from_real(res.alphas[2].clone());
    let z3 = BigComplex::from_real(zeta_real(3, bits)? * 9u32 / 4u32);
    let a_fact = table.get(&"2,1".parse()?)?.scale_i64(2).pow_u(3);
    let d = opts.digits();
    let checks = vec![
        make_check("A-factored", &a_fact, &raw.a, &tol, d),
        make_check("engine-vs-raw", &raw.alpha3, &eng, &tol, d),
        make_check("engine-vs-zeta3", &z3, &eng, &tol, d),
        make_check("raw-vs-simplified", &simp.alpha3, &raw.alpha3, &tol, d),
    ];
    Ok(report("alpha3", opts, &tol, false, checks))
}

/// Right-hand side of the α₅ conjecture.
pub fn alpha5_conjecture(cfg: &PrecisionConfig) -> Result<Float> {
    let b = cfg.bits();
    let c = Consts::new(b)?;
    let z113 = zeta_signed(&[1, 1, 3], &[1, 1, -1], cfg)?.re;
    let f = |x: Float| Float::with_val(b, x);
    Ok(f(z113 * -8i32) + f(c.z5.clone() * 121u32 / 16u32) + f(c.p2.clone() * &c.z3 * 2u32 / 3u32)
        - f(c.z3.clone() * &c.l2 * 21u32))
}

/// Right-hand side of the α₇ conjecture.
pub fn alpha7_conjecture(cfg: &PrecisionConfig, mode: Parallelism) -> Result<Float> {
    let b = cfg.bits();
    let c = Consts::new(b)?;
    let specs: Vec<(&[u32], &[i8])> = vec![
        (&[1, 1, 1, 1, 3], &[1, 1, 1, 1, -1]),
        (&[1, 1, 5], &[1, 1, -1]),
        (&[1, 3, 3], &[1, 1, -1]),
        (&[1, 1, 3], &[1, 1, -1]),
        (&[1, 3], &[1, -1]),
    ];
    let vals = par::map_with(mode, &specs, |(ix, sg)| zeta_signed(ix, sg, cfg).map(|z| z.re))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let f = |x: Float| Float::with_val(b, x);
    let z7 = zeta_real(7, b)?;
    let l4 = f(c.l2.clone() * &c.l2);
    let p4 = f(c.p2.clone() * &c.p2);
    let mut acc = f(vals[0].clone() * -256i32);
    acc += f(vals[1].clone() * 1392u32 / 17u32);
    acc += f(vals[2].clone() * 720u32 / 17u32);
    acc += f(vals[3].clone() * &c.l2 * 128u32);
    acc += f(vals[4].clone() * &c.z3 * 28u32);
    acc += f(z7 * 296921u32 / 1088u32);
    acc -= f(c.p2.clone() * &c.z5 * 418u32 / 51u32);
    acc -= f(p4 * &c.z3 * 473u32 / 765u32);
    acc -= f(c.z5.clone() * &c.l2 * 109u32 / 2u32);
    acc += f(l4 * &c.z3 * 280u32 / 3u32);
    acc -= f(c.p2.clone() * &c.z3 * &c.l2 * 32u32 / 3u32);
    acc -= f(c.z3.clone() * &c.z3 * &c.l * 112u32);
    Ok(acc)
}

struct Consts {
    p2: Float,
    l: Float,
    l2: Float,
    z3: Float,
    z5: Float,
}

impl Consts {
    fn new(b: u32) -> Result<Self> {
        let p = pi(b);
        let l = log2(b);
        Ok(Consts {
            p2: Float::with_val(b, &p * &p),
            l2: Float::with_val(b, &l * &l),
            l,
            z3: zeta_real(3, b)?,
            z5: zeta_real(5, b)?,
        })
    }
}

/// Engine α₅ (and α₇) against the MZV conjectures and the 50-digit values.
pub fn conjecture_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let cfg = &opts.cfg;
    let bits = cfg.bits();
    let tol = cfg.tol(6);
    let ref_tol = {
        let t = pow10_neg(bits, 48);
        if t > tol {
            t
        } else {
            tol.clone()
        }
    };
    let order = if opts.alpha7 { 7 } else { 5 };
    let table = opts.table(Endpoint::One, &Angle::pi_over(4), order + 1)?;
    let res = engine::run_with_table(order, &table, opts.mode)?.result()?;
    let d = opts.digits();
    let a5 = BigComplex::from_real(res.alphas[4].clone());
    let r5 = BigComplex::from_real(alpha5_conjecture(cfg)?);
    let v5 = BigComplex::parse(bits, ALPHA5, "0")?;
    let mut checks = vec![
        make_check("alpha5-conjecture", &r5, &a5, &tol, d),
        make_check("alpha5-value", &v5, &a5, &ref_tol, d),
    ];
    if opts.alpha7 {
        let a7 = BigComplex::from_real(res.alphas[6].clone());
        let r7 = BigComplex::from_real(alpha7_conjecture(cfg, opts.mode)?);
        let v7 = BigComplex::parse(bits, ALPHA7, "0")?;
        checks.push(make_check("alpha7-conjecture", &r7, &a7, &tol, d));
        checks.push(make_check("alpha7-value", &v7, &a7, &ref_tol, d));
    }
    Ok(report("conjectures", opts, &tol, true, checks))
}

fn lv(ix: &[u32], z: &[&BigComplex], cfg: &PrecisionConfig) -> Result<BigComplex> {
    li(&MplSpec::new(ix.to_vec(), z.iter().map(|x| (*x).clone()).collect())?, cfg)
}

/// `log(−z)`, principal branch.
fn lm(z: &BigComplex) -> BigComplex {
    (-z).ln()
}

/// LHS − RHS of the depth-2 inversion identities at `(z1, z2)`.
/// Returns residual values for Li_{1,1}, Li_{1,2}, Li_{2,1}.
pub fn inversion_residuals(z1: &BigComplex, z2: &BigComplex, cfg: &PrecisionConfig) -> Result<[BigComplex; 3]> {
    let b = cfg.bits();
    let z12 = z1 * z2;
    let (i1, i2) = (z1.recip(), z2.recip());
    let p = pi(b);
    let p2 = BigComplex::from_real(Float::with_val(b, &p * &p));
    let q = |n: i64, d: i64| BigComplex::from_ratio(b, n, d);
    let (x, y) = (lm(z2), lm(&z12));
    let (x2, y2) = (&x * &x, &y * &y);
    let x3 = &x2 * &x;
    let l1a = lv(&[1], &[z1], cfg)?;
    let l1b = lv(&[1], &[z2], cfg)?;
    let l2a = lv(&[2], &[z1], cfg)?;
    let l2b = lv(&[2], &[z2], cfg)?;
    let l2c = lv(&[2], &[&z12], cfg)?;
    let l3a = lv(&[3], &[z1], cfg)?;
    let l3b = lv(&[3], &[z2], cfg)?;
    let l3c = lv(&[3], &[&z12], cfg)?;

    let lhs11 = &lv(&[1, 1], &[z1, z2], cfg)? - &lv(&[1, 1], &[&i1, &i2], cfg)?;
    let mut r11 = -&l2a;
    r11 += &l2b;
    r11 -= &l2c;
    r11 -= &(&l1a * &x);
    r11 += &(&l1a * &y);
    r11 -= &(&l1b * &y);
    r11 += &(&q(1, 2) * &x2);
    r11 -= &(&y * &x);
    r11 += &(&p2 * &q(1, 6));

    let lhs12 = &lv(&[1, 2], &[z1, z2], cfg)? + &lv(&[1, 2], &[&i1, &i2], cfg)?;
    let mut r12 = l3a.clone();
    r12 += &l3b.scale_i64(2);
    r12 -= &l3c;
    r12 -= &(&(&q(1, 2) * &l1a) * &x2);
    r12 += &(&(&q(1, 2) * &l1a) * &y2);
    r12 -= &(&l2a * &y);
    r12 -= &(&l2b * &y);
    r12 += &(&q(1, 3) * &x3);
    r12 -= &(&(&q(1, 2) * &y) * &x2);
    r12 += &(&(&q(1, 3) * &p2) * &x);
    r12 -= &(&(&q(1, 6) * &p2) * &y);

    let lhs21 = &lv(&[2, 1], &[z1, z2], cfg)? + &lv(&[2, 1], &[&i1, &i2], cfg)?;
    let mut r21 = -(&(&q(1, 6) * &p2) * &l1b);
    r21 -= &l3a.scale_i64(2);
    r21 -= &l3b;
    r21 -= &l3c;
    r21 -= &(&(&q(1, 2) * &l1b) * &y2);
    r21 -= &(&l2a * &x);
    r21 += &(&l2a * &y);
    r21 += &(&l2b * &y);
    r21 -= &(&q(1, 6) * &x3);
    r21 += &(&(&q(1, 2) * &y) * &x2);
    r21 -= &(&(&q(1, 2) * &y2) * &x);
    r21 -= &(&(&q(1, 3) * &p2) * &x);
    r21 += &(&(&q(1, 6) * &p2) * &y);

    Ok([&lhs11 - &r11, &lhs12 - &r12, &lhs21 - &r21])
}

/// Unit-circle point e^{iπq}, q a multiple of 1/24 away from 0 and ±1.
fn sample_angle(rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let k: i64 = rng.gen_range(-23..=23);
        if k.abs() > 1 {
            return k;
        }
    }
}

fn root(k: i64, bits: u32) -> BigComplex {
    let theta = Float::with_val(bits, pi(bits) * k) / 24u32;
    BigComplex::cis(&theta)
}

/// Sampled letters for stuffle checks: index 1..=2, arguments 24th roots of unity ≠ 1.
pub fn sample_letters(rng: &mut ChaCha8Rng, len: usize, bits: u32) -> Vec<MplLetter> {
    (0..len)
        .map(|_| {
            let k = loop {
                let k: i64 = rng.gen_range(-23..=24);
                if k != 0 {
                    break k;
                }
            };
            MplLetter::new(rng.gen_range(1..=2), root(k, bits))
        })
        .collect()
}

fn letters_value(ls: &[MplLetter], cfg: &PrecisionConfig) -> Result<BigComplex> {
    li(&MplSpec::new(ls.iter().map(|l| l.n).collect(), ls.iter().map(|l| l.z.clone()).collect())?, cfg)
}

/// |Li(u)·Li(v) − Σ stuffle(u, v)|.
pub fn stuffle_residual(u: &[MplLetter], v: &[MplLetter], cfg: &PrecisionConfig) -> Result<Float> {
    let lhs = &letters_value(u, cfg)? * &letters_value(v, cfg)?;
    let mut rhs = BigComplex::zero(cfg.bits());
    for (k, w) in stuffle(u, v).terms {
        rhs += &letters_value(&w, cfg)?.scale_i64(k);
    }
    Ok((&lhs - &rhs).abs())
}

/// |Ω_u·Ω_v − Σ Ω_{shuffle(u, v)}| from one table.
pub fn shuffle_residual(u: &Word, v: &Word, table: &OmegaTable) -> Result<Float> {
    let lhs = table.get(u)? * table.get(v)?;
    let mut rhs = BigComplex::zero(table.bits());
    for (w, k) in shuffle(u, v).terms() {
        rhs += &table.get(w)?.scale_i64(k);
    }
    Ok((&lhs - &rhs).abs())
}

fn residual_check(id: String, res: Float, tol: &Float) -> Check {
    Check { id, expected: "0".into(), computed: fmt_float(&res, 3), residual: fmt_float(&res, 3), pass: res < *tol }
}

pub fn parity_shuffle_stuffle_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    let cfg = opts.cfg.clone();
    let bits = cfg.bits();
    let tol = cfg.tol(6);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let table = opts.table(Endpoint::One, &Angle::pi_over(4), 4)?;
    let t = &table;
    let mut jobs: Vec<Job> = Vec::new();

    let eta3 = root(18, bits);
    let m1 = BigComplex::from_i64(bits, -1);
    {
        let (cfg, tol) = (cfg.clone(), tol.clone());
        let (m1, eta3) = (m1.clone(), eta3.clone());
        jobs.push(Box::new(move || {
            let r = inversion_residuals(&m1, &eta3, &cfg)?;
            Ok(residual_check("inversion-li11[-1,eta^3]".into(), r[0].abs(), &tol))
        }));
    }
    for s in 0..2 {
        let (k1, k2) = loop {
            let (a, b) = (sample_angle(&mut rng), sample_angle(&mut rng));
            let sum = (a + b).rem_euclid(48);
            if sum > 1 && sum < 47 {
                break (a, b);
            }
        };
        let (cfg, tol) = (cfg.clone(), tol.clone());
        jobs.push(Box::new(move || {
            let r = inversion_residuals(&root(k1, bits), &root(k2, bits), &cfg)?;
            let worst = r.iter().map(|z| z.abs()).fold(Float::new(bits), |a, b| if b > a { b } else { a });
            Ok(residual_check(format!("inversion-sample{}[{}/24,{}/24]", s, k1, k2), worst, &tol))
        }));
    }

    {
        let tol = tol.clone();
        jobs.push(Box::new(move || {
            let r = shuffle_residual(&Word(vec![1]), &Word(vec![2]), t)?;
            Ok(residual_check("shuffle[1|2]".into(), r, &tol))
        }));
    }
    for s in 0..3 {
        let lu = rng.gen_range(1..=2usize);
        let lv_ = rng.gen_range(1..=4 - lu);
        let u = Word((0..lu).map(|_| rng.gen_range(1..=3u8)).collect());
        let v = Word((0..lv_).map(|_| rng.gen_range(1..=3u8)).collect());
        let tol = tol.clone();
        jobs.push(Box::new(move || {
            let r = shuffle_residual(&u, &v, t)?;
            Ok(residual_check(format!("shuffle-sample{}[{}|{}]", s, u, v), r, &tol))
        }));
    }

    {
        let (cfg, tol, m1) = (cfg.clone(), tol.clone(), m1.clone());
        jobs.push(Box::new(move || {
            let l = MplLetter::new(1, m1.clone());
            let r = stuffle_residual(&[l.clone()], &[l], &cfg)?;
            Ok(residual_check("stuffle[Li1(-1)^2]".into(), r, &tol))
        }));
    }
    for s in 0..3 {
        let u = sample_letters(&mut rng, 1, bits);
        let len = rng.gen_range(1..=2);
        let v = sample_letters(&mut rng, len, bits);
        let (cfg, tol) = (cfg.clone(), tol.clone());
        jobs.push(Box::new(move || {
            let r = stuffle_residual(&u, &v, &cfg)?;
            Ok(residual_check(format!("stuffle-sample{}", s), r, &tol))
        }));
    }

    let checks = run_jobs(opts.mode, jobs)?;
    Ok(report("parity", opts, &tol, false, checks))
}

pub const SUITES: [&str; 4] = ["closed-forms", "alpha3", "parity", "conjectures"];

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    match name {
        "closed-forms" => closed_form_suite(opts),
        "alpha3" => alpha3_suite(opts),
        "parity" => parity_shuffle_stuffle_suite(opts),
        "conjectures" => conjecture_suite(opts),
        other => Err(Error::Parse(format!("unknown suite `{}`", other))),
    }
}
