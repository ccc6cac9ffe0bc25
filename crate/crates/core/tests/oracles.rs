//! Reference values computed from plain series, independent of the
//! hyperlogarithm code paths.

use lawson_core::mpl::{li, zeta_signed, MplSpec};
use lawson_core::numerics::{log2, pi, zeta_real, BigComplex, PrecisionConfig};
use lawson_core::verify;
use rug::ops::Pow;
use rug::Float;

/// ζ(s) through the alternating η series with Borwein's weights.
fn borwein_zeta(s: u32, bits: u32) -> Float {
    let digits = bits as f64 * 0.30103;
    let n = (digits / 0.76555).ceil() as u32 + 4;
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut term = Float::with_val(bits, 1) / n;
    let mut acc = Float::new(bits);
    for i in 0..=n {
        if i > 0 {
            let num = Float::with_val(bits, (n + i - 1) as u64 * 4 * (n - i + 1) as u64);
            let den = Float::with_val(bits, (2 * i - 1) as u64 * (2 * i) as u64);
            term = term * num / den;
        }
        acc += &term;
        d.push(Float::with_val(bits, &acc * n));
    }
    let dn = d[n as usize].clone();
    let mut eta = Float::new(bits);
    for k in 0..n as usize {
        let mut t = Float::with_val(bits, &d[k] - &dn);
        t /= Float::with_val(bits, (k + 1) as u64).pow(s);
        if k % 2 == 0 {
            eta += t;
        } else {
            eta -= t;
        }
    }
    eta = -eta / dn;
    let factor = 1 - Float::with_val(bits, 2u32).pow(1 - s as i32);
    eta / factor
}

/// Repeated averaging of consecutive partial sums of an alternating series.
fn average_tail(mut s: Vec<Float>) -> Float {
    while s.len() > 1 {
        s = s.windows(2).map(|w| Float::with_val(w[0].prec(), &w[0] + &w[1]) / 2u32).collect();
    }
    s.pop().unwrap()
}

/// ζ(1,1,3̄) = Σ_k (−1)^k / k³ · e₂(1, 1/2, …, 1/(k−1)).
fn zeta_113_alt(bits: u32) -> Float {
    let (start, rounds) = (300usize, 36usize);
    let mut h1 = Float::new(bits);
    let mut h2 = Float::new(bits);
    let mut sum = Float::new(bits);
    let mut partial = Vec::new();
    for k in 1..=start + rounds {
        let e2 = Float::with_val(bits, &h1 * &h1 - &h2) / 2u32;
        let mut t = e2 / Float::with_val(bits, k as u64).pow(3u32);
        if k % 2 == 1 {
            t = -t;
        }
        sum += t;
        if k >= start {
            partial.push(sum.clone());
        }
        let inv = Float::with_val(bits, 1) / k as u64;
        h2 += Float::with_val(bits, &inv * &inv);
        h1 += inv;
    }
    average_tail(partial)
}

#[test]
fn single_zeta_against_borwein() {
    let cfg = PrecisionConfig::new(40).unwrap();
    let b = cfg.bits();
    for s in [2u32, 3, 5, 7] {
        let oracle = borwein_zeta(s, b);
        let got = zeta_real(s as i64, b).unwrap();
        assert!(Float::with_val(b, &got - &oracle).abs() < 1e-38, "ζ({})", s);
        let via_li = zeta_signed(&[s], &[1], &cfg).unwrap();
        assert!((&via_li - &BigComplex::from_real(oracle)).abs() < 1e-38, "Li_{}(1)", s);
    }
    let p = pi(b);
    let z2 = Float::with_val(b, &p * &p) / 6u32;
    assert!(Float::with_val(b, borwein_zeta(2, b) - z2).abs() < 1e-38);
}

#[test]
fn alternating_triple_against_partial_sums() {
    let cfg = PrecisionConfig::new(40).unwrap();
    let b = cfg.bits();
    let oracle = zeta_113_alt(b);
    let got = zeta_signed(&[1, 1, 3], &[1, 1, -1], &cfg).unwrap();
    let diff = (&got - &BigComplex::from_real(oracle.clone())).abs();
    assert!(diff < 1e-30, "ζ(1,1,3̄) = {} oracle {} diff {}", got, oracle, diff);
}

#[test]
fn alpha5_conjecture_from_oracles() {
    let cfg = PrecisionConfig::new(40).unwrap();
    let b = cfg.bits();
    let l = log2(b);
    let p = pi(b);
    let (z3, z5) = (borwein_zeta(3, b), borwein_zeta(5, b));
    let mut rhs = Float::with_val(b, zeta_113_alt(b) * -8i32);
    rhs += Float::with_val(b, &z5 * 121u32) / 16u32;
    rhs += Float::with_val(b, &p * &p) * &z3 * 2u32 / 3u32;
    rhs -= Float::with_val(b, &z3 * &l) * &l * 21u32;
    let reference = Float::with_val(b, Float::parse(verify::ALPHA5).unwrap());
    assert!(Float::with_val(b, &rhs - &reference).abs() < 1e-30);
    let lib = verify::alpha5_conjecture(&cfg).unwrap();
    assert!(Float::with_val(b, &rhs - &lib).abs() < 1e-30);
}

#[test]
fn depth_one_special_values() {
    let cfg = PrecisionConfig::new(40).unwrap();
    let b = cfg.bits();
    let p = pi(b);
    let m1 = BigComplex::from_i64(b, -1);
    let li2 = li(&MplSpec::new(vec![2], vec![m1.clone()]).unwrap(), &cfg).unwrap();
    let expect = -Float::with_val(b, &p * &p) / 12u32;
    assert!((&li2 - &BigComplex::from_real(expect)).abs() < 1e-38);
    // Li₁(i) = −log(1 − i) = −½log 2 + iπ/4
    let li1 = li(&MplSpec::new(vec![1], vec![BigComplex::i(b)]).unwrap(), &cfg).unwrap();
    let expect = BigComplex::new(-log2(b) / 2u32, Float::with_val(b, &p / 4u32));
    assert!((&li1 - &expect).abs() < 1e-38);
}
