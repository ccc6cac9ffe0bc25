use lawson_core::mpl::{omega_to_mpl, zeta_signed};
use lawson_core::numerics::{agreeing_digits, log2, pi, zeta_real, Angle, BigComplex, PrecisionConfig};
use lawson_core::omega::{build_path, build_table, chen_compose, quadrature_oracle, Endpoint, PunctureConfig};
use lawson_core::{Parallelism, Word};
use rug::ops::Pow;
use rug::Float;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn imag(x: Float) -> BigComplex {
    BigComplex::from_imag(x)
}

#[test]
fn closed_forms_at_quarter_pi() {
    let cfg = PrecisionConfig::new(45).unwrap();
    let b = cfg.bits();
    let t = build_table(Endpoint::One, &Angle::pi_over(4), 4, &cfg).unwrap();
    let p = pi(b);
    let l = log2(b);
    let z3 = zeta_real(3, b).unwrap();
    let p3 = Float::with_val(b, p.clone().pow(3u32));
    let l2 = Float::with_val(b, l.square_ref());
    let l3 = Float::with_val(b, &l2 * &l);
    let sqrt2 = Float::with_val(b, 2u32).sqrt();
    let cases: Vec<(&str, BigComplex)> = vec![
        ("1", imag(p.clone() / 2u32)),
        ("2", BigComplex::from_real(-2 * (sqrt2 + 1u32).ln())),
        ("3", imag(p.clone())),
        ("2,1", imag(-p.clone() * &l)),
        ("2,2,3", imag(p3.clone() / 12u32)),
        ("3,1,1", imag(p.clone() * &l2 / 2u32 - p3.clone() / 12u32)),
        ("2,1,1,1", imag(p3.clone() * &l / 12u32 - p.clone() * &l3 / 6u32 - p.clone() * &z3 / 4u32)),
        ("2,1,3,3", imag(p3.clone() * &l / 4u32 - p.clone() * &z3)),
        ("2,2,2,1", imag(-p3.clone() * &l / 12u32 + p.clone() * &z3 / 4u32)),
        ("3,1,2,3", imag(-p3.clone() * &l / 4u32 + p.clone() * &z3 * 13u32 / 8u32)),
        ("3,3,2,1", imag(p3.clone() * &l / 6u32 - p.clone() * &z3 * 5u32 / 8u32)),
    ];
    for (word, expect) in cases {
        let got = t.get(&w(word)).unwrap();
        assert!((got - &expect).abs() < 1e-40, "Ω_{} = {} expected {}", word, got, expect);
    }
}

#[test]
fn integral_identities_general_phi() {
    let cfg = PrecisionConfig::new(45).unwrap();
    let b = cfg.bits();
    for phi in ["0.3", "pi/4", "1.2"] {
        let angle: Angle = phi.parse().unwrap();
        let f = angle.eval(b);
        let (s, c) = f.clone().sin_cos(Float::new(b));
        let p = pi(b);
        let t1 = build_table(Endpoint::One, &angle, 2, &cfg).unwrap();
        let got = t1.get(&w("2,1")).unwrap() - t1.get(&w("1,2")).unwrap();
        let lc = Float::with_val(b, (Float::with_val(b, 1 - &c) / Float::with_val(b, 1 + &c)).ln());
        let expect = imag(4u32 * p.clone() * s.clone().ln() - (p.clone() - 2u32 * f.clone()) * &lc);
        assert!((got - &expect).abs() < 1e-40, "φ={} endpoint 1", phi);
        let ti = build_table(Endpoint::I, &angle, 2, &cfg).unwrap();
        let got = ti.get(&w("3,1")).unwrap() - ti.get(&w("1,3")).unwrap();
        let ls = Float::with_val(b, (Float::with_val(b, 1 - &s) / Float::with_val(b, 1 + &s)).ln());
        let expect = imag(-4i32 * p.clone() * c.clone().ln() + 2u32 * f.clone() * &ls);
        assert!((got - &expect).abs() < 1e-40, "φ={} endpoint i", phi);
    }
}

#[test]
fn oracle_triangle_short_words() {
    let cfg = PrecisionConfig::new(30).unwrap();
    for phi in ["pi/6", "pi/4"] {
        let angle: Angle = phi.parse().unwrap();
        let t = build_table(Endpoint::One, &angle, 2, &cfg).unwrap();
        let punct = PunctureConfig::new(&angle, cfg.bits()).unwrap();
        for len in 1..=2 {
            for word in Word::all_of_length(len) {
                let tr = t.get(&word).unwrap();
                let q = quadrature_oracle(&word, Endpoint::One, &angle, &cfg).unwrap();
                let m = omega_to_mpl(&word, &punct).unwrap().evaluate(&cfg).unwrap();
                assert!(agreeing_digits(tr, &q) >= 20.0, "quadrature {} at {}", word, phi);
                assert!(agreeing_digits(tr, &m) >= 20.0, "mpl {} at {}", word, phi);
                assert!(agreeing_digits(&q, &m) >= 20.0, "mpl vs quadrature {} at {}", word, phi);
            }
        }
    }
}

#[test]
fn quadrature_examples() {
    let cfg = PrecisionConfig::new(20).unwrap();
    let b = cfg.bits();
    let q = quadrature_oracle(&w("3"), Endpoint::One, &Angle::pi_over(4), &cfg).unwrap();
    assert!(agreeing_digits(&q, &imag(pi(b))) > 20.0);
    let q = quadrature_oracle(&w("1"), Endpoint::One, &"0.5".parse().unwrap(), &cfg).unwrap();
    assert!(agreeing_digits(&q, &imag(pi(b) - 1u32)) > 20.0);
    let q = quadrature_oracle(&w("2,1"), Endpoint::One, &Angle::pi_over(4), &cfg).unwrap();
    assert!(agreeing_digits(&q, &imag(-pi(b) * log2(b))) > 20.0);
    assert!(quadrature_oracle(&w("1,1,1,1"), Endpoint::One, &Angle::pi_over(4), &cfg).is_err());
}

#[test]
fn mpl_term_counts() {
    let punct = PunctureConfig::new(&Angle::pi_over(4), 128).unwrap();
    assert_eq!(omega_to_mpl(&w("3"), &punct).unwrap().len(), 4);
    assert_eq!(omega_to_mpl(&w("2,1"), &punct).unwrap().len(), 16);
    assert_eq!(omega_to_mpl(&w("1,2,3"), &punct).unwrap().len(), 64);
    let cfg = PrecisionConfig::new(30).unwrap();
    let v = omega_to_mpl(&w("3"), &punct).unwrap().evaluate(&cfg).unwrap();
    assert!(agreeing_digits(&v, &imag(pi(cfg.bits()))) > 30.0);
}

#[test]
fn depth_three_quadrature_matches_transport() {
    let cfg = PrecisionConfig::new(16).unwrap();
    let angle = Angle::pi_over(4);
    let t = build_table(Endpoint::I, &angle, 3, &cfg).unwrap();
    let word = w("2,3,1");
    let q = quadrature_oracle(&word, Endpoint::I, &angle, &cfg).unwrap();
    assert!(agreeing_digits(t.get(&word).unwrap(), &q) > 14.0);
}

#[test]
fn chen_split_matches_unsplit() {
    let cfg = PrecisionConfig::new(30).unwrap();
    let b = cfg.bits();
    let angle = Angle::pi_over(4);
    let zero = BigComplex::zero(b);
    let half = BigComplex::from_ratio(b, 1, 2);
    let one = BigComplex::one(b);
    let left = build_path(&zero, &half, &angle, 3, &cfg, Parallelism::Auto).unwrap();
    let right = build_path(&half, &one, &angle, 3, &cfg, Parallelism::Auto).unwrap();
    let joined = chen_compose(&left, &right).unwrap();
    let whole = build_table(Endpoint::One, &angle, 3, &cfg).unwrap();
    for (word, v) in whole.iter() {
        let j = joined.get(&word).unwrap();
        assert!(agreeing_digits(j, v) > 30.0, "{}", word);
        if word.len() == 1 {
            let sum = left.get(&word).unwrap() + right.get(&word).unwrap();
            assert!(agreeing_digits(&sum, v) > 30.0);
        }
    }
    // constant path on the right leaves the table unchanged
    let constant = build_path(&one, &one, &angle, 3, &cfg, Parallelism::Auto);
    assert!(constant.is_err() || {
        let c = constant.unwrap();
        let j = chen_compose(&whole, &c).unwrap();
        whole.iter().all(|(word, v)| agreeing_digits(j.get(&word).unwrap(), v) > 30.0)
    });
    assert!(chen_compose(&right, &left).is_err());
}

#[test]
fn sequential_and_parallel_agree() {
    let cfg = PrecisionConfig::new(25).unwrap();
    let angle = Angle::pi_over(4);
    let a = build_table_mode(&angle, &cfg, Parallelism::Auto);
    let s = build_table_mode(&angle, &cfg, Parallelism::Sequential);
    assert_eq!(a.values(), s.values());
}

fn build_table_mode(angle: &Angle, cfg: &PrecisionConfig, mode: Parallelism) -> lawson_core::OmegaTable {
    lawson_core::omega::build_table_with(Endpoint::One, angle, 4, cfg, mode).unwrap()
}

#[test]
fn alternating_zeta_examples() {
    let cfg = PrecisionConfig::new(40).unwrap();
    let b = cfg.bits();
    let z3 = zeta_real(3, b).unwrap();
    let v = zeta_signed(&[3], &[-1], &cfg).unwrap();
    assert!(agreeing_digits(&v, &BigComplex::from_real(z3 * 3u32 / -4i32)) > 40.0);
    let v = zeta_signed(&[2], &[1], &cfg).unwrap();
    let z2 = Float::with_val(b, pi(b).square_ref()) / 6u32;
    assert!(agreeing_digits(&v, &BigComplex::from_real(z2)) > 40.0);
}
