use std::sync::OnceLock;

use lawson_core::mpl::{li, MplSpec};
use lawson_core::numerics::{pi, Angle, BigComplex, PrecisionConfig};
use lawson_core::omega::{build_table, Endpoint};
use lawson_core::verify::{inversion_residuals, shuffle_residual, stuffle_residual};
use lawson_core::words::{shuffle, MplLetter};
use lawson_core::{LaurentPoly, OmegaTable, Part, Word};
use proptest::prelude::*;
use rug::Float;

const DIGITS: u32 = 40;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::new(DIGITS).unwrap()
}

fn table6() -> &'static OmegaTable {
    static T: OnceLock<OmegaTable> = OnceLock::new();
    T.get_or_init(|| build_table(Endpoint::One, &Angle::pi_over(4), 6, &cfg()).unwrap())
}

fn root24(k: i64, bits: u32) -> BigComplex {
    BigComplex::cis(&(Float::with_val(bits, pi(bits) * k) / 24u32))
}

fn word_pair() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (1usize..=5).prop_flat_map(|n| {
        let m = 1..=(6 - n);
        (prop::collection::vec(1u8..=3, n), m.prop_flat_map(|m| prop::collection::vec(1u8..=3, m)))
    })
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<(u32, i64)>> {
    let nonzero = (-23i64..=24).prop_filter("argument 1 diverges", |k| *k != 0);
    prop::collection::vec((1u32..=2, nonzero), 1..=max_len)
}

fn to_letters(v: &[(u32, i64)], bits: u32) -> Vec<MplLetter> {
    v.iter().map(|&(n, k)| MplLetter::new(n, root24(k, bits))).collect()
}

fn poly() -> impl Strategy<Value = Vec<(i32, i64, i64)>> {
    prop::collection::vec((-4i32..=4, -9i64..=9, -9i64..=9), 0..6)
}

fn to_poly(v: &[(i32, i64, i64)], bits: u32) -> LaurentPoly {
    LaurentPoly::from_terms(
        bits,
        v.iter().map(|&(d, re, im)| (d, BigComplex::new(Float::with_val(bits, re), Float::with_val(bits, im) / 7u32))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn omega_table_respects_shuffle((u, v) in word_pair()) {
        let (u, v) = (Word(u), Word(v));
        let r = shuffle_residual(&u, &v, table6()).unwrap();
        prop_assert!(r < 1e-34, "Ω_{} Ω_{}: residual {}", u, v, r);
    }

    #[test]
    fn shuffle_counts_are_binomial((u, v) in word_pair()) {
        let s = shuffle(&Word(u.clone()), &Word(v.clone()));
        let (n, m) = (u.len() as i64, v.len() as i64);
        let binom = (1..=m).fold(1i64, |acc, k| acc * (n + k) / k);
        prop_assert_eq!(s.total_multiplicity(), binom);
        prop_assert_eq!(s, shuffle(&Word(v), &Word(u)));
    }

    #[test]
    fn laurent_involutions(p in poly(), q in poly()) {
        let b = 128;
        let (p, q) = (to_poly(&p, b), to_poly(&q, b));
        prop_assert_eq!(p.star().star(), p.clone());
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!(p.flip().flip(), p.clone());
        let pq = &p * &q;
        prop_assert!(pq.star().distance(&(&p.star() * &q.star())) < 1e-30);
        prop_assert!(pq.bar().distance(&(&p.bar() * &q.bar())) < 1e-30);
        let parts = &(&p.project(Part::Minus) + &p.project(Part::Zero)) + &p.project(Part::Plus);
        prop_assert_eq!(parts, p.clone());
        prop_assert_eq!(p.project(Part::Geq0), &p.project(Part::Zero) + &p.project(Part::Plus));
    }

    #[test]
    fn divrem_reconstructs(p in poly()) {
        let b = 128;
        let p = to_poly(&p, b).project(Part::Geq0);
        let (q, r) = p.divrem_l2m1().unwrap();
        prop_assert!(r.max_degree().map_or(true, |d| d <= 1));
        let l2m1 = LaurentPoly::from_terms(b, [(2, BigComplex::one(b)), (0, BigComplex::from_i64(b, -1))]);
        prop_assert!((&(&q * &l2m1) + &r).distance(&p) < 1e-30);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn mpl_respects_stuffle(u in letters(2), v in letters(2)) {
        let c = cfg();
        let (u, v) = (to_letters(&u, c.bits()), to_letters(&v, c.bits()));
        let r = stuffle_residual(&u, &v, &c).unwrap();
        prop_assert!(r < 1e-34, "residual {}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn depth_two_inversion(k1 in 2i64..=46, k2 in 2i64..=46) {
        prop_assume!((k1 + k2) % 48 > 1 && (k1 + k2) % 48 < 47);
        let c = cfg();
        let r = inversion_residuals(&root24(k1, c.bits()), &root24(k2, c.bits()), &c).unwrap();
        for x in r {
            prop_assert!(x.abs() < 1e-34);
        }
    }

    #[test]
    fn distribution_relation(s in 1u32..=3, k in 1i64..=47, rad in 1u32..=4) {
        // 2^{1−s} Li_s(z²) = Li_s(z) + Li_s(−z)
        prop_assume!(!(s == 1 && (k == 24 || rad == 4)));
        let c = cfg();
        let b = c.bits();
        let z = root24(k, b).scale(&(Float::with_val(b, rad) / 4u32));
        let one = |x: BigComplex| li(&MplSpec::new(vec![s], vec![x]).unwrap(), &c).unwrap();
        let lhs = one(&z * &z).scale(&(Float::with_val(b, 2u32).pow(1 - s as i32)));
        let rhs = &one(z.clone()) + &one(-z);
        prop_assert!((&lhs - &rhs).abs() < 1e-34);
    }

    #[test]
    fn zagier_depth_two(xr in -30i64..=30, xi in -30i64..=30, yr in -30i64..=30, yi in -30i64..=30) {
        // Li_{1,1}(x, y) = Li₁(x)Li₁(y) + Li₂(−x/(1−x)) − Li₂(x(y−1)/(1−x))
        let c = cfg();
        let b = c.bits();
        let x = BigComplex::new(Float::with_val(b, xr) / 140u32, Float::with_val(b, xi) / 140u32);
        let y = BigComplex::new(Float::with_val(b, yr) / 140u32, Float::with_val(b, yi) / 140u32);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let l = |ix: Vec<u32>, z: Vec<BigComplex>| li(&MplSpec::new(ix, z).unwrap(), &c).unwrap();
        let one_m_x = &BigComplex::one(b) - &x;
        let lhs = l(vec![1, 1], vec![x.clone(), y.clone()]);
        let mut rhs = &l(vec![1], vec![x.clone()]) * &l(vec![1], vec![y.clone()]);
        rhs += &l(vec![2], vec![-(&x * &one_m_x.recip())]);
        let ym1 = &y - &BigComplex::one(b);
        rhs -= &l(vec![2], vec![&(&x * &ym1) * &one_m_x.recip()]);
        prop_assert!((&lhs - &rhs).abs() < 1e-34, "x={} y={}", x, y);
    }
}

use rug::ops::Pow;
