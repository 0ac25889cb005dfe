//! Extended-precision dyadic scalar: exactness, rounding direction, and the
//! rigorous interval logarithm.

use geom_core::{DyInterval, Dyadic, Round};
use num::rational::BigRational;
use num::{FromPrimitive, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

#[test]
fn f64_round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let x: f64 = rng.gen_range(-1e12..1e12);
        assert_eq!(Dyadic::from_f64(x).to_f64(), x);
    }
    for x in [0.0, 1.0, -1.0, 0.1, f64::MIN_POSITIVE, 5e-324, 1e300] {
        assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        assert_eq!(Dyadic::from_f64(-x).to_f64(), -x);
    }
}

#[test]
fn add_and_mul_are_exact_at_full_precision() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5_000 {
        let a: f64 = rng.gen_range(-1e6..1e6);
        let b: f64 = rng.gen_range(-1e6..1e6);
        let (da, db) = (Dyadic::from_f64(a), Dyadic::from_f64(b));
        let sum = da.add(&db, u32::MAX, Round::Nearest);
        let prod = da.mul(&db, u32::MAX, Round::Nearest);
        assert_eq!(sum.to_rational(), rat(a) + rat(b));
        assert_eq!(prod.to_rational(), rat(a) * rat(b));
    }
}

#[test]
fn directed_division_brackets_the_exact_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5_000 {
        let a: f64 = rng.gen_range(-1e6..1e6);
        let mut b: f64 = rng.gen_range(-1e6..1e6);
        if b == 0.0 {
            b = 1.0;
        }
        let (da, db) = (Dyadic::from_f64(a), Dyadic::from_f64(b));
        let exact = rat(a) / rat(b);
        for prec in [24u32, 53, 113, 256] {
            let lo = da.div(&db, prec, Round::Down).unwrap();
            let hi = da.div(&db, prec, Round::Up).unwrap();
            assert!(lo <= hi);
            assert!(
                lo.to_rational() <= exact && exact <= hi.to_rational(),
                "directed quotient endpoints must bracket the exact value"
            );
        }
        let near = da.div(&db, 53, Round::Nearest).unwrap();
        // Nearest at 53 bits sits within one part in 2^52 of the truth.
        let err = (near.to_rational() - &exact).abs();
        let tol = exact.abs() * rat((2f64).powi(-50)) + rat(f64::MIN_POSITIVE);
        assert!(err <= tol);
    }
}

/// Parse a decimal literal into an exact rational.
fn rat_dec(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: String = format!("{int}{frac}");
    let num: num::BigInt = digits.parse().unwrap();
    let den = num::BigInt::from(10u32).pow(frac.len() as u32);
    BigRational::new(num, den)
}

#[test]
fn ln_2_and_ln_10_enclosures_are_tight_and_correct() {
    // 40-digit truncations; each is within 1e-39 of the true value, so the
    // enclosure (far tighter) must land inside the +/-1e-38 window around it.
    let ref2 = rat_dec("0.6931471805599453094172321214581765680755");
    let ref10 = rat_dec("2.302585092994045684017991454684364207601");
    let slack = BigRational::new(1.into(), num::BigInt::from(10u32).pow(38));
    let two = DyInterval::from_f64(2.0);
    let ten = DyInterval::from_f64(10.0);
    for prec in [128u32, 256, 320] {
        let l2 = two.ln(prec).unwrap();
        let l10 = ten.ln(prec).unwrap();
        for (l, r) in [(&l2, &ref2), (&l10, &ref10)] {
            assert!(l.lo.to_rational() >= r - &slack);
            assert!(l.hi.to_rational() <= r + &slack);
            assert!(l.lo <= l.hi);
        }
        // Width below 2^-(prec-8).
        let w2 = l2.width(64);
        assert!(
            w2.mag_exp() < -(prec as i64 - 8),
            "ln2 width too large at prec {prec}: exp {}",
            w2.mag_exp()
        );
        let w10 = l10.width(64);
        assert!(w10.mag_exp() < -(prec as i64 - 8));
    }
}

#[test]
fn ln_handles_wide_magnitudes_and_rejects_nonpositive() {
    for x in [1e-300f64, 1e-10, 0.5, 1.0, 1.5, 3.0, 1e10, 1e300] {
        let i = DyInterval::from_f64(x);
        let l = i.ln(192).unwrap();
        let expect = x.ln();
        assert!(
            (l.to_f64_mid() - expect).abs() <= 1e-12 * (1.0 + expect.abs()),
            "ln({x}) enclosure mid {} vs {expect}",
            l.to_f64_mid()
        );
        // Exact value inside: compare against f64 ln nudged both ways.
        assert!(l.lo.to_f64() <= expect + 1e-12 * (1.0 + expect.abs()));
        assert!(l.hi.to_f64() >= expect - 1e-12 * (1.0 + expect.abs()));
    }
    assert!(DyInterval::from_f64(0.0).ln(128).is_err());
    assert!(DyInterval::from_f64(-1.0).ln(128).is_err());
}

#[test]
fn ln_of_exact_power_of_two_is_a_multiple_of_ln2() {
    let x = DyInterval::from_f64(1024.0); // 2^10
    let l = x.ln(256).unwrap();
    let l2 = DyInterval::from_f64(2.0).ln(256).unwrap();
    let ten_l2 = l2.scale_i64(10, 256);
    // The enclosures must overlap (both contain 10 ln 2).
    assert!(l.lo <= ten_l2.hi && ten_l2.lo <= l.hi);
}

#[test]
fn sci_representation_handles_extreme_exponents() {
    // 2^-100000 is far below f64 range but must report a sane scientific
    // decomposition.
    let tiny = Dyadic::one().mul_pow2(-100_000);
    let (m, e) = tiny.to_sci();
    assert!(m >= 1.0 && m < 10.0);
    // log10(2^-100000) = -30102.999...
    assert_eq!(e, -30_103);
    let huge = Dyadic::from_i64(3).mul_pow2(200_000);
    let (m2, e2) = huge.to_sci();
    assert!(m2 >= 1.0 && m2 < 10.0);
    assert_eq!(e2, 60_206);
}

#[test]
fn interval_ops_round_outward() {
    let a = DyInterval::from_f64(1.0);
    let b = DyInterval::from_f64(3.0);
    let q = a.div(&b, 64).unwrap();
    // 1/3 is not dyadic: the enclosure must be proper and contain 1/3.
    assert!(q.lo < q.hi);
    let third = BigRational::new(1.into(), 3.into());
    assert!(q.lo.to_rational() <= third && third <= q.hi.to_rational());
}
