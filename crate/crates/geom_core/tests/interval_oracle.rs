//! Containment oracle for the outward-rounded interval arithmetic: every
//! operation's enclosure must contain the exact rational result. The f64
//! operands are exact rationals, so the oracle has no rounding of its own.

use geom_core::Interval;
use num::rational::BigRational;
use num::FromPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

fn assert_contains(i: &Interval, exact: &BigRational, what: &str) {
    assert!(
        rat(i.lo()) <= *exact && *exact <= rat(i.hi()),
        "{what}: exact result escaped the enclosure {i}"
    );
}

/// Draws a finite f64 spanning many magnitudes, including negatives, zeros,
/// and values near each other (to stress cancellation).
fn draw(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..8) {
        0 => 0.0,
        1 => rng.gen_range(-4.0..4.0),
        2 => rng.gen_range(-1e-8..1e-8),
        3 => rng.gen_range(-1e8..1e8),
        4 => (rng.gen_range(-50i32..50) as f64) / 8.0,
        5 => rng.gen_range(0.0..1.0),
        6 => -rng.gen_range(0.0..1.0),
        _ => rng.gen_range(-40.0..0.0),
    }
}

fn draw_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = draw(rng);
    let b = if rng.gen_bool(0.2) { a } else { draw(rng) };
    Interval::new(a.min(b), a.max(b)).unwrap()
}

fn draw_point_in(rng: &mut ChaCha8Rng, i: &Interval) -> f64 {
    if i.width() == 0.0 || rng.gen_bool(0.3) {
        if rng.gen_bool(0.5) {
            i.lo()
        } else {
            i.hi()
        }
    } else {
        rng.gen_range(i.lo()..=i.hi())
    }
}

// 10^5 random samples across all operations: for points a in A, b in B the
// exact rational a op b must lie inside (A op B).
#[test]
fn containment_oracle_100k() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea11);
    for case in 0..100_000u32 {
        let ia = draw_interval(&mut rng);
        let ib = draw_interval(&mut rng);
        let a = draw_point_in(&mut rng, &ia);
        let b = draw_point_in(&mut rng, &ib);
        let (ra, rb) = (rat(a), rat(b));

        assert_contains(&ia.add(&ib), &(&ra + &rb), "add");
        assert_contains(&ia.sub(&ib), &(&ra - &rb), "sub");
        assert_contains(&ia.mul(&ib), &(&ra * &rb), "mul");
        assert_contains(&ia.sqr(), &(&ra * &ra), "sqr");
        assert_contains(&ia.neg(), &(-&ra), "neg");

        if !ib.contains(0.0) {
            let q = ia.div(&ib).expect("denominator avoids zero");
            assert_contains(&q, &(&ra / &rb), "div");
        } else {
            assert!(ia.div(&ib).is_err(), "div by zero-containing must error");
        }

        // sqrt oracle: enclosure endpoints must bracket sqrt(a) via squaring.
        if ia.hi() >= 0.0 {
            let s = ia.sqrt().expect("nonnegative part exists");
            let ann = a.max(0.0);
            let rann = rat(ann);
            assert!(
                rat(s.lo()) * rat(s.lo()) <= rann || s.lo() == 0.0,
                "sqrt lower bound too high at case {case}"
            );
            assert!(
                rat(s.hi()) * rat(s.hi()) >= rann,
                "sqrt upper bound too low at case {case}"
            );
        }
    }
}

#[test]
fn hull_intersect_and_gap_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    for _ in 0..20_000 {
        let a = draw_interval(&mut rng);
        let b = draw_interval(&mut rng);
        let h = a.hull(&b);
        assert!(h.contains_interval(&a) && h.contains_interval(&b));
        match a.intersect(&b) {
            Some(i) => {
                assert!(a.contains_interval(&i) && b.contains_interval(&i));
                assert!(!a.is_disjoint(&b));
                assert!(a.gap(&b) <= 0.0);
            }
            None => {
                assert!(a.is_disjoint(&b));
                assert!(a.gap(&b) > 0.0);
            }
        }
    }
}

#[test]
fn degenerate_point_intervals_are_exact_under_negation() {
    let p = Interval::point(1.25);
    assert_eq!(p.neg().lo(), -1.25);
    assert_eq!(p.neg().hi(), -1.25);
    assert_eq!(p.width(), 0.0);
}
