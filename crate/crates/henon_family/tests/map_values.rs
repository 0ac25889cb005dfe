use geom_core::{IBox3, Interval};
use henon_family::{
    apply_matrix, eval_jacobian, eval_jacobian_box, eval_map, eval_map_box, Form, HenonParams,
};
use rand::{Rng, SeedableRng};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn conjugate_form_frozen_values() {
    let p = HenonParams::conjugate(-9.5, 5e-5, 1.185);

    // All quadratic terms vanish at the origin.
    let at_origin = eval_map(&p, [0.0, 0.0, 0.0]).unwrap();
    assert_eq!(at_origin, [0.0, -9.5, 0.0]);

    let img = eval_map(&p, [1.0, 2.0, -10.0]).unwrap();
    assert_eq!(img[0], 2.0);
    assert!(close(img[1], -5.495, 1e-12));
    assert!(close(img[2], -9.85, 1e-12));
}

#[test]
fn standard_form_frozen_value() {
    let p = HenonParams::standard(1.185, -9.5, 5e-5, 0.01);
    let img = eval_map(&p, [1.0, 2.0, 0.0]).unwrap();
    assert!(close(img[0], 3.185, 1e-12));
    assert!(close(img[1], -5.47995, 1e-12));
    assert_eq!(img[2], 2.0);
}

#[test]
fn conjugate_form_rejects_shear() {
    let p = HenonParams {
        xi: 1.185,
        mu: -9.5,
        kappa: 5e-5,
        eta: 0.01,
        form: Form::Conjugate,
    };
    assert!(eval_map(&p, [0.0; 3]).is_err());
    assert!(eval_map_box(&p, &delta()).is_err());
    assert!(eval_jacobian(&p, [0.0; 3]).is_err());
}

#[test]
fn jacobian_frozen_values() {
    let p = HenonParams::conjugate(-9.9, 5e-5, 1.185);
    let j = eval_jacobian(&p, [7.0, 3.0, -10.0]).unwrap();
    assert_eq!(j[0], [0.0, 1.0, 0.0]);
    assert_eq!(j[2], [0.0, 1.0, 1.185]);
    assert_eq!(j[1][0], 0.0);
    assert_eq!(j[1][1], 6.0);
    assert!(close(j[1][2], -0.001, 1e-15));

    // The x-axis is the kernel; the y-direction maps across all rows.
    assert_eq!(apply_matrix(&j, [1.0, 0.0, 0.0]), [0.0, 0.0, 0.0]);
    assert_eq!(apply_matrix(&j, [0.0, 1.0, 0.0]), [1.0, 6.0, 1.0]);
}

fn delta() -> IBox3 {
    IBox3::new(
        Interval::new(-4.0, 4.0).unwrap(),
        Interval::new(-4.0, 4.0).unwrap(),
        Interval::new(-40.0, 0.0).unwrap(),
    )
}

#[test]
fn jacobian_matches_central_differences() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7ac0b1a);
    let params = [
        HenonParams::conjugate(-9.9, 5e-5, 1.185),
        HenonParams::standard(1.185, -9.9, 5e-5, 3e-4),
    ];
    let h = 1e-6;
    for _ in 0..1000 {
        let p = [
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-40.0..0.0),
        ];
        for params in &params {
            let j = eval_jacobian(params, p).unwrap();
            for col in 0..3 {
                let mut hi = p;
                let mut lo = p;
                hi[col] += h;
                lo[col] -= h;
                let fh = eval_map(params, hi).unwrap();
                let fl = eval_map(params, lo).unwrap();
                for row in 0..3 {
                    let diff = (fh[row] - fl[row]) / (2.0 * h);
                    let tol = 1e-6 * (1.0 + j[row][col].abs());
                    assert!(
                        (diff - j[row][col]).abs() <= tol,
                        "row {row} col {col} at {p:?}: {diff} vs {}",
                        j[row][col]
                    );
                }
            }
        }
    }
}

#[test]
fn box_evaluations_enclose_point_evaluations() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xb0c5);
    let params = [
        HenonParams::conjugate(-9.9, 5e-5, 1.185),
        HenonParams::standard(1.185, -9.9, 5e-5, 3e-4),
    ];
    for _ in 0..200 {
        let x0 = rng.gen_range(-4.0..3.0);
        let y0 = rng.gen_range(-4.0..3.0);
        let z0 = rng.gen_range(-40.0..-1.0);
        let b = IBox3::new(
            Interval::new(x0, x0 + rng.gen_range(0.0..1.0)).unwrap(),
            Interval::new(y0, y0 + rng.gen_range(0.0..1.0)).unwrap(),
            Interval::new(z0, z0 + rng.gen_range(0.0..1.0)).unwrap(),
        );
        for params in &params {
            let ib = eval_map_box(params, &b).unwrap();
            let jb = eval_jacobian_box(params, &b).unwrap();
            for _ in 0..20 {
                let p = [
                    rng.gen_range(b.x.lo()..=b.x.hi()),
                    rng.gen_range(b.y.lo()..=b.y.hi()),
                    rng.gen_range(b.z.lo()..=b.z.hi()),
                ];
                assert!(ib.contains_point(eval_map(params, p).unwrap()));
                let j = eval_jacobian(params, p).unwrap();
                for r in 0..3 {
                    for c in 0..3 {
                        assert!(jb[r][c].contains(j[r][c]));
                    }
                }
            }
        }
    }
}
