use geom_core::Interval;
use henon_family::{eval_map, fixed_point_pstar, BlenderBoxSpec, HenonParams};
use rand::{Rng, SeedableRng};

#[test]
fn degenerate_kappa_zero_matches_quadratic_formula() {
    let p = HenonParams::conjugate(-9.5, 0.0, 1.185);
    let fp = fixed_point_pstar(&p).unwrap();
    // Root of y^2 - y - 9.5 = 0 in the window: (1 + sqrt(39))/2.
    let reference = (1.0 + 39.0f64.sqrt()) / 2.0;
    assert!((fp.y_star.mid() - reference).abs() < 1e-12);
    assert!((fp.z_star.mid() - -19.581_075_671_347_016).abs() < 1e-9);
    assert!(fp.y_star.width() < 1e-10);
}

#[test]
fn frozen_enclosures_inside_the_parameter_box() {
    let p = HenonParams::conjugate(-9.5, 5e-5, 1.185);
    let fp = fixed_point_pstar(&p).unwrap();
    assert!((fp.y_star.mid() - 3.619_432_883_223_288).abs() < 1e-12);
    assert!((fp.z_star.mid() - -19.564_502_071_477_229).abs() < 1e-9);

    // Residual of the defining quadratic at the midpoint.
    let a = 1.0 + p.kappa / ((p.xi - 1.0) * (p.xi - 1.0));
    let y = fp.y_star.mid();
    assert!((a * y * y - y + p.mu).abs() < 1e-12);

    let q = HenonParams::conjugate(-9.9, 5e-5, 1.185);
    let fq = fixed_point_pstar(&q).unwrap();
    assert!((fq.y_star.mid() - 3.682_795_243_952_231).abs() < 1e-12);
    assert!((fq.z_star.mid() - -19.907_001_318_660_703).abs() < 1e-9);
    assert!(fq.y_star.width() < 1e-10);
    assert!(fq.z_star.width() < 1e-10);
}

#[test]
fn xi_near_one_pushes_the_point_far_below_the_box() {
    let p = HenonParams::conjugate(-9.9, 5e-5, 1.01);
    let fp = fixed_point_pstar(&p).unwrap();
    assert!((fp.z_star.mid() - -292.391_456_369_672_47).abs() < 1e-6);
    assert!(fp.z_star.hi() < -40.0);
}

#[test]
fn missing_root_and_degenerate_xi_are_reported() {
    let no_root = HenonParams::conjugate(-1.0, 5e-5, 1.185);
    let err = fixed_point_pstar(&no_root).unwrap_err();
    assert!(err.to_string().contains("no blender fixed point"));

    let xi_one = HenonParams::conjugate(-9.5, 5e-5, 1.0);
    assert!(fixed_point_pstar(&xi_one).is_err());
}

#[test]
fn random_box_parameters_have_enclosures_in_the_proof_ranges() {
    let spec = BlenderBoxSpec::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xf1);
    let window = Interval::new(-21.2, -12.6).unwrap();
    for _ in 0..100 {
        let p = HenonParams::conjugate(
            rng.gen_range(spec.mu.lo()..spec.mu.hi()),
            rng.gen_range(spec.kappa.lo()..spec.kappa.hi()),
            rng.gen_range(spec.xi.lo()..spec.xi.hi()),
        );
        let fp = fixed_point_pstar(&p).unwrap();
        assert_eq!(fp.x_star.lo(), fp.y_star.lo());
        assert_eq!(fp.x_star.hi(), fp.y_star.hi());
        assert!(2.4 < fp.y_star.lo() && fp.y_star.hi() < 3.8);
        assert!(window.contains_interval(&fp.z_star));
    }
}

#[test]
fn whole_line_above_the_point_collapses_onto_it() {
    let p = HenonParams::conjugate(-9.9, 5e-5, 1.185);
    let fp = fixed_point_pstar(&p).unwrap();
    let star = [fp.y_star.mid(), fp.y_star.mid(), fp.z_star.mid()];

    // The point is fixed up to enclosure width.
    let img = eval_map(&p, star).unwrap();
    for k in 0..3 {
        assert!((img[k] - star[k]).abs() < 1e-9, "coordinate {k}");
    }

    // Every point of the line {(x, y*, z*)} lands on the fixed point:
    // the image never reads x.
    for x in [-4.0, -1.0, 0.0, 2.5, 4.0] {
        let moved = eval_map(&p, [x, star[1], star[2]]).unwrap();
        for k in 0..3 {
            assert!((moved[k] - star[k]).abs() < 1e-9);
        }
    }
}
