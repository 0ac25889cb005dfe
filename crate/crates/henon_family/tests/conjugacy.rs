use henon_family::{eval_map, Conjugacy, HenonParams, ThetaCoeffs};
use rand::{Rng, SeedableRng};

#[test]
fn swap_examples_and_involution() {
    let swap = Conjugacy::ThetaTilde;
    assert_eq!(swap.apply([1.0, 2.0, 3.0]).unwrap(), [3.0, 2.0, 1.0]);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let p = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        let twice = swap.apply(swap.apply(p).unwrap()).unwrap();
        assert_eq!(twice, p);
    }
}

#[test]
fn unit_rescaling_is_identity_and_zero_coeff_is_rejected() {
    let unit = Conjugacy::Theta(ThetaCoeffs::UNIT);
    assert_eq!(unit.apply([0.5, -2.0, 7.0]).unwrap(), [0.5, -2.0, 7.0]);
    let (q, m) = unit.apply_with_mu([1.0, 1.0, 1.0], -9.5).unwrap();
    assert_eq!(q, [1.0, 1.0, 1.0]);
    assert_eq!(m, -9.5);

    for bad in [
        ThetaCoeffs { a2: 0.0, ..ThetaCoeffs::UNIT },
        ThetaCoeffs { b2: 0.0, ..ThetaCoeffs::UNIT },
        ThetaCoeffs { c2: 0.0, ..ThetaCoeffs::UNIT },
        ThetaCoeffs { beta2: 0.0, ..ThetaCoeffs::UNIT },
    ] {
        assert!(Conjugacy::Theta(bad).apply([1.0; 3]).is_err());
    }
}

#[test]
fn rescaling_scales_each_coordinate_and_mu() {
    let c = ThetaCoeffs {
        a2: 2.0,
        b2: 3.0,
        c2: 4.0,
        beta2: 0.5,
    };
    let theta = Conjugacy::Theta(c);
    let (q, m) = theta.apply_with_mu([1.0, 1.0, 1.0], 2.0).unwrap();
    // x scale beta2*b2/a2 = 0.75, y scale beta2^2*b2 = 0.75, z scale 0.375.
    assert_eq!(q, [0.75, 0.75, 0.375]);
    assert_eq!(m, 1.5);

    let swap = Conjugacy::ThetaTilde;
    let (_, m2) = swap.apply_with_mu([0.0; 3], 2.0).unwrap();
    assert_eq!(m2, 2.0);
}

/// With eta = 0, conjugating the standard form by the x/z swap reproduces
/// the swapped form bitwise: both middle coordinates run the same ops.
#[test]
fn swap_conjugacy_identity_holds_bitwise_on_random_points() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0);
    let swap = Conjugacy::ThetaTilde;
    for _ in 0..10_000 {
        let mu = rng.gen_range(-10.0..-9.0);
        let kappa = rng.gen_range(0.0..1e-4);
        let xi = rng.gen_range(1.18..1.19);
        let std_form = HenonParams::standard(xi, mu, kappa, 0.0);
        let conj_form = HenonParams::conjugate(mu, kappa, xi);
        let p = [
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-40.0..0.0),
        ];
        let via_standard = swap
            .apply(eval_map(&std_form, swap.apply(p).unwrap()).unwrap())
            .unwrap();
        let direct = eval_map(&conj_form, p).unwrap();
        for k in 0..3 {
            assert_eq!(
                via_standard[k].to_bits(),
                direct[k].to_bits(),
                "coordinate {k} differs at {p:?}"
            );
        }
    }
}
