//! Exact cone membership and interval cone-image certification.

use geom_core::{
    cone_contains, cone_contains_interior, cone_mapped_into_interior, Cone, ConeCheckConfig,
    ConeKind, Interval,
};
use proptest::prelude::*;

fn cone(kind: ConeKind, theta: f64) -> Cone {
    Cone::new(kind, theta).unwrap()
}

fn pt(x: f64) -> Interval {
    Interval::point(x)
}

fn matrix(rows: [[f64; 3]; 3]) -> [[Interval; 3]; 3] {
    rows.map(|r| r.map(pt))
}

#[test]
fn membership_examples() {
    let uu = cone(ConeKind::Uu, 2.0);
    let u = cone(ConeKind::U, 2.0);
    let s = cone(ConeKind::S, 2.0);

    assert!(cone_contains(&uu, [0.0, 1.0, 0.0]));
    assert!(!cone_contains(&u, [1.0, 1.0, 0.0]));
    assert!(cone_contains(&s, [1.0, 0.0, 0.0]));

    // The zero vector belongs to every cone but no interior.
    for c in [&uu, &u, &s] {
        assert!(cone_contains(c, [0.0; 3]));
        assert!(!cone_contains_interior(c, [0.0; 3]));
    }

    // Exact boundary: 2|u| = sqrt(v^2+w^2) at (1, 2, 0).
    assert!(cone_contains(&u, [1.0, 2.0, 0.0]));
    assert!(!cone_contains_interior(&u, [1.0, 2.0, 0.0]));
    assert!(cone_contains_interior(&u, [0.999, 2.0, 0.0]));
}

#[test]
fn uu_cone_is_inside_u_cone() {
    let uu = cone(ConeKind::Uu, 2.0);
    let u = cone(ConeKind::U, 2.0);
    // Deterministic sweep over the uu section: (a, 1, b) with a^2+b^2 < 1/4.
    // The gate stays strictly inside in integer arithmetic because i/40 is not
    // an exact binary fraction; rounding could push circle points just outside.
    for i in -20i32..=20 {
        for j in -20i32..=20 {
            if i * i + j * j < 400 {
                let a = f64::from(i) / 40.0;
                let b = f64::from(j) / 40.0;
                assert!(cone_contains(&uu, [a, 1.0, b]));
                assert!(cone_contains(&u, [a, 1.0, b]));
            }
        }
    }
    // Exactly representable boundary points of the section circle.
    for (a, b) in [(0.5, 0.0), (-0.5, 0.0), (0.0, 0.5), (0.0, -0.5)] {
        assert!(cone_contains(&uu, [a, 1.0, b]));
        assert!(cone_contains(&u, [a, 1.0, b]));
    }
}

// The u-cone is not convex: two members whose average escapes.
#[test]
fn u_cone_not_convex_witness() {
    let u = cone(ConeKind::U, 2.0);
    assert!(cone_contains(&u, [1.0, 2.0, 0.0]));
    assert!(cone_contains(&u, [1.0, 0.0, 2.0]));
    assert!(!cone_contains(&u, [1.0, 1.0, 1.0]));
}

#[test]
fn identity_cannot_map_into_interior() {
    let uu = cone(ConeKind::Uu, 2.0);
    let m = matrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    let cfg = ConeCheckConfig {
        max_depth: 6,
        ..ConeCheckConfig::default()
    };
    assert!(!cone_mapped_into_interior(&uu, &m, &uu, 0.1, &cfg));
}

#[test]
fn transverse_contraction_certifies() {
    let uu = cone(ConeKind::Uu, 2.0);
    let m = matrix([[0.1, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.1]]);
    assert!(cone_mapped_into_interior(
        &uu,
        &m,
        &uu,
        0.1,
        &ConeCheckConfig::default()
    ));
}

// Derivative rows of the family at a hyperbolic interior point
// (y = 3, z = -10, kappa = 5e-5, xi = 1.185): the uu-cone maps strictly
// inside itself with room to spare.
#[test]
fn family_jacobian_preserves_uu_cone() {
    let uu = cone(ConeKind::Uu, 2.0);
    let m = matrix([
        [0.0, 1.0, 0.0],
        [0.0, 6.0, -0.001],
        [0.0, 1.0, 1.185],
    ]);
    assert!(cone_mapped_into_interior(
        &uu,
        &m,
        &uu,
        0.5,
        &ConeCheckConfig::default()
    ));
}

// Same matrix, strong-stable target: the first column vanishes identically
// (the map collapses the u axis), so the kernel certificate applies.
#[test]
fn kernel_certificate_for_s_cone_target() {
    let s = cone(ConeKind::S, 2.0);
    let m = matrix([
        [0.0, 1.0, 0.0],
        [0.0, 6.0, -0.001],
        [0.0, 1.0, 1.185],
    ]);
    assert!(cone_mapped_into_interior(
        &s,
        &m,
        &s,
        0.5,
        &ConeCheckConfig::default()
    ));
}

// A certificate must never be produced when the image provably pokes out:
// a rotation by 90 degrees sends the uu axis onto the w axis.
#[test]
fn rotation_is_rejected() {
    let uu = cone(ConeKind::Uu, 2.0);
    let m = matrix([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]);
    let cfg = ConeCheckConfig {
        max_depth: 4,
        ..ConeCheckConfig::default()
    };
    assert!(!cone_mapped_into_interior(&uu, &m, &uu, 0.0, &cfg));
}

proptest! {
    // Membership is exactly scale- and negation-invariant (the defining
    // inequality is homogeneous of degree two).
    #[test]
    fn membership_is_homogeneous(
        u in -4.0f64..4.0, v in -4.0f64..4.0, w in -4.0f64..4.0,
        k in prop::sample::select(vec![0.5f64, 2.0, 4.0, 0.25]),
        kind in prop::sample::select(vec![ConeKind::U, ConeKind::Uu, ConeKind::S]),
    ) {
        let c = cone(kind, 2.0);
        let p = [u, v, w];
        let scaled = [k * u, k * v, k * w];
        let negated = [-u, -v, -w];
        prop_assert_eq!(cone_contains(&c, p), cone_contains(&c, scaled));
        prop_assert_eq!(cone_contains(&c, p), cone_contains(&c, negated));
    }

    // Every certified cone-image claim is checkable pointwise: if the
    // sweep certifies uu -> uu, then sampled uu members map to interior
    // members.
    #[test]
    fn certificates_hold_pointwise(
        a in -0.49f64..0.49, b in -0.49f64..0.49,
        d in 0.05f64..0.45,
    ) {
        let uu = cone(ConeKind::Uu, 2.0);
        let m = matrix([[d, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, d]]);
        prop_assume!(a * a + b * b <= 0.25);
        prop_assert!(cone_mapped_into_interior(&uu, &m, &uu, 0.05, &ConeCheckConfig::default()));
        let img = [d * a, 1.0, d * b];
        prop_assert!(cone_contains_interior(&uu, img));
    }
}
