//! Subdivision engine: leaf accounting, partition soundness, determinism.

use geom_core::{
    boundary_decomposition, subdivide, subdivide_verdict, BoundaryClass, IBox3, Interval,
    LeafVerdict,
};

fn unit_box() -> IBox3 {
    IBox3::new(
        Interval::new(0.0, 1.0).unwrap(),
        Interval::new(0.0, 1.0).unwrap(),
        Interval::new(0.0, 1.0).unwrap(),
    )
}

fn volume(b: &IBox3) -> f64 {
    b.x.width() * b.y.width() * b.z.width()
}

// An always-false predicate splits every level into 8 octants: at depth 2
// exactly 8^2 = 64 unresolved leaves remain and nothing is certified.
#[test]
fn always_false_predicate_yields_64_unresolved_leaves_at_depth_2() {
    let report = subdivide(&unit_box(), &|_b| false, 2);
    assert_eq!(report.certified.len(), 0);
    assert_eq!(report.failed.len(), 0);
    assert_eq!(report.unresolved.len(), 64);
    let total: f64 = report.unresolved.iter().map(volume).sum();
    assert!((total - 1.0).abs() < 1e-12, "leaves must tile the root");
}

#[test]
fn always_true_certifies_the_root() {
    let report = subdivide(&unit_box(), &|_b| true, 5);
    assert_eq!(report.certified.len(), 1);
    assert!(report.unresolved.is_empty());
}

// A predicate that certifies small boxes: all leaves end certified, the
// partition tiles the root, and no leaf is dropped.
#[test]
fn partition_is_exact_and_nothing_is_dropped() {
    let pred = |b: &IBox3| b.widest_width() <= 0.26;
    let report = subdivide(&unit_box(), &pred, 6);
    assert!(report.unresolved.is_empty());
    let total: f64 = report.certified.iter().map(volume).sum();
    assert!((total - 1.0).abs() < 1e-12);

    // Pairwise interior-disjoint: overlap volume of any two leaves is zero.
    for (i, a) in report.certified.iter().enumerate() {
        for b in report.certified.iter().skip(i + 1) {
            if let Some(ix) = a.intersect(b) {
                assert_eq!(volume(&ix), 0.0, "leaves {a} and {b} overlap");
            }
        }
    }
}

#[test]
fn depth_cap_reports_unresolved_not_dropped() {
    // Certify only boxes entirely inside a ball; boxes crossing the sphere
    // stay unresolved at the cap. Certified + unresolved must tile the root.
    let pred = |b: &IBox3| {
        let far = b
            .corners()
            .iter()
            .map(|c| c.iter().map(|v| v * v).sum::<f64>())
            .fold(0.0f64, f64::max);
        far <= 0.8
    };
    let report = subdivide(&unit_box(), &pred, 3);
    assert!(!report.unresolved.is_empty());
    let total: f64 = report
        .certified
        .iter()
        .chain(report.unresolved.iter())
        .map(volume)
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn verdict_variant_records_failures_without_refining_them() {
    let pred = |b: &IBox3| {
        if b.x.hi() <= 0.5 {
            LeafVerdict::Failed
        } else if b.widest_width() <= 0.26 {
            LeafVerdict::Certified
        } else {
            LeafVerdict::Unknown
        }
    };
    let report = subdivide_verdict(&unit_box(), &pred, 6);
    assert!(!report.failed.is_empty());
    let total: f64 = report
        .certified
        .iter()
        .chain(report.unresolved.iter())
        .chain(report.failed.iter())
        .map(volume)
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn subdivision_is_deterministic() {
    let pred = |b: &IBox3| b.widest_width() <= 0.3;
    let a = subdivide(&unit_box(), &pred, 5);
    let b = subdivide(&unit_box(), &pred, 5);
    assert_eq!(a.certified, b.certified);
    assert_eq!(a.unresolved, b.unresolved);
}

#[test]
fn boundary_classes_nest_as_expected() {
    let b = IBox3::new(
        Interval::new(-4.0, 4.0).unwrap(),
        Interval::new(-4.0, 4.0).unwrap(),
        Interval::new(-40.0, 0.0).unwrap(),
    );
    let pieces = boundary_decomposition(&b);
    let ss = &pieces[0];
    let uu = &pieces[1];
    let u = &pieces[2];
    assert_eq!(ss.class, BoundaryClass::StrongStable);
    assert_eq!(uu.class, BoundaryClass::StrongUnstable);
    assert_eq!(u.class, BoundaryClass::Unstable);
    assert_eq!(ss.faces.len(), 2);
    assert_eq!(uu.faces.len(), 2);
    assert_eq!(u.faces.len(), 4);
    // Every strong-unstable face appears among the unstable faces.
    for f in &uu.faces {
        assert!(u.faces.iter().any(|g| g == f));
    }
    // Strong-stable faces are degenerate in x only.
    for f in &ss.faces {
        assert_eq!(f.x.width(), 0.0);
        assert!(f.y.width() > 0.0 && f.z.width() > 0.0);
    }
}
