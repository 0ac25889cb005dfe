//! Disjointness conditions H1 and H2.
//!
//! H1 keeps the region A away from the strong-stable boundary faces
//! x = +-4 and from the images of the unstable boundary (the faces y = +-4
//! and z in {0, -40}). H2 keeps B away from the top face z = 0, from
//! x = +-4, and from the images of the faces y = +-4. Each clause is checked
//! by sweeping the face with an adaptive grid and certifying that every
//! image box is disjoint from every enclosure box of the target region; a
//! clause fails only on a certified witness, a face point whose image
//! provably lands inside the target.

use geom_core::{IBox3, Interval};
use henon_family::HenonParams;

use crate::emap::EffectiveMap;
use crate::error::Result;
use crate::region::{compute_ab, AbEnclosures};
use crate::verdict::{ConditionReport, Verdict};

#[derive(Debug, Clone)]
pub struct H12Report {
    pub h1: ConditionReport,
    pub h2: ConditionReport,
    /// One entry per clause, in the order they were checked.
    pub clauses: Vec<ConditionReport>,
}

/// Which region the clause protects; decides the sign of admissible
/// witnesses (a witness image must lie in that region).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

/// A boundary face of Delta in the working coordinates, parameterized by
/// its one free source coordinate (x never matters to the image).
#[derive(Debug, Clone, Copy)]
enum Face {
    YTop,
    YBottom,
    ZTop,
    ZBottom,
}

impl Face {
    fn free_range(self) -> Interval {
        match self {
            Face::YTop | Face::YBottom => Interval::new(-40.0, 0.0).expect("static"),
            Face::ZTop | Face::ZBottom => Interval::new(-4.0, 4.0).expect("static"),
        }
    }

    fn source(self, free: &Interval) -> (Interval, Interval) {
        match self {
            Face::YTop => (Interval::point(4.0), *free),
            Face::YBottom => (Interval::point(-4.0), *free),
            Face::ZTop => (*free, Interval::point(0.0)),
            Face::ZBottom => (*free, Interval::point(-40.0)),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Face::YTop => "y = 4",
            Face::YBottom => "y = -4",
            Face::ZTop => "z = 0",
            Face::ZBottom => "z = -40",
        }
    }
}

/// Smallest separation between a box and a family; None when some pair is
/// not disjoint.
fn min_separation(img: &IBox3, targets: &[IBox3]) -> Option<f64> {
    let mut m = f64::INFINITY;
    for t in targets {
        if !img.is_disjoint(t) {
            return None;
        }
        m = m.min(img.separation(t));
    }
    Some(m)
}

/// Certify that the image of a face misses every box of the target region.
fn face_image_clause(
    emap: &EffectiveMap,
    face: Face,
    targets: &[IBox3],
    side: Side,
    depth: u32,
    name: &str,
) -> ConditionReport {
    if targets.is_empty() {
        return ConditionReport::new(
            name,
            Verdict::Certified,
            None,
            0,
            "target region enclosure is empty",
        );
    }
    let mut margin = f64::INFINITY;
    let mut max_depth_used = 0u32;
    let mut stack: Vec<(Interval, u32)> = Vec::new();
    let whole = face.free_range();
    let initial = 32usize;
    for i in 0..initial {
        let w = whole.width() / initial as f64;
        let lo = whole.lo() + w * i as f64;
        let hi = if i + 1 == initial { whole.hi() } else { lo + w };
        stack.push((Interval::new(lo, hi).expect("ordered"), 0));
    }

    while let Some((cell, d)) = stack.pop() {
        max_depth_used = max_depth_used.max(d);
        let (y, z) = face.source(&cell);
        let img = emap.image_box(&y, &z);
        match min_separation(&img, targets) {
            Some(gap) => margin = margin.min(gap),
            None => {
                if d < depth {
                    let (left, right) = cell.bisect();
                    stack.push((left, d + 1));
                    stack.push((right, d + 1));
                    continue;
                }
                // Witness attempt at the exhausted cell: midpoint of the
                // face with a certified image strictly inside Delta and the
                // matching source sign.
                let mid = cell.mid();
                let (ym, zm) = face.source(&Interval::point(mid));
                let (y0, z0) = (ym.mid(), zm.mid());
                let sign_ok = match side {
                    Side::A => y0 >= 0.0,
                    Side::B => y0 <= 0.0,
                };
                let img_pt = emap.image(&Interval::point(y0), &Interval::point(z0));
                let img_box = IBox3::new(img_pt[0], img_pt[1], img_pt[2]);
                if sign_ok && EffectiveMap::delta().contains_box_strict(&img_box) {
                    return ConditionReport::new(
                        name,
                        Verdict::Failed,
                        None,
                        d,
                        format!(
                            "face {} point with free coordinate {y0:.6}/{z0:.6} maps to \
                             ({}, {}, {}) strictly inside Delta",
                            face.label(),
                            img_pt[0],
                            img_pt[1],
                            img_pt[2]
                        ),
                    );
                }
                return ConditionReport::new(
                    name,
                    Verdict::Unresolved,
                    None,
                    d,
                    format!(
                        "face {} cell {cell} not separated at depth {depth}, no certified witness",
                        face.label()
                    ),
                );
            }
        }
    }
    ConditionReport::new(
        name,
        Verdict::Certified,
        Some(margin),
        max_depth_used,
        format!("image of face {} misses the region", face.label()),
    )
}

/// Certify that every enclosure box misses a fixed obstacle box.
fn region_vs_obstacle(
    boxes: &[IBox3],
    obstacle: &IBox3,
    name: &str,
    witness: Option<&str>,
) -> ConditionReport {
    if boxes.is_empty() {
        return ConditionReport::new(
            name,
            Verdict::Certified,
            None,
            0,
            "region enclosure is empty",
        );
    }
    let mut margin = f64::INFINITY;
    for b in boxes {
        if !b.is_disjoint(obstacle) {
            return ConditionReport::new(
                name,
                Verdict::Unresolved,
                None,
                0,
                witness.map_or_else(
                    || format!("enclosure box {b} meets the obstacle"),
                    |w| format!("enclosure box {b} meets the obstacle; {w}"),
                ),
            );
        }
        margin = margin.min(b.separation(obstacle));
    }
    ConditionReport::new(name, Verdict::Certified, Some(margin), 0, "")
}

fn x_face(x: f64) -> IBox3 {
    IBox3::new(
        Interval::point(x),
        Interval::new(-4.0, 4.0).expect("static"),
        Interval::new(-40.0, 0.0).expect("static"),
    )
}

fn top_face() -> IBox3 {
    IBox3::new(
        Interval::new(-4.0, 4.0).expect("static"),
        Interval::new(-4.0, 4.0).expect("static"),
        Interval::point(0.0),
    )
}

/// Run all H1/H2 clauses against precomputed enclosures.
pub fn check_h1_h2_with(
    emap: &EffectiveMap,
    regions: &AbEnclosures,
    depth: u32,
) -> (H12Report, Vec<ConditionReport>) {
    let mut clauses = Vec::new();

    let a_empty = regions.a_boxes.is_empty();
    let b_empty = regions.b_boxes.is_empty();

    // H1: A away from x = +-4 and from the images of all four unstable
    // boundary faces.
    let mut h1_parts = Vec::new();
    for (obstacle, label) in [(x_face(4.0), "A vs x = 4"), (x_face(-4.0), "A vs x = -4")] {
        h1_parts.push(region_vs_obstacle(&regions.a_boxes, &obstacle, label, None));
    }
    for face in [Face::YTop, Face::YBottom, Face::ZTop, Face::ZBottom] {
        let name = format!("A vs image of {}", face.label());
        h1_parts.push(face_image_clause(
            emap,
            face,
            &regions.a_boxes,
            Side::A,
            depth,
            &name,
        ));
    }

    // H2: B away from the top face z = 0, from x = +-4, and from the images
    // of the faces y = +-4.
    let mut h2_parts = Vec::new();
    let top = region_vs_obstacle(&regions.b_boxes, &top_face(), "B vs z = 0", None);
    // The one reachable witness on the top face: the source (y, z) = (0, 0)
    // maps to (0, mu, 0), which lies in B exactly when mu is within the
    // middle range.
    let top = if top.verdict == Verdict::Unresolved {
        let img = emap.image(&Interval::point(0.0), &Interval::point(0.0));
        let img_box = IBox3::new(img[0], img[1], img[2]);
        if EffectiveMap::delta().contains_box(&img_box) {
            ConditionReport::new(
                "B vs z = 0",
                Verdict::Failed,
                None,
                0,
                format!(
                    "source (0, 0) maps to ({}, {}, {}), in the region with z = 0",
                    img[0], img[1], img[2]
                ),
            )
        } else {
            top
        }
    } else {
        top
    };
    h2_parts.push(top);
    for (obstacle, label) in [(x_face(4.0), "B vs x = 4"), (x_face(-4.0), "B vs x = -4")] {
        h2_parts.push(region_vs_obstacle(&regions.b_boxes, &obstacle, label, None));
    }
    for face in [Face::YTop, Face::YBottom] {
        let name = format!("B vs image of {}", face.label());
        h2_parts.push(face_image_clause(
            emap,
            face,
            &regions.b_boxes,
            Side::B,
            depth,
            &name,
        ));
    }

    let fold = |parts: &[ConditionReport], name: &str, empty: bool| -> ConditionReport {
        if empty {
            return ConditionReport::new(
                name,
                Verdict::Failed,
                None,
                regions.depth,
                "region enclosure is empty: no candidate component exists",
            );
        }
        let verdict = parts
            .iter()
            .fold(Verdict::Certified, |v, p| v.both(p.verdict));
        let margin = parts
            .iter()
            .filter_map(|p| p.margin)
            .fold(f64::INFINITY, f64::min);
        let margin = if margin.is_finite() && verdict == Verdict::Certified {
            Some(margin)
        } else {
            None
        };
        let depth_used = parts.iter().map(|p| p.depth).max().unwrap_or(0);
        let notes = parts
            .iter()
            .filter(|p| p.verdict != Verdict::Certified)
            .map(|p| format!("{}: {}", p.name, p.notes))
            .collect::<Vec<_>>()
            .join("; ");
        ConditionReport::new(name, verdict, margin, depth_used, notes)
    };

    let h1 = fold(&h1_parts, "H1", a_empty);
    let h2 = fold(&h2_parts, "H2", b_empty);
    clauses.extend(h1_parts);
    clauses.extend(h2_parts);

    (
        H12Report {
            h1,
            h2,
            clauses: clauses.clone(),
        },
        clauses,
    )
}

/// Check H1 and H2 from scratch at the given subdivision depth.
pub fn check_h1_h2(params: &HenonParams, depth: u32) -> Result<H12Report> {
    let emap = EffectiveMap::new(params)?;
    let regions = compute_ab(&emap, depth)?;
    if !regions.separated {
        let note = "A/B enclosures not separated at this depth";
        let mk = |name: &str| {
            ConditionReport::new(name, Verdict::Unresolved, None, depth, note)
        };
        return Ok(H12Report {
            h1: mk("H1"),
            h2: mk("H2"),
            clauses: Vec::new(),
        });
    }
    let (report, _) = check_h1_h2_with(&emap, &regions, depth);
    Ok(report)
}
